"""Exception types shared across the package."""


class UltranormError(Exception):
    """Base class for all package errors."""


class SubFromFinite(UltranormError):
    """Subtracting the infinite log-value from a finite one."""


class DivisionByZero(UltranormError):
    """Inversion or division of a zero element."""


class NonMonomialInverse(UltranormError):
    """Exact inversion requested for a multi-term Laurent sum."""


class NotAUnit(UltranormError):
    """Residue of an element whose valuation is nonzero."""


class ValueNotInGroup(UltranormError):
    """Requested valuation lies outside the field's value group."""


class ZeroPolynomial(UltranormError):
    """Operation undefined for the zero polynomial."""


class ZeroElement(UltranormError):
    """Operation undefined for the zero element."""


class ZeroDivisorAtPrecision(UltranormError):
    """Element indistinguishable from zero at its stated precision."""


class UnsupportedDenominator(UltranormError):
    """Projection requires a monomial (or absent) denominator."""


class DecompositionMismatch(UltranormError):
    """A claimed decomposition does not sum to the target element."""


class InfeasibleSchedule(UltranormError):
    """No schedule of the requested depth fits the interval."""


class ValueGroupTooSparse(UltranormError):
    """The field's value group cannot host the requested construction."""


class ResidueFieldTooSmall(UltranormError):
    """Not enough distinct residues for the requested center count."""


class CertificateFailure(UltranormError):
    """A certificate check failed; carries the first failing record."""

    def __init__(self, record):
        self.record = record
        super().__init__(f"certificate check failed: {record}")


class NotBoundedBelow(UltranormError):
    """Sequence norms are not bounded away from zero."""


class ZeroTerm(UltranormError):
    """A sequence term is zero where a nonzero term is required."""


class PreconditionFlat(UltranormError):
    """Flat norm profile: the element does not obstruct multiplicativity."""


class ParseError(UltranormError):
    """Malformed textual input."""
