"""Exact Gauss valuations, piecewise-linear norm profiles, and the unit
obstruction sup*inf over a closed log-radius interval.

For a polynomial P = sum a_i t^i and a point at log-radius s (norm radius
2^-s, center 0), the Gauss valuation is

    v_s(P) = min_i ( v(a_i) + i*s ),

which is the exact value of the norm, not merely a bound: the Gauss norm
of a polynomial is the max of its monomial norms.  Ties are first-class:
a Unique dominance certificate means the minimum is attained once, so
the value survives any rearrangement of P as a sum; downstream equality
claims require it.  Centered points recenter by an exact Taylor shift
before evaluating, so no series expansion ever happens.

Profiles over an interval are lower envelopes of the finitely many lines
v(a_i) + i*s; their breakpoints are Newton-polygon slopes.  All functions
here are pure and operate on immutable data.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from . import fields, ratfun
from .errors import DivisionByZero, PreconditionFlat, ZeroPolynomial
from .logval import INF, LogValue, lv


@dataclass(frozen=True)
class GaussPoint:
    s: LogValue                       # log-radius; norm radius = 2^-s
    center: Optional[object] = None   # FieldElement, default 0

    def __post_init__(self):
        if self.s.infinite:
            raise ValueError("Gauss points have finite log-radius")


@dataclass(frozen=True)
class RadiusInterval:
    """Closed interval of log-radii [s_lo, s_hi]; in norm scale this is
    the radius interval [2^-s_hi, 2^-s_lo]."""

    s_lo: LogValue
    s_hi: LogValue

    def __post_init__(self):
        if self.s_lo.infinite or self.s_hi.infinite:
            raise ValueError("interval endpoints must be finite")
        if self.s_lo > self.s_hi:
            raise ValueError("empty interval: s_lo > s_hi")

    @property
    def length(self) -> LogValue:
        return self.s_hi - self.s_lo

    def contains(self, s: LogValue) -> bool:
        return self.s_lo <= s <= self.s_hi


@dataclass(frozen=True)
class Dominance:
    """Which monomial indices attain the Gauss minimum."""

    indices: Tuple[int, ...]

    @property
    def unique(self) -> bool:
        return len(self.indices) == 1

    @property
    def kind(self) -> str:
        return "unique" if self.unique else "tied"


# ---------------------------------------------------------------------------
# Lines and lower envelopes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Line:
    """The affine function s -> intercept + slope * s."""

    slope: int
    intercept: LogValue
    key: int = 0  # caller's index for attainment reporting

    def at(self, s: LogValue) -> LogValue:
        return self.intercept + s.scale(self.slope)


@dataclass(frozen=True)
class Envelope:
    """Lower envelope min over lines, as pieces on (-inf, +inf).

    boundaries[i] is where pieces[i] hands over to pieces[i+1]; pieces are
    ordered by decreasing slope (steep lines win for small s).
    """

    lines: Tuple[Line, ...]
    pieces: Tuple[Line, ...]
    boundaries: Tuple[LogValue, ...]

    def piece_at(self, s: LogValue) -> Line:
        lo, hi = 0, len(self.boundaries)
        while lo < hi:
            mid = (lo + hi) // 2
            if s <= self.boundaries[mid]:
                hi = mid
            else:
                lo = mid + 1
        return self.pieces[lo]

    def value_at(self, s: LogValue) -> LogValue:
        return self.piece_at(s).at(s)

    def attainers(self, s: LogValue) -> Tuple[int, ...]:
        best = self.value_at(s)
        return tuple(ln.key for ln in self.lines if ln.at(s) == best)

    def breakpoints_in(self, lo: LogValue, hi: LogValue) -> List[LogValue]:
        return [b for b in self.boundaries if lo < b < hi]


def lower_envelope(lines: Sequence[Line]) -> Envelope:
    """Exact lower envelope; lines may share slopes (the lowest wins)."""
    if not lines:
        raise ValueError("envelope of no lines")
    by_slope = {}
    for ln in lines:
        cur = by_slope.get(ln.slope)
        if cur is None or ln.intercept < cur.intercept:
            by_slope[ln.slope] = ln
    # steepest first: active as s -> -inf
    order = sorted(by_slope.values(), key=lambda ln: -ln.slope)
    pieces: List[Line] = [order[0]]
    bounds: List[LogValue] = []
    for ln in order[1:]:
        while pieces:
            top = pieces[-1]
            # handover where top.at(s) == ln.at(s)
            cross = (ln.intercept - top.intercept).scale(
                Fraction(1, top.slope - ln.slope))
            if bounds and cross <= bounds[-1]:
                pieces.pop()
                bounds.pop()
            else:
                pieces.append(ln)
                bounds.append(cross)
                break
        if not pieces:
            pieces.append(ln)
    return Envelope(tuple(lines), tuple(pieces), tuple(bounds))


def poly_lines(P: ratfun.Poly) -> List[Line]:
    return [Line(i, fields.valuation(c), i)
            for i, c in enumerate(P.coeffs) if not c.is_zero]


def _prepared(P: ratfun.Poly, center) -> ratfun.Poly:
    if center is None or center.is_zero:
        return P
    return ratfun.recenter(P, center)


# ---------------------------------------------------------------------------
# Point evaluation
# ---------------------------------------------------------------------------


def gauss_valuation(P: ratfun.Poly, pt: GaussPoint) -> Tuple[LogValue, Dominance]:
    """Exact v_pt(P) with the attaining index set.

    A Unique certificate guarantees the value is an exact equality for any
    completion or rearrangement of P as a sum, by the ultrametric law.
    """
    if P.is_zero:
        raise ZeroPolynomial("Gauss valuation of 0")
    Q = _prepared(P, pt.center)
    best = None
    attain: List[int] = []
    for i, c in enumerate(Q.coeffs):
        if c.is_zero:
            continue
        val = fields.valuation(c) + pt.s.scale(i)
        if best is None or val < best:
            best = val
            attain = [i]
        elif val == best:
            attain.append(i)
    return best, Dominance(tuple(attain))


def ratfun_gauss(f: ratfun.RatFun, pt: GaussPoint) -> LogValue:
    """v_pt(num) - v_pt(den); independent of the representative pair."""
    if f.is_zero:
        raise DivisionByZero("Gauss valuation of the zero function")
    vn, _ = gauss_valuation(f.num, pt)
    vd, _ = gauss_valuation(f.den, pt)
    return vn - vd


# ---------------------------------------------------------------------------
# Profiles
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ProfilePiece:
    s_from: LogValue
    s_to: LogValue
    intercept: LogValue
    slope: int

    def at(self, s: LogValue) -> LogValue:
        return self.intercept + s.scale(self.slope)


@dataclass(frozen=True)
class NormProfile:
    """Exact piecewise-linear s -> v_s(f) on a closed interval.

    For a polynomial the profile is concave (slopes nonincreasing in s);
    for a rational function it is a difference of two concave profiles.
    """

    interval: RadiusInterval
    pieces: Tuple[ProfilePiece, ...]

    @property
    def breakpoints(self) -> List[LogValue]:
        return [p.s_from for p in self.pieces[1:]]

    def value_at(self, s: LogValue) -> LogValue:
        if not self.interval.contains(s):
            raise ValueError(f"{s} outside the profile interval")
        for p in self.pieces:
            if s <= p.s_to:
                return p.at(s)
        return self.pieces[-1].at(s)

    def knots(self) -> List[Tuple[LogValue, LogValue, int]]:
        """(s, value, slope-to-the-right) at each piece start, plus the
        final endpoint carrying the last slope."""
        rows = [(p.s_from, p.at(p.s_from), p.slope) for p in self.pieces]
        last = self.pieces[-1]
        rows.append((last.s_to, last.at(last.s_to), last.slope))
        return rows

    def is_flat(self) -> bool:
        return all(p.slope == 0 for p in self.pieces) and \
            all(p.intercept == self.pieces[0].intercept for p in self.pieces)

    def to_json(self):
        return [{"s_from": p.s_from.to_json(), "s_to": p.s_to.to_json(),
                 "value_at_s_from": p.at(p.s_from).to_json(),
                 "slope": p.slope} for p in self.pieces]


def _merge_envelopes(env_num: Envelope, env_den: Envelope,
                     interval: RadiusInterval) -> Tuple[ProfilePiece, ...]:
    cuts = {interval.s_lo, interval.s_hi}
    for b in env_num.breakpoints_in(interval.s_lo, interval.s_hi):
        cuts.add(b)
    for b in env_den.breakpoints_in(interval.s_lo, interval.s_hi):
        cuts.add(b)
    ordered = sorted(cuts)
    pieces = []
    for a, b in zip(ordered, ordered[1:]):
        mid_num = env_num.piece_at(_midpoint(a, b))
        mid_den = env_den.piece_at(_midpoint(a, b))
        pieces.append(ProfilePiece(
            a, b,
            mid_num.intercept - mid_den.intercept,
            mid_num.slope - mid_den.slope))
    if not pieces:  # single-point interval
        s = interval.s_lo
        val = env_num.value_at(s) - env_den.value_at(s)
        pieces.append(ProfilePiece(s, s, val, 0))
    return tuple(pieces)


def _midpoint(a: LogValue, b: LogValue) -> LogValue:
    return (a + b).scale(Fraction(1, 2))


def norm_profile(f: ratfun.RatFun, interval: RadiusInterval,
                 center=None) -> NormProfile:
    """Exact profile of v_s(f) for s in the interval (center default 0)."""
    if f.is_zero:
        raise DivisionByZero("profile of the zero function")
    num = _prepared(f.num, center)
    den = _prepared(f.den, center)
    env_num = lower_envelope(poly_lines(num))
    env_den = lower_envelope(poly_lines(den))
    return NormProfile(interval, _merge_envelopes(env_num, env_den, interval))


@dataclass(frozen=True)
class ProfileExtrema:
    v_min: LogValue
    v_max: LogValue
    s_at_min: LogValue
    s_at_max: LogValue


def profile_extrema(profile: NormProfile) -> ProfileExtrema:
    """Exact extrema; attained at breakpoints or endpoints since every
    piece is affine.  The sup-norm over the interval is 2^-v_min."""
    best_min = best_max = None
    s_min = s_max = None
    for s, val, _ in profile.knots():
        if best_min is None or val < best_min:
            best_min, s_min = val, s
        if best_max is None or val > best_max:
            best_max, s_max = val, s
    return ProfileExtrema(best_min, best_max, s_min, s_max)


def spectral_bounds(f: ratfun.RatFun, interval: RadiusInterval):
    """(v_min, v_max): sup-norm 2^-v_min and inf-norm 2^-v_max over the
    interval."""
    ex = profile_extrema(norm_profile(f, interval))
    return ex.v_min, ex.v_max


def unit_obstruction(f: ratfun.RatFun, interval: RadiusInterval) -> LogValue:
    """log2 of sup|f| * sup|1/f| over the interval: v_max - v_min >= 0.

    Zero exactly when the profile is flat, i.e. f does not witness a
    failure of multiplicativity for the interval sup-norm.
    """
    ex = profile_extrema(norm_profile(f, interval))
    return ex.v_max - ex.v_min


def require_obstruction(f: ratfun.RatFun, interval: RadiusInterval) -> LogValue:
    ob = unit_obstruction(f, interval)
    if ob.sign() == 0:
        raise PreconditionFlat("flat profile: sup|f|*sup|1/f| = 1")
    return ob
