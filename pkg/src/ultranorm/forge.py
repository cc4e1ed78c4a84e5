"""Construction and exact verification of interval-completion witnesses.

Given a closed log-radius interval and a coefficient field, this module
builds a schedule of radii rho_1 < rho_2 < ... increasing toward the
outer radius, picks center sets lambda_{n,i}, and forms the rational
functions

    P_n(t) = prod_i (t - lambda_{n,i}),
    x_n    = (low half of P_n's coefficients) / P_n,
    y_n    = x_1 * ... * x_n,

whose Gauss-norm behavior (equal to 1 inside radius rho_n, decaying
outside, uniformly pinched near rho_n) makes y_n converge to a limit
that vanishes at the outer radius but not inside: the completion is not
a field.  Every inequality in that argument is checked here exactly, at
every breakpoint of every piecewise-linear profile involved, and the
results are emitted as a self-contained, deterministic certificate.

The central performance decision is that P_n is never expanded: its
coefficients are elementary symmetric functions of the centers, and a
no-cancellation certificate (pairwise distinct center valuations, or
equal valuations with leading residues that are distinct powers of u)
pins each coefficient's valuation to a prefix sum of sorted center
valuations.  Degenerate center sets that break the certificate downgrade
exact claims to one-sided bounds instead of failing.

Two schedule modes exist:

* "theorem" -- center norms pairwise distinct inside a pinch window
  [rho_n^-, rho_n^+] around each rho_n; needs a dense value group.
* "example" -- all center norms equal to rho_n (which must lie in the
  value group), leading residues distinct.

Verification is embarrassingly parallel across n and across sample
points but is run sequentially; records are emitted in index order, so
identical inputs yield byte-identical certificates.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import fields, fp, ratfun
from .errors import (CertificateFailure, InfeasibleSchedule, NotBoundedBelow,
                     ParseError, PreconditionFlat, ResidueFieldTooSmall,
                     ValueGroupTooSparse, ZeroTerm)
from .gauss import (Envelope, GaussPoint, Line, RadiusInterval, lower_envelope,
                    norm_profile, profile_extrema)
from .logval import INF, LogValue, lv

MODE_THEOREM = "theorem"
MODE_EXAMPLE = "example"

# rational bounds SQRT2_LO < sqrt(2) < SQRT2_HI, from Pell convergents
_p, _q = 3, 2
for _ in range(120):
    _p, _q = _p + 2 * _q, _p + _q
if _p * _p - 2 * _q * _q == 1:
    SQRT2_HI = Fraction(_p, _q)
    SQRT2_LO = Fraction(_p + 2 * _q, _p + _q)
else:
    SQRT2_LO = Fraction(_p, _q)
    SQRT2_HI = Fraction(_p + 2 * _q, _p + _q)


def rational_below(v: LogValue) -> Fraction:
    """An exact rational <= v (equal only when v is rational)."""
    if v.b == 0:
        return v.a
    return v.a + v.b * (SQRT2_LO if v.b > 0 else SQRT2_HI)


def rational_above(v: LogValue) -> Fraction:
    if v.b == 0:
        return v.a
    return v.a + v.b * (SQRT2_HI if v.b > 0 else SQRT2_LO)


# ---------------------------------------------------------------------------
# Schedules
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ForgeSchedule:
    field: fields.FieldDescriptor
    interval: RadiusInterval
    c_log: LogValue                     # c = 2^c_log > 1
    mode: str
    depth: int
    s: Tuple[LogValue, ...]             # s_1 > s_2 > ... > s_N, log radii
    m: Tuple[int, ...]
    s_plus: Optional[Tuple[LogValue, ...]] = None   # theorem: s(rho_n^+) < s_n
    s_minus: Optional[Tuple[LogValue, ...]] = None  # theorem: s(rho_n^-) > s_n
    small_instance: bool = False

    def s_of(self, n: int) -> LogValue:
        return self.s[n - 1]

    def m_of(self, n: int) -> int:
        return self.m[n - 1]

    def window(self, n: int) -> Tuple[LogValue, LogValue]:
        """(lower, upper) log-radius bounds of the centers at level n."""
        if self.mode == MODE_THEOREM:
            return self.s_plus[n - 1], self.s_minus[n - 1]
        return self.s[n - 1], self.s[n - 1]


def _ceil_frac(q: Fraction) -> int:
    return -((-q.numerator) // q.denominator)


def make_schedule(field: fields.FieldDescriptor, interval: RadiusInterval,
                  c_log: LogValue, mode: str, depth: int, m_hint: int = 1,
                  small_instance: bool = False) -> ForgeSchedule:
    """Build a schedule of the requested depth on the interval.

    Radii sit at equal log-gaps g = length/(depth+1), which leaves a tail
    gap of the same size below the outer radius; the multiplicities m_n
    are the smallest satisfying every gap, pinch, and tail constraint
    (the small-instance flag instead takes m_n = m_hint and relaxes the
    gap constraints, for expansion-oracle testing only).
    """
    if interval.length.sign() <= 0:
        raise InfeasibleSchedule("interval must have positive length")
    if not (c_log.is_finite and c_log.sign() > 0):
        raise InfeasibleSchedule("c_log must be a finite positive log-value")
    if depth < 1:
        raise InfeasibleSchedule("depth must be at least 1")
    if mode == MODE_THEOREM:
        if not field.dense:
            raise ValueGroupTooSparse(
                f"{field.value_group} is not dense; the distinct-norm mode "
                "needs a dense value group")
        return _make_theorem_schedule(field, interval, c_log, depth, m_hint,
                                      small_instance)
    if mode == MODE_EXAMPLE:
        return _make_example_schedule(field, interval, c_log, depth, m_hint,
                                      small_instance)
    raise ValueError(f"unknown mode {mode!r}")


def _make_theorem_schedule(field, interval, c_log, depth, m_hint,
                           small_instance) -> ForgeSchedule:
    N = depth
    g = interval.length.scale(Fraction(1, N + 1))
    g_low = rational_below(g)  # rational lower bound on the common gap
    positions = [interval.s_hi - g.scale(n) for n in range(1, N + 1)]
    ms: List[int] = []
    for n in range(1, N + 1):
        if small_instance:
            ms.append(m_hint)
            continue
        needs = [Fraction(n) / ((N + 1 - n) * g_low)]  # tail toward s_lo
        if n < N:
            needs.append(Fraction(n + 1) / g_low)      # gap conditions
        m_n = max(m_hint, ms[-1] if ms else 1,
                  max(_ceil_frac(q) for q in needs))
        ms.append(m_n)
    s_plus, s_minus = [], []
    for n in range(1, N + 1):
        h = min(Fraction(1, ms[n - 1]), g_low / 3)
        s_plus.append(positions[n - 1] - lv(h))
        s_minus.append(positions[n - 1] + lv(h))
    return ForgeSchedule(field, interval, c_log, MODE_THEOREM, N,
                         tuple(positions), tuple(ms), tuple(s_plus),
                         tuple(s_minus), small_instance)


def _make_example_schedule(field, interval, c_log, depth, m_hint,
                           small_instance) -> ForgeSchedule:
    N = depth
    group = field.value_group
    r_lo = rational_above(interval.s_lo)
    r_hi = rational_below(interval.s_hi)
    span = r_hi - r_lo
    if span <= 0:
        raise InfeasibleSchedule("interval has no usable rational core")
    g = span / (N + 1)
    if group.kind == "Z":
        candidates = []
        k = _ceil_frac(r_hi) - 1
        while Fraction(k) > r_lo:
            candidates.append(Fraction(k))
            k -= 1
        if len(candidates) < N:
            raise ValueGroupTooSparse(
                f"only {len(candidates)} value-group radii inside the "
                f"interval; need {N}")
        positions = [lv(candidates[i]) for i in range(N)]
    else:
        p = group.p
        grid = 1
        while Fraction(1, grid) > g / 4:
            grid *= p
        positions = []
        for n in range(1, N + 1):
            target = r_hi - g * n
            snapped = Fraction((target.numerator * grid) // target.denominator,
                               grid)  # floor onto the p-power grid
            positions.append(lv(snapped))
        if positions[-1] <= interval.s_lo:
            raise InfeasibleSchedule("snapped radii escaped the interval")
    ms = []
    for n in range(1, N + 1):
        if small_instance:
            ms.append(m_hint)
            continue
        gaps = [positions[n - 1].a - rational_above(interval.s_lo)]
        if n > 1:
            gaps.append(positions[n - 2].a - positions[n - 1].a)
        if n < N:
            gaps.append(positions[n - 1].a - positions[n].a)
        d = min(gaps)
        if d <= 0:
            raise InfeasibleSchedule("radii too close together")
        ms.append(max(m_hint, _ceil_frac(Fraction(n) / d)))
    return ForgeSchedule(field, interval, c_log, MODE_EXAMPLE, N,
                         tuple(positions), tuple(ms), None, None,
                         small_instance)


def validate_schedule(sch: ForgeSchedule) -> List[str]:
    """Independent invariant check; returns human-readable violations."""
    out = []
    N = sch.depth
    if len(sch.s) != N or len(sch.m) != N:
        return ["length mismatch between depth and schedule arrays"]
    for n in range(1, N + 1):
        if not sch.interval.contains(sch.s_of(n)):
            out.append(f"s_{n} outside the interval")
        if sch.m_of(n) < 1:
            out.append(f"m_{n} < 1")
    for n in range(2, N + 1):
        if not sch.s_of(n - 1) > sch.s_of(n):
            out.append(f"s_{n-1} <= s_{n}: radii not strictly increasing")
    if sch.mode == MODE_THEOREM:
        if sch.s_plus is None or sch.s_minus is None:
            return ["missing pinch windows"]
        for n in range(1, N + 1):
            sp, sm = sch.s_plus[n - 1], sch.s_minus[n - 1]
            if not sp < sch.s_of(n) < sm:
                out.append(f"window {n} does not straddle s_{n}")
            if sch.s_of(n) - sp > lv(Fraction(1, sch.m_of(n))):
                out.append(f"pinch below s_{n} wider than 1/m_{n}")
            if sm - sch.s_of(n) > lv(Fraction(1, sch.m_of(n))):
                out.append(f"pinch above s_{n} wider than 1/m_{n}")
            if not (sch.interval.contains(sp) and sch.interval.contains(sm)):
                out.append(f"window {n} leaves the interval")
        for n in range(2, N + 1):
            if not sch.s_plus[n - 2] > sch.s_minus[n - 1]:
                out.append(f"windows {n-1} and {n} are not interlaced")
        for n in range(2, N + 1):
            if sch.m_of(n) < sch.m_of(n - 1):
                out.append(f"m_{n} decreases")
    if sch.mode == MODE_EXAMPLE:
        for n in range(1, N + 1):
            if not sch.field.value_group.contains(sch.s_of(n)):
                out.append(f"s_{n} not in the value group")
    if not sch.small_instance:
        # gap conditions: s_{n-1}-s_n and s_n-s_{n+1} >= n/m (theorem uses
        # m_{n-1}, example uses m_n); the tail gap stands in for s_{N+1}
        for n in range(2, N + 1):
            m_gap = sch.m_of(n - 1) if sch.mode == MODE_THEOREM else sch.m_of(n)
            need = lv(Fraction(n, m_gap))
            if sch.s_of(n - 1) - sch.s_of(n) < need:
                out.append(f"gap above s_{n} below {need}")
            below = sch.s_of(n + 1) if n < N else sch.interval.s_lo
            if sch.s_of(n) - below < need:
                out.append(f"gap below s_{n} below {need}")
        for n in range(1, N + 1):
            lo_edge, _ = sch.window(n)
            req = lv(n - 1) if sch.mode == MODE_THEOREM else lv(n)
            if (lo_edge - sch.interval.s_lo).scale(sch.m_of(n)) < req:
                out.append(f"tail decay margin at level {n} too small")
    return out


# ---------------------------------------------------------------------------
# Centers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CenterSet:
    mode: str
    centers: Tuple[Tuple[object, ...], ...]   # per level n
    no_cancellation: bool
    reason: str

    def level(self, n: int) -> Tuple[object, ...]:
        return self.centers[n - 1]


def classify_centers(field, center_lists) -> Tuple[bool, str]:
    """Decide whether symmetric-function coefficients reach their generic
    valuations: either all valuations pairwise distinct (the minimal
    subset sum of every size is then uniquely attained), or equal
    valuations with leading coefficients that are distinct powers of u
    (the lowest u-monomial of each symmetric function has coefficient 1).
    """
    for lams in center_lists:
        vals = [fields.valuation(x) for x in lams]
        if any(v.infinite for v in vals):
            return False, "zero center"
        if len({(v.a, v.b) for v in vals}) == len(vals):
            continue
        if len({(v.a, v.b) for v in vals}) == 1:
            ok = True
            powers = set()
            for x in lams:
                if not isinstance(x, fields.LaurentElement) or len(x.terms) != 1:
                    ok = False
                    break
                coef = x.terms[0][1]
                if isinstance(coef, fp.FpRational) and \
                        coef.den.degree == 0 and \
                        sum(1 for c in coef.num.coeffs if c) == 1 and \
                        coef.num.coeffs[-1] == 1:
                    powers.add(coef.num.degree)
                else:
                    ok = False
                    break
            if ok and len(powers) == len(lams):
                continue
            return False, "equal-valuation centers without u-power residues"
        return False, "repeated center valuations without structure"
    return True, "certified"


def choose_centers(sch: ForgeSchedule) -> CenterSet:
    """Centers for every level, engineered for no cancellation.

    Distinct-norm mode places 2m_n - 1 exponents base + eps*p^i inside the
    pinch window: valuations are pairwise distinct and the subset sums of
    equal size are distinct by p-ary digit uniqueness.  Equal-norm mode
    uses u^i * z^{s_n}, whose leading residues are distinct powers of u
    (over F_p itself, distinct scalars run out at p - 1 residues).
    """
    field = sch.field
    levels = []
    if sch.mode == MODE_THEOREM:
        p = field.p
        for n in range(1, sch.depth + 1):
            K = 2 * sch.m_of(n) - 1
            w_lo, w_hi = sch.window(n)
            lo = rational_above(w_lo)
            hi = rational_below(w_hi)
            width = hi - lo
            if width <= 0:
                raise InfeasibleSchedule(f"window {n} has no rational core")
            base_grid = 1
            while Fraction(1, base_grid) > width / 4:
                base_grid *= p
            base = Fraction(-((-lo.numerator * base_grid) // lo.denominator),
                            base_grid)  # ceil of lo onto the grid
            spread_grid = base_grid
            while Fraction(p) ** K / spread_grid > width / 2:
                spread_grid *= p
            lams = tuple(
                fields.monomial(field, base + Fraction(p ** i, spread_grid))
                for i in range(1, K + 1))
            levels.append(lams)
    else:
        for n in range(1, sch.depth + 1):
            K = 2 * sch.m_of(n) - 1
            s_n = sch.s_of(n)
            if field.rational_coefs:
                tags = [fp.fp_rational_u_power(field.p, i)
                        for i in range(1, K + 1)]
            else:
                if K > field.p - 1:
                    raise ResidueFieldTooSmall(
                        f"need {K} distinct leading residues, F_{field.p} "
                        f"has {field.p - 1} nonzero elements")
                tags = list(range(1, K + 1))
            lams = tuple(fields.monomial(field, s_n, tag=t) for t in tags)
            levels.append(lams)
    flag, reason = classify_centers(field, levels)
    return CenterSet(sch.mode, tuple(levels), flag, reason)


# ---------------------------------------------------------------------------
# Lazy factors
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TaggedValue:
    """A valuation that is either exact or a certified lower bound
    (equivalently an upper bound on the norm)."""

    value: LogValue
    exact: bool
    cert: str  # "unique" | "tied+anchored" | "tied" | "sum"

    def __add__(self, o: "TaggedValue") -> "TaggedValue":
        return TaggedValue(self.value + o.value, self.exact and o.exact, "sum")


@dataclass(frozen=True)
class FactorData:
    """Per-level lazy data: sorted center valuations, their prefix sums
    (prefix[k] = sum of the k smallest), and the lower envelopes of the
    two coefficient truncations of P_n.  Coefficient j of P_n has
    valuation >= prefix[K - j], with equality certified when the
    no-cancellation flag holds (always for j = 0 and j = K)."""

    n: int
    m: int
    center_vals: Tuple[LogValue, ...]
    prefix: Tuple[LogValue, ...]
    exact_coeffs: bool
    env_lo: Envelope   # j in [0, m)
    env_hi: Envelope   # j in [m, K]

    @property
    def K(self) -> int:
        return 2 * self.m - 1

    def coeff_exact(self, j: int) -> bool:
        return self.exact_coeffs or j == 0 or j == self.K

    def v_product(self, s: LogValue) -> LogValue:
        """v_s(P_n) = sum_i min(v_i, s): exact by multiplicativity."""
        lo, hi = 0, len(self.center_vals)
        while lo < hi:
            mid = (lo + hi) // 2
            if self.center_vals[mid] <= s:
                lo = mid + 1
            else:
                hi = mid
        return self.prefix[lo] + s.scale(self.K - lo)

    def _trunc(self, env: Envelope, s: LogValue) -> TaggedValue:
        val = env.value_at(s)
        attain = env.attainers(s)
        exact = any(self.coeff_exact(j) for j in attain)
        if len(attain) == 1 and exact:
            cert = "unique"
        elif exact:
            cert = "tied+anchored"
        else:
            cert = "tied"
        return TaggedValue(val, exact, cert)

    def v_low(self, s: LogValue) -> TaggedValue:
        return self._trunc(self.env_lo, s)

    def v_high(self, s: LogValue) -> TaggedValue:
        return self._trunc(self.env_hi, s)

    def v_x(self, s: LogValue) -> TaggedValue:
        t = self.v_low(s)
        return TaggedValue(t.value - self.v_product(s), t.exact, t.cert)

    def v_one_minus_x(self, s: LogValue) -> TaggedValue:
        t = self.v_high(s)
        return TaggedValue(t.value - self.v_product(s), t.exact, t.cert)

    def breakpoints(self) -> List[LogValue]:
        pts = set(self.env_lo.boundaries) | set(self.env_hi.boundaries)
        pts.update(self.center_vals)
        return sorted(pts)


@dataclass(frozen=True)
class ForgeFactors:
    schedule: ForgeSchedule
    centers: CenterSet
    levels: Tuple[FactorData, ...]

    def level(self, n: int) -> FactorData:
        return self.levels[n - 1]

    def v_y(self, n: int, s: LogValue) -> TaggedValue:
        """v_s(y_n) for the product y_n = x_1 ... x_n (y_0 = 1)."""
        out = TaggedValue(lv(0), True, "sum")
        for k in range(1, n + 1):
            out = out + self.level(k).v_x(s)
        return out


def build_factors(sch: ForgeSchedule, centers: CenterSet) -> ForgeFactors:
    levels = []
    for n in range(1, sch.depth + 1):
        lams = centers.level(n)
        m = sch.m_of(n)
        K = 2 * m - 1
        if len(lams) != K:
            raise ValueError(f"level {n} needs {K} centers, got {len(lams)}")
        vals = sorted(fields.valuation(x) for x in lams)
        prefix = [lv(0)]
        for v in vals:
            prefix.append(prefix[-1] + v)
        lines_lo = [Line(j, prefix[K - j], j) for j in range(0, m)]
        lines_hi = [Line(j, prefix[K - j], j) for j in range(m, K + 1)]
        levels.append(FactorData(
            n, m, tuple(vals), tuple(prefix), centers.no_cancellation,
            lower_envelope(lines_lo), lower_envelope(lines_hi)))
    return ForgeFactors(sch, centers, tuple(levels))


def eval_factor(ff: ForgeFactors, n: int, pt: GaussPoint):
    """(v(x_n), v(1-x_n)) at the point, each tagged Exact or Bound."""
    fd = ff.level(n)
    return fd.v_x(pt.s), fd.v_one_minus_x(pt.s)


# -- expansion oracle -------------------------------------------------------


def expanded_factor(ff: ForgeFactors, n: int):
    """(P_n, low truncation, high truncation) as fully expanded
    polynomials over the coefficient field; feasible for small m only."""
    field = ff.schedule.field
    P = ratfun.Poly.constant(fields.one(field))
    for lam in ff.centers.level(n):
        P = P * ratfun.Poly.linear(field, lam)
    m = ff.level(n).m
    low = ratfun.Poly(field, P.coeffs[:m])
    high = ratfun.Poly(field, P.coeffs[:m]).__neg__() + P  # P - low
    return P, low, high


# ---------------------------------------------------------------------------
# Certificates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CertRecord:
    n: int
    zone: str
    claim: str
    s: LogValue
    relation: str       # "eq" | "ge"
    lhs: LogValue
    rhs: LogValue
    tag: str            # "exact" | "bound"
    cert: str
    passed: bool

    def to_json(self):
        return {"n": self.n, "zone": self.zone, "claim": self.claim,
                "s": self.s.to_json(), "relation": self.relation,
                "lhs": self.lhs.to_json(), "rhs": self.rhs.to_json(),
                "tag": self.tag, "cert": self.cert, "pass": self.passed}

    @staticmethod
    def from_json(d) -> "CertRecord":
        return CertRecord(d["n"], d["zone"], d["claim"],
                          LogValue.from_json(d["s"]), d["relation"],
                          LogValue.from_json(d["lhs"]),
                          LogValue.from_json(d["rhs"]), d["tag"], d["cert"],
                          d["pass"])


@dataclass(frozen=True)
class ForgeCertificate:
    schedule: ForgeSchedule
    centers: CenterSet
    records: Tuple[CertRecord, ...]

    @property
    def all_pass(self) -> bool:
        return all(r.passed for r in self.records)

    def first_failure(self) -> Optional[CertRecord]:
        for r in self.records:
            if not r.passed:
                return r
        return None


def _record(records, n, zone, claim, s, relation, tagged: TaggedValue,
            rhs: LogValue):
    lhs = tagged.value
    tag = "exact" if tagged.exact else "bound"
    if relation == "eq":
        ok = tagged.exact and lhs == rhs
    else:
        ok = lhs >= rhs
    records.append(CertRecord(n, zone, claim, s, relation, lhs, rhs, tag,
                              tagged.cert, ok))


def _zone_samples(lo: LogValue, hi: LogValue,
                  breakpoint_lists: Sequence[Sequence[LogValue]]):
    pts = {lo, hi}
    for bps in breakpoint_lists:
        for b in bps:
            if lo < b < hi:
                pts.add(b)
    return sorted(pts)


def verify_certificate(sch: ForgeSchedule, centers: CenterSet,
                       depth: Optional[int] = None,
                       raise_on_failure: bool = True) -> ForgeCertificate:
    """Check every zone claim of the construction at every profile
    breakpoint, the decay at the outer radius, the two telescoping gap
    bounds, and the resulting uniform gap bound, all in exact arithmetic.

    Raises CertificateFailure (carrying the first failing record) when a
    check fails, unless raise_on_failure is False, in which case the
    failed certificate is returned for inspection.
    """
    N = sch.depth if depth is None else depth
    ff = build_factors(sch, centers)
    s_lo, s_hi = sch.interval.s_lo, sch.interval.s_hi
    theorem = sch.mode == MODE_THEOREM
    records: List[CertRecord] = []

    for n in range(1, N + 1):
        fd = ff.level(n)
        m = fd.m
        w_lo, w_hi = sch.window(n)  # centers live in [w_lo, w_hi]
        bps = fd.breakpoints()

        if theorem:
            # inside the pinch window
            cap = lv(-4) - sch.c_log.scale(2)          # norm <= 16 c^2
            trunc_rhs = w_lo.scale(fd.K)
            for s in _zone_samples(w_lo, w_hi, [bps]):
                _record(records, n, "window", "trunc_low_bounded", s, "ge",
                        fd.v_low(s), trunc_rhs)
                _record(records, n, "window", "trunc_high_bounded", s, "ge",
                        fd.v_high(s), trunc_rhs)
                _record(records, n, "window", "x_window_bound", s, "ge",
                        fd.v_x(s), cap)
                _record(records, n, "window", "one_minus_x_window_bound", s,
                        "ge", fd.v_one_minus_x(s), cap)
        else:
            s_n = sch.s_of(n)
            _record(records, n, "at_peak", "x_eq_one_at_peak", s_n, "eq",
                    fd.v_x(s_n), lv(0))
            _record(records, n, "at_peak", "one_minus_x_eq_one_at_peak", s_n,
                    "eq", fd.v_one_minus_x(s_n), lv(0))
            # power-boundedness across the whole interval
            for claim, evaluate in (("x_power_bounded", fd.v_x),
                                    ("one_minus_x_power_bounded",
                                     fd.v_one_minus_x)):
                worst = None
                worst_s = None
                for s in _zone_samples(s_lo, s_hi, [bps]):
                    val = evaluate(s)
                    if worst is None or val.value < worst.value:
                        worst, worst_s = val, s
                _record(records, n, "power_bounded", claim, worst_s, "ge",
                        worst, lv(0))
            if centers.no_cancellation:
                _variant_records(records, ff, n, s_lo, s_hi)

        # small radii (rho below the window): x_n is a unit, 1-x_n decays
        for s in _zone_samples(w_hi, s_hi, [bps]):
            _record(records, n, "small_radius", "x_eq_one", s, "eq",
                    fd.v_x(s), lv(0))
            _record(records, n, "small_radius", "one_minus_x_decay", s, "ge",
                    fd.v_one_minus_x(s), (s - w_hi).scale(m))
        # large radii (rho above the window): 1-x_n is a unit, x_n decays
        for s in _zone_samples(s_lo, w_lo, [bps]):
            _record(records, n, "large_radius", "one_minus_x_eq_one", s, "eq",
                    fd.v_one_minus_x(s), lv(0))
            _record(records, n, "large_radius", "x_decay", s, "ge",
                    fd.v_x(s), (w_lo - s).scale(m))
        # decay at the outer radius
        delta_rhs = lv(n - 1) if theorem else lv(n)
        _record(records, n, "at_delta", "x_delta_decay", s_lo, "ge",
                fd.v_x(s_lo), delta_rhs)

    # telescoping gap bounds
    for n in range(2, N + 1):
        zone_lo = sch.s_of(n - 1)
        parts = [ff.level(k).breakpoints() for k in range(1, n + 1)]
        gap_rhs = (lv(n - 5) - sch.c_log.scale(2)) if theorem else lv(n)
        for s in _zone_samples(zone_lo, s_hi, parts):
            val = ff.v_y(n - 1, s) + ff.level(n).v_one_minus_x(s)
            _record(records, n, "gap_small_radius", "gap_bound_small_radius",
                    s, "ge", val, gap_rhs)
    for n in range(4, N + 1):
        zone_hi = sch.s_of(n - 1)
        parts = [ff.level(k).breakpoints() for k in range(1, n + 1)]
        gap_rhs = (lv(n - 14) - sch.c_log.scale(6)) if theorem else lv(n - 2)
        worst = None
        worst_s = None
        for s in _zone_samples(s_lo, zone_hi, parts):
            val = (ff.v_y(n - 3, s) + ff.level(n - 1).v_x(s) +
                   ff.level(n).v_one_minus_x(s) + ff.level(n - 2).v_x(s))
            _record(records, n, "gap_large_radius", "gap_bound_large_radius",
                    s, "ge", val, gap_rhs)
            if worst is None or val.value < worst.value:
                worst, worst_s = val, s
        # the uniform bound over the whole interval is the worse of the
        # two zones; the small-radius zone bound is the stronger one
        spect_rhs = (lv(n - 14) - sch.c_log.scale(6)) if theorem else lv(n - 2)
        small_worst = None
        small_s = None
        for s in _zone_samples(zone_hi, s_hi,
                               [ff.level(k).breakpoints()
                                for k in range(1, n + 1)]):
            val = ff.v_y(n - 1, s) + ff.level(n).v_one_minus_x(s)
            if small_worst is None or val.value < small_worst.value:
                small_worst, small_s = val, s
        if small_worst.value < worst.value:
            worst, worst_s = small_worst, small_s
        _record(records, n, "spect", "gap_bound_spect", worst_s, "ge",
                worst, spect_rhs)

    cert = ForgeCertificate(sch, centers, tuple(records))
    if raise_on_failure and not cert.all_pass:
        raise CertificateFailure(cert.first_failure())
    return cert


def _variant_records(records, ff: ForgeFactors, n: int, s_lo, s_hi):
    """Equal-norm mode with certified residues: the peaked product
    x_n (1 - x_n) has the exact tent profile m_n * |s - s_n| and norm at
    most 2 at the peak."""
    sch = ff.schedule
    fd = ff.level(n)
    s_n = sch.s_of(n)
    m = fd.m
    distinct = len({str(x) for x in ff.centers.level(n)}) == fd.K
    records.append(CertRecord(
        n, "variant", "distinct_leading_residues", s_n, "eq", lv(0), lv(0),
        "exact", "unique" if distinct else "tied", distinct))

    def peaked(s):
        low = fd.v_low(s)
        high = fd.v_high(s)
        prod = fd.v_product(s)
        return TaggedValue(low.value + high.value - prod - prod,
                           low.exact and high.exact, "sum")

    bps = fd.breakpoints()
    for s in _zone_samples(s_n, s_hi, [bps]):
        _record(records, n, "variant", "peak_profile_eq", s, "eq",
                peaked(s), (s - s_n).scale(m))
    for s in _zone_samples(s_lo, s_n, [bps]):
        _record(records, n, "variant", "peak_profile_eq", s, "eq",
                peaked(s), (s_n - s).scale(m))
    _record(records, n, "variant", "peak_profile_cap", s_n, "ge",
            peaked(s_n), lv(-1))


# ---------------------------------------------------------------------------
# Limit table
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LimitRow:
    s: LogValue
    values: Tuple[TaggedValue, ...]       # v(y_n), n = 1..N
    predicted_index: Optional[int]        # first n whose window is inside s
    stabilized: bool


@dataclass(frozen=True)
class LimitTable:
    rows: Tuple[LimitRow, ...]
    delta_values: Tuple[TaggedValue, ...]
    delta_growth_ok: bool                 # v(y_n) >= n-1 and strictly rising


def limit_table(sch: ForgeSchedule, centers: CenterSet, depth: int,
                samples: Sequence[GaussPoint]) -> LimitTable:
    """Values v_s(y_n) at the samples, with the stabilization index
    predicted from the schedule, plus the forced decay at the outer
    radius: within radius rho_n^- every later factor is a unit, so the
    rows freeze; at the outer radius they sink at least linearly."""
    ff = build_factors(sch, centers)
    rows = []
    for pt in samples:
        if not sch.interval.contains(pt.s):
            raise ValueError(f"sample {pt.s} outside the interval")
        vals = tuple(ff.v_y(n, pt.s) for n in range(1, depth + 1))
        pred = None
        for n in range(1, depth + 1):
            _, w_hi = sch.window(n)
            if pt.s > w_hi:
                pred = n
                break
        if pred is None:
            stab = True  # no level is forced to freeze at this sample
        else:
            stab = all(vals[k - 1].value == (vals[k - 2].value if k >= 2
                                             else lv(0))
                       for k in range(pred, depth + 1))
        rows.append(LimitRow(pt.s, vals, pred, stab))
    delta_vals = tuple(ff.v_y(n, sch.interval.s_lo)
                       for n in range(1, depth + 1))
    ok = all(delta_vals[n - 1].value >= lv(n - 1) for n in range(1, depth + 1))
    prev = lv(0)
    for tv in delta_vals:
        if not tv.value > prev:
            ok = False
        prev = tv.value
    return LimitTable(tuple(rows), delta_vals, ok)


# ---------------------------------------------------------------------------
# Interval descent search
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    lam: object              # field element with |lam| in [gamma, delta]
    new_gamma_v: LogValue    # v of the next gamma, from the claimed norm


class GaussIntervalOracle:
    """Supremum oracle for the uncentered Gauss family on an interval:
    |t - lam|_s = min(v(lam), s) exactly, so over lam with |lam| in
    [gamma_n, delta_n] the quantity sup |lam| * |(t-lam)^{-1}|_spect is
    delta_n/gamma_n (2 delta_n/gamma_n when the centered family with
    radius factors down to 1/2 is adjoined)."""

    def __init__(self, field, interval: RadiusInterval,
                 centered_augmented: bool = False):
        self.field = field
        self.interval = interval
        self.centered_augmented = centered_augmented

    def spect_range(self, f: ratfun.RatFun):
        ex = profile_extrema(norm_profile(f, self.interval))
        return ex.v_min, ex.v_max

    def sup_ratio_log(self, gamma_v: LogValue, delta_v: LogValue) -> LogValue:
        base = gamma_v - delta_v  # log2(delta/gamma)
        return base + lv(1) if self.centered_augmented else base

    def find_violation(self, t_cur, gamma_v, delta_v,
                       c_log) -> Optional[Violation]:
        if self.sup_ratio_log(gamma_v, delta_v) <= c_log.scale(2):
            return None
        return _synthetic_violation(self.field, gamma_v, delta_v, c_log)


class ForcedFailureOracle:
    """Test double that always reports a violating center with the claimed
    norm |lam| * |(t-lam)^{-1}|_spect = 2^{2 c_log + 1} > c^2, driving one
    descent step gamma -> gamma' < gamma/c per iteration."""

    def __init__(self, field):
        self.field = field

    def find_violation(self, t_cur, gamma_v, delta_v, c_log) -> Violation:
        return _synthetic_violation(self.field, gamma_v, delta_v, c_log)


def _synthetic_violation(field, gamma_v, delta_v, c_log) -> Violation:
    from .logval import group_point_between
    lam_val = group_point_between(field.value_group, rational_above(delta_v),
                                  rational_below(gamma_v))
    lam = fields.monomial(field, lam_val)
    new_gamma = lv(lam_val) + c_log.scale(2) + lv(1)
    return Violation(lam, new_gamma)


@dataclass(frozen=True)
class TraceRow:
    iteration: int
    mu: object
    gamma_v: LogValue
    delta_v: LogValue
    lam: Optional[object]


@dataclass(frozen=True)
class SearchTrace:
    rows: Tuple[TraceRow, ...]
    outcome: str                      # "success" | "iteration_cap"
    t_final: Optional[ratfun.RatFun]
    gamma_v: Optional[LogValue]
    delta_v: Optional[LogValue]


def interval_search(oracle, t0: ratfun.RatFun, c_log: LogValue,
                    max_iter: int) -> SearchTrace:
    """Descent loop for the per-center norm condition.

    Starting from gamma_0 = inverse spectral norm of t^{-1} and
    delta_0 = c * gamma_0, ask the oracle for a center violating
    |lam| |(t - lam)^{-1}|_spect <= c^2 on [gamma_n, delta_n]; absorb it
    into the running shift and contract gamma by more than c.  On the
    honest interval oracle the condition holds immediately; a violation
    run must shrink gamma past every bound, which is the contradiction
    the construction exploits.
    """
    v_min, v_max = oracle.spect_range(t0)
    obstruction = v_max - v_min
    if obstruction.sign() == 0:
        raise PreconditionFlat("sup|t| * sup|1/t| = 1: nothing to search")
    t_cur = t0
    if obstruction < c_log:
        k = 1
        while obstruction.scale(k) < c_log:
            k += 1
        t_cur = t0.power(k)
        v_min, v_max = oracle.spect_range(t_cur)
    spect_v = v_min
    gamma = v_max
    delta = gamma - c_log
    mu = fields.zero(oracle.field)
    rows: List[TraceRow] = []
    for it in range(max_iter):
        viol = oracle.find_violation(t_cur, gamma, delta, c_log)
        rows.append(TraceRow(it, mu, gamma, delta,
                             None if viol is None else viol.lam))
        if viol is None:
            return SearchTrace(tuple(rows), "success", t_cur, gamma, delta)
        lam_v = fields.valuation(viol.lam)
        if not (delta <= lam_v <= gamma):
            raise ValueError("oracle returned a center outside [gamma, delta]")
        if not viol.new_gamma_v > gamma + c_log:
            raise ValueError("oracle violation does not contract gamma by c")
        mu = mu + viol.lam
        t_cur = t_cur - ratfun.RatFun.constant(viol.lam)
        new_min, _ = oracle.spect_range(t_cur)
        if new_min != spect_v:
            raise ValueError("spectral norm drifted along the descent")
        gamma = viol.new_gamma_v
        delta = gamma - c_log
    return SearchTrace(tuple(rows), "iteration_cap", None, None, None)


# ---------------------------------------------------------------------------
# Cauchy inverses
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ModulusRow:
    index: int
    gap_v: LogValue        # v(x_{i+1} - x_i)
    modulus_v: LogValue    # gap - v(x_i) - v(x_{i+1})
    direct_v: LogValue     # v(x_i^{-1} - x_{i+1}^{-1}) computed directly
    match: bool


def cauchy_invert(seq: Sequence[ratfun.RatFun], pt: GaussPoint,
                  lower: LogValue):
    """Inverse sequence with its Cauchy modulus table.

    The identity x_i^{-1} - x_{i+1}^{-1} = (x_{i+1} - x_i) x_i^{-1}
    x_{i+1}^{-1} turns the modulus of the inverses into
    gap - v(x_i) - v(x_{i+1}); both sides are computed independently and
    compared exactly.  Norms must stay at least 2^-lower.
    """
    from .gauss import ratfun_gauss
    vals = []
    for x in seq:
        if x.is_zero:
            raise ZeroTerm("zero term in the sequence")
        v = ratfun_gauss(x, pt)
        if v > lower:
            raise NotBoundedBelow(
                f"term valuation {v} exceeds the floor {lower}")
        vals.append(v)
    inverses = [x.invert() for x in seq]
    rows = []
    for i in range(len(seq) - 1):
        diff = seq[i + 1] - seq[i]
        gap = INF if diff.is_zero else ratfun_gauss(diff, pt)
        modulus = gap - vals[i] - vals[i + 1]
        idiff = inverses[i + 1] - inverses[i]
        direct = INF if idiff.is_zero else ratfun_gauss(idiff, pt)
        rows.append(ModulusRow(i, gap, modulus, direct, direct == modulus))
    return inverses, rows


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

CERT_FORMAT = "ultranorm-certificate/1"


def schedule_to_json(sch: ForgeSchedule):
    data = {
        "field": str(sch.field),
        "interval": {"s_lo": sch.interval.s_lo.to_json(),
                     "s_hi": sch.interval.s_hi.to_json()},
        "c_log": sch.c_log.to_json(),
        "mode": sch.mode,
        "depth": sch.depth,
        "s": [v.to_json() for v in sch.s],
        "m": list(sch.m),
        "small_instance": sch.small_instance,
    }
    if sch.mode == MODE_THEOREM:
        data["s_plus"] = [v.to_json() for v in sch.s_plus]
        data["s_minus"] = [v.to_json() for v in sch.s_minus]
    return data


def schedule_from_json(data) -> ForgeSchedule:
    field = fields.parse_descriptor(data["field"])
    interval = RadiusInterval(LogValue.from_json(data["interval"]["s_lo"]),
                              LogValue.from_json(data["interval"]["s_hi"]))
    mode = data["mode"]
    s_plus = s_minus = None
    if mode == MODE_THEOREM:
        s_plus = tuple(LogValue.from_json(v) for v in data["s_plus"])
        s_minus = tuple(LogValue.from_json(v) for v in data["s_minus"])
    return ForgeSchedule(field, interval, LogValue.from_json(data["c_log"]),
                         mode, data["depth"],
                         tuple(LogValue.from_json(v) for v in data["s"]),
                         tuple(int(m) for m in data["m"]), s_plus, s_minus,
                         bool(data.get("small_instance", False)))


def centers_to_json(centers: CenterSet):
    return {"mode": centers.mode,
            "levels": [[fields.element_to_text(x) for x in level]
                       for level in centers.centers]}


def centers_from_json(field, data) -> CenterSet:
    levels = tuple(tuple(fields.parse_element(field, text) for text in level)
                   for level in data["levels"])
    flag, reason = classify_centers(field, levels)
    return CenterSet(data["mode"], levels, flag, reason)


def certificate_to_json(cert: ForgeCertificate):
    return {
        "format": CERT_FORMAT,
        "schedule": schedule_to_json(cert.schedule),
        "centers": centers_to_json(cert.centers),
        "no_cancellation": cert.centers.no_cancellation,
        "records": [r.to_json() for r in cert.records],
        "all_pass": cert.all_pass,
    }


def certificate_json_text(cert: ForgeCertificate) -> str:
    return json.dumps(certificate_to_json(cert), sort_keys=True,
                      separators=(",", ":")) + "\n"


def check_certificate_data(data) -> List[str]:
    """Re-validate a certificate from its own embedded schedule and
    centers, without re-deriving any construction choices.  Returns the
    list of discrepancies (empty means the certificate is sound)."""
    problems = []
    if data.get("format") != CERT_FORMAT:
        return [f"unknown certificate format {data.get('format')!r}"]
    try:
        sch = schedule_from_json(data["schedule"])
        centers = centers_from_json(sch.field, data["centers"])
    except (KeyError, ParseError, ValueError) as exc:
        return [f"malformed certificate payload: {exc}"]
    violations = validate_schedule(sch)
    problems.extend(f"schedule: {v}" for v in violations)
    fresh = verify_certificate(sch, centers, raise_on_failure=False)
    fresh_records = [r.to_json() for r in fresh.records]
    stored_records = data.get("records", [])
    if len(fresh_records) != len(stored_records):
        problems.append(
            f"record count mismatch: stored {len(stored_records)}, "
            f"recomputed {len(fresh_records)}")
    else:
        for i, (a, b) in enumerate(zip(stored_records, fresh_records)):
            if a != b:
                problems.append(f"record {i} mismatch: stored {a}, "
                                f"recomputed {b}")
                break
    if bool(data.get("all_pass")) != fresh.all_pass:
        problems.append("all_pass flag mismatch")
    if not fresh.all_pass:
        problems.append(f"certificate fails: {fresh.first_failure()}")
    return problems
