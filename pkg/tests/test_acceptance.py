"""Acceptance suite: one test per criterion, each printing a PASS line.

Everything is certificate- or property-based at desk scale and checked
in exact arithmetic; run with `pytest -s tests/test_acceptance.py` to see
the per-criterion lines.
"""

import json
import math
import random
import time
from fractions import Fraction

from conftest import random_ratfun
from ultranorm import fields, forge, gauss, models, ratfun
from ultranorm.cli import EXIT_FAILURE, EXIT_OK, EXIT_USAGE, dispatch
from ultranorm.logval import lv

I12 = gauss.RadiusInterval(lv(1), lv(2))
CLOG14 = lv(Fraction(1, 4))


def test_criterion_1_theorem_forge_run():
    started = time.monotonic()
    field = fields.laurent_field(3)
    sch = forge.make_schedule(field, I12, CLOG14, forge.MODE_THEOREM, 5)
    assert forge.validate_schedule(sch) == []
    centers = forge.choose_centers(sch)
    cert = forge.verify_certificate(sch, centers)
    assert cert.all_pass

    zones = {r.zone for r in cert.records}
    assert {"window", "small_radius", "large_radius", "gap_small_radius",
            "gap_large_radius"} <= zones
    cap = lv(-4) - CLOG14.scale(2)  # norm bound 16 c^2
    window_caps = [r for r in cert.records if r.claim == "x_window_bound"]
    assert window_caps and all(r.rhs == cap and r.passed for r in window_caps)
    for n in (4, 5):
        spect = [r for r in cert.records
                 if r.claim == "gap_bound_spect" and r.n == n]
        assert len(spect) == 1
        assert spect[0].rhs == lv(n - 14) - CLOG14.scale(6)  # 2^{-n+14} c^6
        assert spect[0].passed
    for n in range(1, 6):
        delta = [r for r in cert.records
                 if r.claim == "x_delta_decay" and r.n == n]
        assert len(delta) == 1 and delta[0].rhs == lv(n - 1)  # 2^{-n+1}
        assert delta[0].passed
    elapsed = time.monotonic() - started
    assert elapsed < 120
    print(f"\nACCEPTANCE 1: PASS - distinct-norm forge run, depth 5: "
          f"{len(cert.records)} records all pass in {elapsed:.1f}s")


def test_criterion_2_example_forge_run():
    field = fields.laurent_field(3, rational_coefs=True)
    sch = forge.make_schedule(field, I12, CLOG14, forge.MODE_EXAMPLE, 5)
    assert forge.validate_schedule(sch) == []
    centers = forge.choose_centers(sch)
    assert centers.no_cancellation
    cert = forge.verify_certificate(sch, centers)
    assert cert.all_pass
    zones = {r.zone for r in cert.records}
    assert {"small_radius", "large_radius", "at_peak",
            "gap_small_radius"} <= zones
    for n in (4, 5):
        spect = [r for r in cert.records
                 if r.claim == "gap_bound_spect" and r.n == n]
        assert len(spect) == 1 and spect[0].rhs == lv(n - 2)  # 2^{-n+2}
        assert spect[0].passed

    interior = []
    for n in (1, 2, 3):
        interior.append(gauss.GaussPoint(
            (sch.s_of(n) + sch.s_of(n + 1)).scale(Fraction(1, 2))))
    table = forge.limit_table(sch, centers, 5, interior)
    for row in table.rows:
        assert row.predicted_index is not None and row.stabilized
    assert table.rows[0].predicted_index == 2
    assert table.rows[1].predicted_index == 3
    assert table.rows[2].predicted_index == 4
    assert table.delta_growth_ok
    for n, tv in enumerate(table.delta_values, start=1):
        assert tv.value >= lv(n - 1)
    print("\nACCEPTANCE 2: PASS - equal-norm forge run, depth 5: all zone "
          "records pass, gaps within 2^(-n+2), limit table stabilizes at "
          "the predicted indices")


def test_criterion_3_oracle_equivalence():
    laurent = fields.laurent_field(3)
    laurent_u = fields.laurent_field(3, rational_coefs=True)
    configs = [
        (laurent, forge.MODE_THEOREM, 1, 1),
        (laurent, forge.MODE_THEOREM, 2, 2),
        (laurent, forge.MODE_THEOREM, 3, 2),
        (laurent_u, forge.MODE_EXAMPLE, 2, 2),
        (laurent_u, forge.MODE_EXAMPLE, 3, 1),
    ]
    matches = 0
    total = 0
    for field, mode, depth, m_hint in configs:
        sch = forge.make_schedule(field, I12, CLOG14, mode, depth,
                                  m_hint=m_hint, small_instance=True)
        centers = forge.choose_centers(sch)
        ff = forge.build_factors(sch, centers)
        expanded = {n: forge.expanded_factor(ff, n)
                    for n in range(1, depth + 1)}
        for i in range(32):
            s = lv(1) + lv(1).scale(Fraction(i, 31))
            pt = gauss.GaussPoint(s)
            total += 1
            ok = True
            y_direct = lv(0)
            for n in range(1, depth + 1):
                P, low, high = expanded[n]
                fd = ff.level(n)
                v_low = gauss.gauss_valuation(low, pt)[0]
                v_high = gauss.gauss_valuation(high, pt)[0]
                v_P = gauss.gauss_valuation(P, pt)[0]
                ok &= fd.v_x(s).value == v_low - v_P
                ok &= fd.v_one_minus_x(s).value == v_high - v_P
                y_direct = y_direct + (v_low - v_P)
                ok &= ff.v_y(n, s).value == y_direct
            matches += ok
    assert (matches, total) == (160, 160)
    print(f"\nACCEPTANCE 3: PASS - lazy vs expanded evaluation: "
          f"{matches}/{total} exact matches")


def test_criterion_4_gauss_property_suite():
    field = fields.laurent_field(3)
    rng = random.Random(271828)
    pts = [gauss.GaussPoint(lv(Fraction(rng.randint(-9, 27), 9)))
           for _ in range(16)]
    done = 0
    while done < 1000:
        f = random_ratfun(rng, field, max_deg=2)
        g = random_ratfun(rng, field, max_deg=2)
        if f.is_zero or g.is_zero:
            continue
        pt = rng.choice(pts)
        assert gauss.ratfun_gauss(f * g, pt) == \
            gauss.ratfun_gauss(f, pt) + gauss.ratfun_gauss(g, pt)
        done += 1

    interval = gauss.RadiusInterval(lv(Fraction(1, 2)), lv(Fraction(5, 2)))
    done = 0
    while done < 200:
        f = random_ratfun(rng, field, max_deg=2)
        if f.is_zero:
            continue
        v1 = gauss.profile_extrema(gauss.norm_profile(f, interval)).v_min
        for k in range(2, 5):
            vk = gauss.profile_extrema(
                gauss.norm_profile(f.power(k), interval)).v_min
            assert vk == v1.scale(k)
        done += 1
    print("\nACCEPTANCE 4: PASS - 1000 multiplicativity and 200 "
          "power-multiplicativity checks, all exact at zero tolerance")


def test_criterion_5_qseries_model():
    table = models.qseries_unbounded_witness(10_000)
    lookup = dict(table)
    assert lookup[1] == 2 and lookup[10] == 4 and lookup[100] == 12
    js = [j for _, j in table]
    assert all(a <= b for a, b in zip(js, js[1:]))
    assert js[-1] == lookup[10_000] <= 110
    for k, j in table:
        assert j <= 2 + 2 * math.isqrt(k) + 1

    rng = random.Random(515253)
    done = 0
    while done < 300:
        x = models.qseries([(rng.randint(-3, 5),
                             Fraction(rng.randint(-8, 8),
                                      rng.choice([1, 2, 3, 4, 6, 8, 24])))
                            for _ in range(rng.randint(1, 3))])
        y = models.qseries([(rng.randint(-3, 5),
                             Fraction(rng.randint(-8, 8),
                                      rng.choice([1, 2, 3, 4, 6, 8, 24])))
                            for _ in range(rng.randint(1, 3))])
        if x.is_zero or y.is_zero or (x * y).is_zero:
            continue
        assert models.qseries_norm(x * y) >= \
            models.qseries_norm(x) + models.qseries_norm(y)
        done += 1
    print(f"\nACCEPTANCE 5: PASS - witness table (1,2),(10,4),(100,12); "
          f"j(10^4) = {lookup[10_000]} <= 110; 300 submultiplicative pairs")


def test_criterion_6_annulus_model():
    field = fields.padic_field(2)
    s = lv(0, 1)  # log-radius sqrt(2)
    rng = random.Random(606060)

    def random_annulus():
        terms = []
        for _ in range(rng.randint(1, 4)):
            num = rng.randint(-20, 20)
            if num == 0:
                num = 1
            terms.append((rng.randint(-4, 4),
                          fields.from_rational(field,
                                               Fraction(num,
                                                        rng.randint(1, 20)))))
        x = models.annulus_element(field, s, terms)
        return x if not x.is_zero else models.annulus_element(
            field, s, [(0, fields.one(field))])

    def attaining_terms(x):
        best = x.norm_exponent()
        return [n for n, c in x.terms if x.term_value(n, c) == best]

    for _ in range(300):
        x = random_annulus()
        y = random_annulus()
        prod = x * y
        assert len(attaining_terms(x)) == 1
        assert len(attaining_terms(y)) == 1
        assert len(attaining_terms(prod)) == 1  # irrational radius: no ties
        assert prod.norm_exponent() == x.norm_exponent() + y.norm_exponent()

    one = models.annulus_element(field, s, [(0, fields.one(field))])
    for _ in range(100):
        x = random_annulus()
        prec = lv(rng.randint(1, 10))
        y = models.annulus_invert(x, prec)
        assert (x * y - one).norm_exponent() > prec
    print("\nACCEPTANCE 6: PASS - annulus at log-radius sqrt(2): 300 "
          "multiplicativity checks (unique dominance throughout) and 100 "
          "inversions past the requested precision")


def test_criterion_7_interval_search():
    field = fields.laurent_field(3)
    oracle = forge.GaussIntervalOracle(field, I12)
    t = ratfun.RatFun.variable(field)
    trace = forge.interval_search(oracle, t, lv(1), 10)
    assert trace.outcome == "success"
    assert len(trace.rows) == 1 and trace.rows[0].iteration == 0
    # success triple (t, gamma, delta) = (t, 2^-2, 2^-1) in norm scale
    assert trace.gamma_v == lv(2) and trace.delta_v == lv(1)

    forced = forge.ForcedFailureOracle(field)
    forced.spect_range = oracle.spect_range
    c_log = lv(Fraction(1, 8))
    trace2 = forge.interval_search(forced, t, c_log, 20)
    assert trace2.outcome == "iteration_cap" and len(trace2.rows) == 20
    for a, b in zip(trace2.rows, trace2.rows[1:]):
        assert b.gamma_v > a.gamma_v + c_log
    print("\nACCEPTANCE 7: PASS - interval search succeeds at iteration 0 "
          "with triple (t, 2^-2, 2^-1); forced descent contracts gamma past "
          "c for 20 steps")


def test_criterion_8_cauchy_inverse():
    field = fields.laurent_field(3)
    t = ratfun.RatFun.variable(field)
    seq = [t + ratfun.RatFun.constant(fields.monomial(field, Fraction(n)))
           for n in range(1, 51)]
    pt = gauss.GaussPoint(lv(0))
    _, rows = forge.cauchy_invert(seq, pt, lv(0))
    for i, row in enumerate(rows, start=1):
        assert row.modulus_v == lv(i)
        assert row.direct_v == lv(i)
        assert row.match
    print("\nACCEPTANCE 8: PASS - inverse-sequence modulus equals n exactly "
          "for n <= 50")


def test_criterion_9_cli_round_trip(tmp_path):
    cert = tmp_path / "cert.json"
    assert dispatch(["forge", "--mode", "theorem", "--depth", "3",
                     "--field", "genlaurent:3", "--interval", "1,2",
                     "--clog", "1/4", "--out", str(cert)]) == EXIT_OK
    assert dispatch(["check", str(cert)]) == EXIT_OK

    text = cert.read_text()
    idx = text.find('"lhs":{"a":"')
    pos = idx + len('"lhs":{"a":"')
    flip = "8" if text[pos] != "8" else "3"
    bad = tmp_path / "tampered.json"
    bad.write_text(text[:pos] + flip + text[pos + 1:])
    assert dispatch(["check", str(bad)]) == EXIT_FAILURE

    assert dispatch(["forge", "--mode", "theorem", "--depth", "3",
                     "--field", "genlaurent:3", "--interval", "oops",
                     "--clog", "1/4"]) == EXIT_USAGE
    print("\nACCEPTANCE 9: PASS - CLI round trip exits 0, tampered "
          "certificate exits 1, malformed config exits 2")
