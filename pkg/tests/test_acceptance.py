"""Acceptance suite: every criterion at its stated tolerance, one line each.

Run with `pytest -s tests/test_acceptance.py` to see the pass lines.
"""

import json
import random
import time
from fractions import Fraction

import pytest
from mpmath import mp, mpf, pi, workdps
from mpmath import fabs as mp_abs

from eiscong import afe, congruence, dataset, forms, lalg, lfunc, reports
from eiscong.exact import cf_expand, factorize, rational_reconstruct
from eiscong.rootdata import pairing_table, parabolic_data

from printed_fixtures import PRINTED


def _report(n, ok, detail):
    print(f"[criterion {n:2d}] {'PASS' if ok else 'FAIL'}: {detail}")
    assert ok, f"criterion {n}: {detail}"


def test_criterion_1_eigenform_exactness():
    t0 = time.monotonic()
    a2 = [forms.ap(k, 2) for k in (12, 16, 18, 20, 22, 26)]
    ok = a2 == [-24, 216, -528, 456, -288, -48]
    ok = ok and forms.ap(20, 31) == -104626880141728
    ok = ok and forms.ap(22, 43) == -193605854685795844
    ok = ok and forms.ap(22, 73) == -43284759511102937494
    dt = time.monotonic() - t0
    _report(1, ok and dt < 1.0, f"eigenform fixtures exact in {dt:.3f}s")


def test_criterion_2_ramanujan():
    t0 = time.monotonic()
    primes = [p for p in range(2, 1000) if all(p % d for d in range(2, int(p**0.5) + 1))]
    tau = forms.eigenform(12, 1000)
    ok = all(tau[p] % 691 == (1 + p**11) % 691 for p in primes)
    dt = time.monotonic() - t0
    _report(2, ok and dt < 1.0, f"tau(p) = 1 + p^11 mod 691 for all p < 1000 in {dt:.3f}s")


def test_criterion_3_congruence_suite():
    t0 = time.monotonic()
    ds = dataset.bundled()
    cases = congruence.load_cases()
    moduli = []
    ok = True
    for name, expected in PRINTED.items():
        rep = congruence.check(cases[name], ds)
        moduli.append(rep.case.modulus)
        ok = ok and rep.all_pass and len(rep.rows) == len(expected)
        for row, want in zip(rep.rows, expected):
            ok = ok and row.factorization.marked(rep.case.modulus) == want
    ok = ok and moduli == [47, 19, 19, 557, 31, 31, 73, 43, 19, 19]
    dt = time.monotonic() - t0
    _report(
        3,
        ok and dt < 5.0,
        f"all 10 published tables reproduce exactly, moduli {moduli}, {dt:.2f}s",
    )


def test_criterion_4_quadratic_resolution():
    ds = dataset.bundled()
    cases = congruence.load_cases()
    expected = {
        "so43q_25_17_3_mod59": ((-384, 192, 79), "2^8·3^3·5^2·7^2·59"),
        "so43q_25_17_7_mod1223": ((2616, 216, 641), "2^12·3^4·11·1223"),
        "so43q_25_19_5_mod103": ((3312, 240, 865), "2^11·3^3·5^3·103"),
    }
    ok = True
    for name, (pair, normfac) in expected.items():
        rep = congruence.check_quadratic(cases[name], ds)
        got = (int(rep.outcome.pair.a), int(rep.outcome.pair.b), rep.outcome.pair.D)
        ok = ok and got == pair and str(rep.norm_factorization) == normfac and rep.divisible
    _report(4, ok, "quadratic pairs and norm factorizations exact")


def test_criterion_5_triple_product_numerics():
    t0 = time.monotonic()
    spec = lfunc.triple_spec(20, 16, 12)
    n_coeffs = 460
    r = afe.ratio(spec, 26, 24, digits=16, N=n_coeffs)
    target = Fraction(2**4 * 19, 3**3 * 5**3 * 7**2 * 13)
    with workdps(60):
        tf = mpf(target.numerator) / target.denominator
        rel = mp_abs(r.value - tf) / tf
    ok_ratio = rel < mpf("1e-10") and r.coefficients_used >= 400
    res = afe.fe_residual(spec, [25], digits=22, N=640, T="1.04", working_digits=75)
    ok_fe = res < mpf("1e-20")
    dt = time.monotonic() - t0
    _report(
        5,
        ok_ratio and ok_fe and dt < 60.0,
        f"L(26)/(pi^8 L(24)) rel err {float(rel):.2e} with {r.coefficients_used} coeffs, "
        f"fe residual {float(res):.2e}, {dt:.1f}s",
    )


def test_criterion_6_appendix_sweep():
    t0 = time.monotonic()
    rep = reports.appendix_sweep(digits=11, rel_tol="1e-8")
    dt = time.monotonic() - t0
    checked = sum(1 for r in rep.rows if "ratio" in r.detail)
    ok = rep.all_pass and checked == 61 and dt < 900.0
    _report(
        6,
        ok,
        f"{checked} consecutive-pair ratios across 20 tables within 1e-8, {dt:.1f}s",
    )


def test_criterion_7_engine_calibration():
    spec = lfunc.zeta_spec()
    r2 = afe.evaluate(spec, 2, digits=30)
    r4 = afe.evaluate(spec, 4, digits=30)
    with workdps(60):
        ok = mp_abs(r2.value - pi**2 / 6) < mpf("1e-25")
        ok = ok and mp_abs(r4.value - pi**4 / 90) < mpf("1e-25")
    needed = afe.coeffs_required(lfunc.spinor_spec(16, 6, {"p": {}, "p2": {}}), 30)
    ok = ok and 115 <= needed <= 190
    _report(7, ok, f"zeta(2), zeta(4) to 1e-25; spinor 30-digit cutoff estimate {needed}")


def test_criterion_8_rationalizer():
    decimal = "0.0100470823379774368182814145009"
    got = rational_reconstruct(decimal, 10**10)
    ok = got == Fraction(1880, 187119)
    ok = ok and str(factorize(1880)) == "2^3·5·47"
    ok = ok and str(factorize(187119)) == "3^2·17·1223"
    cf = cf_expand(decimal, max_terms=11)
    ok = ok and cf[:10] == [0, 99, 1, 1, 7, 2, 6, 1, 6, 1]
    _report(8, ok, f"published decimal -> 1880/187119, cf prefix {cf[:10]}")


def test_criterion_9_spinor_desk_scale(tmp_path):
    ds = dataset.bundled()
    spec = lfunc.spinor_spec(16, 6, ds.lambda_source("D25_17"))
    r = afe.ratio(spec, 19, 17, digits=12, N=40)
    target = Fraction(1880, 187119)
    with workdps(50):
        tf = mpf(target.numerator) / target.denominator
        contains = mp_abs(r.value - tf) <= r.error_envelope
        width = 2 * r.error_envelope / mp_abs(r.value)
    ok = contains and width < mpf("1e-2")
    # user-supplied prime-square eigenvalues flow through and shrink a_4's
    # uncertainty to zero (the full-data 25-digit check needs real data of
    # this shape, which is not published)
    extra = tmp_path / "user_lambda.jsonl"
    extra.write_text(
        json.dumps(
            {"space": "D25_17", "op": "T(p^2)", "n": 4, "value": "123456", "src": "user"}
        )
        + "\n"
    )
    merged = dataset.merge(ds, dataset.load([extra]))
    spec2 = lfunc.spinor_spec(16, 6, merged.lambda_source("D25_17"))
    coeffs = spec2.coefficients(8)
    ok = ok and coeffs[4].available and coeffs[8].available
    _report(
        9,
        ok,
        f"interval contains 1880/187119, relative width {float(width):.2e}; "
        "user prime-square data unlocks a_4, a_8",
    )


def test_criterion_10_envelope_soundness():
    t0 = time.monotonic()
    spec = lfunc.triple_spec(20, 16, 12)
    N = 96
    coeffs = spec.coefficients(N)
    full = afe.evaluate(spec, 26, digits=10, coeffs=coeffs)
    rng = random.Random(20260808)
    worst = 0.0
    ok = True
    for _ in range(50):
        hidden = set(rng.sample(range(2, N + 1), rng.randrange(1, 7)))
        masked = [coeffs[0]]
        for n in range(1, N + 1):
            if n in hidden:
                masked.append(lfunc.Coefficient(None, spec.coefficient_bound(n)))
            else:
                masked.append(coeffs[n])
        r = afe.evaluate(spec, 26, digits=10, coeffs=masked)
        dev = mp_abs(r.value - full.value)
        ok = ok and dev <= r.error_envelope
        if r.error_envelope > 0:
            worst = max(worst, float(dev / r.error_envelope))
    dt = time.monotonic() - t0
    _report(
        10,
        ok,
        f"50 randomized hidings: worst deviation/envelope = {worst:.3f} (<= 1), {dt:.1f}s",
    )


def test_criterion_11_root_data_tables():
    b3 = parabolic_data("B", 3)
    ok = {str(r) for r in b3.phi_N} == {"e1-e2", "e1-e3", "e1", "e1+e2", "e1+e3"}
    ok = ok and b3.rho_P.halves() == (Fraction(5, 2), 0, 0)
    ok = ok and b3.alpha_tilde.halves() == (1, 0, 0)
    ok = ok and b3.pairing_value == Fraction(5, 2)
    rows_b = {r[0]: r[1:] for r in pairing_table(b3)}
    ok = ok and rows_b["e1-e2"] == ("f1-f2", "-a1+s", "b1^-1")
    ok = ok and rows_b["e1+e2"] == ("f1+f2", "a1+s", "b1")
    ok = ok and rows_b["e1"] == ("2f1", "2s", "1")

    d4 = parabolic_data("D", 4)
    ok = ok and len(d4.phi_N) == 9
    ok = ok and d4.rho_P.halves()[:2] == (Fraction(5, 2), Fraction(5, 2))
    ok = ok and d4.alpha_tilde.halves() == (1, 1, 0, 0)
    rows_d = {r[0]: r[1:] for r in pairing_table(d4)}
    ok = ok and rows_d["e1-e3"] == ("f1-f3", "(k-1)/2-a1+s", "a_p*b1^-1")
    ok = ok and rows_d["e2+e3"] == ("f2+f3", "-(k-1)/2+a1+s", "a_p^-1*b1")
    ok = ok and rows_d["e1+e2"] == ("f1+f2", "2s", "1")
    _report(11, ok, "parabolic data and symbolic pairing tables for (B,3) and (D,4)")
