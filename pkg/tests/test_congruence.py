from fractions import Fraction

import pytest

from eiscong import forms
from eiscong.congruence import (
    bound_check,
    check,
    check_norm,
    check_quadratic,
    load_cases,
    rhs_eisenstein,
    rhs_harder,
    rhs_so43,
    rhs_so44,
    run_case,
)
from eiscong.dataset import DataMissError, bundled
from eiscong.exact import QuadInt


def test_rhs_eisenstein():
    assert rhs_eisenstein(2, 12) == 2049
    assert rhs_eisenstein(691, 12) == 1 + 691**11
    # 3^11 + 1 - tau(3) is divisible by 691
    assert (rhs_eisenstein(3, 12) - forms.ap(12, 3)) % 691 == 0
    assert rhs_eisenstein(3, 12) - forms.ap(12, 3) == 176896 == 691 * 256


def test_rhs_harder():
    assert rhs_harder(2, forms.ap(22, 2), 4, 10) == -288 + 2**8 + 2**13 == 8160
    assert rhs_harder(7, 0, 4, 10) == 7**8 + 7**13
    assert rhs_harder(2, forms.ap(26, 2), 14, 7) == -48 + 2**5 + 2**20


def test_rhs_so43():
    assert rhs_so43(2, 3600, 16, 6, Fraction(11, 2)) == 2**18 + 2**7 + 3600 == 265872
    assert rhs_so43(2, -3696, 14, 7, Fraction(5, 2)) == 2**15 + 2**10 - 3696
    assert rhs_so43(2, -480, 12, 7, Fraction(5, 2)) == 2**14 + 2**9 - 480 == 16416


def test_rhs_so43_even_in_s():
    # the value only involves the exponent pair w/2 +- s, which negating
    # s permutes
    w = 25
    for s in (Fraction(3, 2), Fraction(11, 2)):
        hi, lo = int(Fraction(w, 2) + s), int(Fraction(w, 2) - s)
        assert {hi, lo} == {int(Fraction(w, 2) + (-s)), int(Fraction(w, 2) - (-s))}


def test_rhs_so44():
    assert rhs_so44(2, -528, -24, 456, 18, 12, 20, Fraction(3, 2)) == (2**8 + 2**5) * (-528) + (-24) * 456 == -163008
    assert rhs_so44(2, -288, -24, 456, 22, 12, 20, Fraction(5, 2)) == (2**7 + 2**2) * (-288) + (-24) * 456 == -48960
    assert rhs_so44(2, 456, -24, 216, 20, 12, 16, Fraction(5, 2)) == (2**6 + 2) * 456 + (-24) * 216 == 24912


def test_bound_check():
    assert bound_check(20, 18, 12, 22, 31) == (20, True)
    assert bound_check(22, 20, 12, 23, 73) == (22, True)
    assert bound_check(20, 16, 12, 20, 19) == (21, False)
    with pytest.raises(ValueError):
        bound_check(12, 16, 20, 20, 19)


from printed_fixtures import PRINTED


def test_published_congruence_suite():
    ds = bundled()
    cases = load_cases()
    for name, expected in PRINTED.items():
        report = check(cases[name], ds)
        assert report.all_pass, name
        assert len(report.rows) == len(expected)
        for row, want in zip(report.rows, expected):
            got = row.factorization.marked(report.case.modulus)
            assert got == want, (name, row.p, got, want)


def test_mutated_modulus_fails():
    # anti-tautology: shifting the modulus must break at least one row
    ds = bundled()
    cases = load_cases()
    for name in PRINTED:
        case = cases[name]
        for delta in (-2, 2):
            mutated = type(case)(
                name=case.name,
                shape=case.shape,
                modulus=case.modulus + delta,
                primes=case.primes,
                params=case.params,
                lhs=case.lhs,
                rhs=case.rhs,
            )
            assert not check(mutated, ds).all_pass, (name, delta)


def test_failing_case_detail():
    # the mod-47 case read against 43 fails already at p=2
    ds = bundled()
    case = load_cases()["so43_25_17_11_mod47"]
    mutated = type(case)(
        name=case.name,
        shape=case.shape,
        modulus=43,
        primes=case.primes,
        params=case.params,
        lhs=case.lhs,
        rhs=case.rhs,
    )
    report = check(mutated, ds)
    assert report.rows[0].difference == 259440
    assert not report.rows[0].divisible


def test_ramanujan_case():
    report = run_case("ramanujan_mod691", bundled())
    assert report.all_pass


def test_quadratic_cases():
    ds = bundled()
    expected = {
        "so43q_25_17_3_mod59": ((-384, 192, 79), (22416, -192, 79), "2^8·3^3·5^2·7^2·**59**"),
        "so43q_25_17_7_mod1223": ((2616, 216, 641), (67032, -216, 641), "2^12·3^4·11·**1223**"),
        "so43q_25_19_5_mod103": ((3312, 240, 865), (27600, -240, 865), "2^11·3^3·5^3·**103**"),
    }
    for name, (pair, diff, normfac) in expected.items():
        rep = check_quadratic(load_cases()[name], ds)
        assert rep.divisible, name
        got_pair = (rep.outcome.pair.a, rep.outcome.pair.b, rep.outcome.pair.D)
        assert got_pair == pair, name
        got_diff = (rep.difference.a, rep.difference.b, rep.difference.D)
        assert got_diff == diff, name
        assert rep.norm_factorization.marked(rep.case.modulus) == normfac, name


def test_check_norm_trivial():
    fac, divisible = check_norm(QuadInt(1, 1, 2), 7)
    assert not divisible
    assert fac.value() == -1 or fac.value() == 1  # norm of 1+sqrt(2) is -1
    assert str(fac) == "-1"


def test_quadratic_norm_congruence_in_field():
    # q | Norm(rhs - root) computed exactly in Q(sqrt(D))
    ds = bundled()
    for name, q in [
        ("so43q_25_17_3_mod59", 59),
        ("so43q_25_17_7_mod1223", 1223),
        ("so43q_25_19_5_mod103", 103),
    ]:
        rep = check_quadratic(load_cases()[name], ds)
        from eiscong.exact import quad_norm

        assert quad_norm(rep.difference) % q == 0


def test_common_prime_factors():
    ds = bundled()
    rep = check(load_cases()["so43_25_17_11_mod47"], ds)
    assert rep.common_prime_factors() == [5, 47]
    rep2 = check(load_cases()["so43_25_15_9_mod557"], ds)
    assert 557 in rep2.common_prime_factors()


def test_harder_case_reports_data_miss():
    with pytest.raises(DataMissError) as exc:
        run_case("harder_21_5_mod41", bundled())
    assert exc.value.miss.space == "D21_5"


def test_lhs_cross_check_against_printed_eigenvalues():
    # resolution from traces must reproduce every printed stable eigenvalue
    from eiscong.congruence import lhs_value

    ds = bundled()
    cases = load_cases()
    for name in (
        "so43_25_17_11_mod47",
        "so43_25_15_5_mod19",
        "so43_25_15_9_mod557",
        "so43_25_19_13_mod31",
    ):
        case = cases[name]
        space = case.lhs["cross_check_space"]
        for p in case.primes:
            assert lhs_value(case, ds, p) == ds.require(space, "T(p)", p)
