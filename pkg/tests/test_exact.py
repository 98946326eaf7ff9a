import random
from fractions import Fraction

import pytest

from eiscong.exact import (
    FactorizationError,
    QuadInt,
    cf_expand,
    cf_terms,
    convergents,
    factorize,
    is_prime,
    parse_exact_decimal,
    quad_norm,
    rational_reconstruct,
    squarefree_split,
)


def test_factorize_known_values():
    assert str(factorize(187119)) == "3^2·17·1223"
    assert str(factorize(259440)) == "2^4·3·5·23·47"
    assert factorize(1).factors == ()
    assert str(factorize(-12)) == "-2^2·3"


def test_factorize_recompose_roundtrip():
    rng = random.Random(1)
    for _ in range(10_000):
        n = rng.randrange(1, 10**18)
        if rng.random() < 0.5:
            n = -n
        f = factorize(n)
        assert f.value() == n
        assert all(is_prime(p) for p, _ in f.factors)
        primes = [p for p, _ in f.factors]
        assert primes == sorted(primes)


def test_factorize_rejects_zero():
    with pytest.raises(ValueError):
        factorize(0)


def test_primality_deterministic_small():
    # cross-check against a sieve
    limit = 20_000
    sieve = [True] * limit
    sieve[0] = sieve[1] = False
    for i in range(2, int(limit**0.5) + 1):
        if sieve[i]:
            for j in range(i * i, limit, i):
                sieve[j] = False
    for n in range(limit):
        assert is_prime(n) == sieve[n]


def test_primality_carmichael_and_large():
    assert not is_prime(561)
    assert not is_prime(3215031751)
    assert is_prime(2**89 - 1)
    assert not is_prime((2**89 - 1) * (2**61 - 1))


def test_parse_exact_decimal():
    assert parse_exact_decimal("0.5") == (Fraction(1, 2), 1)
    assert parse_exact_decimal("-3.25") == (Fraction(-13, 4), 2)
    assert parse_exact_decimal("12") == (Fraction(12), 0)
    for bad in ["", "1.2.3", "abc", "1e5", "--2"]:
        with pytest.raises(ValueError):
            parse_exact_decimal(bad)


def test_cf_expand_published_ratio():
    got = cf_expand("0.0100470823379774368182814145009", max_terms=12)
    assert got[:11] == [0, 99, 1, 1, 7, 2, 6, 1, 6, 1, 877118077264803576596]


def test_cf_expand_half():
    assert cf_expand("0.5") == [0, 2]


def test_cf_expand_pi_approximant():
    # oracle: Euclidean algorithm on the exact parsed rational
    digits = _decimal_string(Fraction(355, 113), 20)
    got = cf_expand(digits, max_terms=8)
    oracle = cf_terms(parse_exact_decimal(digits)[0], 8)
    assert got == oracle
    assert got[:4] == [3, 7, 15, 1]


def test_cf_roundtrip_identity():
    rng = random.Random(2)
    for _ in range(300):
        x = Fraction(rng.randrange(1, 10**9), rng.randrange(1, 10**9))
        terms = cf_terms(x)
        assert convergents(terms)[-1] == x


def test_rational_reconstruct_published_decimal():
    got = rational_reconstruct("0.0100470823379774368182814145009", 10**10)
    assert got == Fraction(1880, 187119)


def test_rational_reconstruct_third():
    assert rational_reconstruct("0.333333333333333333") == Fraction(1, 3)


def test_rational_reconstruct_25_digit_roundtrip():
    x = Fraction(5 * 59, 2**2 * 3**3 * 7**2 * 13)
    digits = _decimal_string(x, 25)
    assert rational_reconstruct(digits) == Fraction(295, 68796) == x


def test_rational_reconstruct_random_roundtrip():
    # 25 digits leave a boundary quotient of at least ~1e25/den^2 >= 1e9,
    # so the threshold must sit below that while staying above typical
    # partial quotients
    rng = random.Random(3)
    for _ in range(1000):
        x = Fraction(rng.randrange(1, 10**8), rng.randrange(1, 10**8))
        assert rational_reconstruct(_decimal_string(x, 25), 10**8) == x


def test_rational_reconstruct_threshold_validation():
    with pytest.raises(ValueError):
        rational_reconstruct("0.5", 10)


def _decimal_string(x: Fraction, digits: int) -> str:
    scaled = x * 10**digits
    q = scaled.numerator // scaled.denominator  # truncate
    s = str(q).rjust(digits + 1, "0")
    return s[:-digits] + "." + s[-digits:]


def test_squarefree_split():
    assert squarefree_split(316) == (2, 79)  # 316 = 4 * 79
    assert squarefree_split(1) == (1, 1)
    assert squarefree_split(79) == (1, 79)


def test_quadint_normalization_and_norm():
    x = QuadInt(22416, -192, 79)
    n = quad_norm(x)
    assert n == 22416**2 - 79 * 192**2
    assert str(factorize(int(n))) == "2^8·3^3·5^2·7^2·59"

    y = QuadInt(67032, -216, 641)
    assert quad_norm(y) == 4463382528
    assert str(factorize(4463382528)) == "2^12·3^4·11·1223"

    # non-squarefree radicand folds its square part into b
    z = QuadInt(1, 3, 12)  # 1 + 3*sqrt(12) = 1 + 6*sqrt(3)
    assert (z.a, z.b, z.D) == (1, 6, 3)

    with pytest.raises(ValueError):
        QuadInt(1, 1, 9)


def test_quad_norm_multiplicative():
    rng = random.Random(4)
    for _ in range(200):
        d = rng.choice([2, 3, 5, 79, 641, 865])
        x = QuadInt(rng.randrange(-50, 50), rng.randrange(-50, 50), d)
        y = QuadInt(rng.randrange(-50, 50), rng.randrange(-50, 50), d)
        assert quad_norm(x * y) == quad_norm(x) * quad_norm(y)


def test_factorization_marked_rendering():
    f = factorize(259440)
    assert f.marked(47) == "2^4·3·5·23·**47**"
