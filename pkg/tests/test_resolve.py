import random
from fractions import Fraction

import pytest

from eiscong.dataset import bundled
from eiscong.exact import QuadInt
from eiscong.resolve import (
    endoscopic_subtract,
    quadratic_resolve,
    restrict_square,
    trace_square,
)


def test_endoscopic_subtract_published_rows():
    assert endoscopic_subtract(-96, [(2**4, -528), (1, 1920)]) == 6432
    assert endoscopic_subtract(15216, [(2 * 2**5, 216), (1, 7440)]) == -6048
    assert endoscopic_subtract(123, []) == 123


def test_endoscopic_subtract_linear_in_trace():
    rng = random.Random(5)
    contributions = [(4, 7), (16, -3)]
    total = sum(s * e for s, e in contributions)
    for _ in range(50):
        t1, t2 = rng.randrange(-10**9, 10**9), rng.randrange(-10**9, 10**9)
        assert endoscopic_subtract(t1 + t2, contributions) == (
            endoscopic_subtract(t1, contributions)
            + endoscopic_subtract(t2, contributions)
            + total
        )


def test_trace_square_published_blocks():
    assert trace_square(-36421632, -29859840, 2, 25, 2) == 6119424
    assert trace_square(79978752, 65968128, 2, 25, 3) == 476064000
    assert trace_square(3207168, -22394880, 2, 25, 3) == 134203392


def test_restrict_square_published():
    assert restrict_square(476064000, [-20064]) == 73499904
    assert restrict_square(134203392, [3552]) == 121586688
    assert restrict_square(42, []) == 42


def test_quadratic_resolve_published_pairs():
    out = quadratic_resolve(-768, 6119424)
    assert out.kind == "quadratic-pair"
    assert (out.pair.a, out.pair.b, out.pair.D) == (-384, 192, 79)

    out = quadratic_resolve(5232, 73499904)
    assert (out.pair.a, out.pair.b, out.pair.D) == (2616, 216, 641)

    out = quadratic_resolve(6624, 121586688)
    assert (out.pair.a, out.pair.b, out.pair.D) == (3312, 240, 865)


def test_quadratic_resolve_rational_kind():
    # roots 10 and 4: sum 14, squares 116
    out = quadratic_resolve(14, 116)
    assert out.kind == "rational"
    assert sorted(out.rational_values) == [4, 10]


def test_quadratic_resolve_consistency_random():
    rng = random.Random(6)
    for _ in range(1000):
        a = rng.randrange(-10**6, 10**6)
        b = rng.randrange(-10**6, 10**6)
        out = quadratic_resolve(a + b, a * a + b * b)
        assert out.root_sum() == a + b
        assert out.root_square_sum() == a * a + b * b
    # irrational inputs: sum/sum_sq not from an integer pair
    for _ in range(200):
        s = rng.randrange(-10**4, 10**4) * 2
        ssq = s * s // 2 + 2 * rng.randrange(1, 10**6)
        try:
            out = quadratic_resolve(s, ssq)
        except ValueError:
            continue
        assert out.root_sum() == s
        assert out.root_square_sum() == ssq


def test_quadratic_resolve_negative_discriminant():
    with pytest.raises(ValueError):
        quadratic_resolve(0, -2)


def test_pipeline_identity_from_dataset():
    # published trace block through the full chain, no rounding anywhere
    ds = bundled()
    tr = ds.require("so7:25,17,3", "trT(p)", 2)
    tr4 = ds.require("so7:25,17,3", "trT(p^2)", 4)
    tr22 = ds.require("so7:25,17,3", "T(p,p)", 2)
    sq = trace_square(tr4, tr22, 2, 25, 2)
    assert sq == ds.require("so7:25,17,3", "trT(p^2_derived)", 2)
    out = quadratic_resolve(tr, sq)
    assert out.pair == QuadInt(Fraction(-384), Fraction(192), 79)
