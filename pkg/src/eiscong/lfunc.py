"""Euler factors, Dirichlet coefficients with rigorous uncertainty
intervals, analytic L-function specifications, and the exact critical-value
ratio identity for the triple product.

Coefficients carry exact endpoints: a factor built from complete eigenvalue
data produces width-zero intervals (available coefficients); missing
eigenvalue data widens the interval using temperedness, and every interval is
intersected with the generic bound d_r(n) * n^(w/2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from . import forms


@dataclass(frozen=True)
class Interval:
    """Closed rational interval; width zero means exactly known."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("empty interval")

    @classmethod
    def exact(cls, v) -> "Interval":
        f = Fraction(v)
        return cls(f, f)

    @classmethod
    def ball(cls, center, radius) -> "Interval":
        c, r = Fraction(center), Fraction(radius)
        return cls(c - r, c + r)

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    @property
    def mag(self) -> Fraction:
        return max(abs(self.lo), abs(self.hi))

    def __add__(self, other: "Interval") -> "Interval":
        return Interval(self.lo + other.lo, self.hi + other.hi)

    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other: "Interval") -> "Interval":
        return self + (-other)

    def __mul__(self, other: "Interval") -> "Interval":
        products = (
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        )
        return Interval(min(products), max(products))

    def intersect(self, other: "Interval") -> "Interval":
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        if lo > hi:
            raise ValueError(f"inconsistent intervals {self} and {other}")
        return Interval(lo, hi)


@dataclass(frozen=True)
class EulerFactor:
    """Inverse local factor: integer/rational polynomial in T = p^-s with
    constant term 1, coefficients possibly interval-valued."""

    p: int
    coeffs: tuple[Interval, ...]  # index 0..degree, coeffs[0] == 1
    degree: int
    weight: int  # motivic weight, for tempered bounds

    def __post_init__(self):
        if self.coeffs[0] != Interval.exact(1):
            raise ValueError("constant term must be 1")
        if len(self.coeffs) != self.degree + 1:
            raise ValueError("coefficient count must be degree + 1")

    @property
    def is_exact(self) -> bool:
        return all(c.is_exact for c in self.coeffs)

    def exact_coeffs(self) -> tuple[Fraction, ...]:
        if not self.is_exact:
            raise ValueError("factor has unknown coefficients")
        return tuple(c.lo for c in self.coeffs)


def divisor_count(n: int, r: int) -> int:
    """d_r(n): ordered factorizations of n into r parts; multiplicative."""
    out = 1
    m = n
    d = 2
    while d * d <= m:
        if m % d == 0:
            e = 0
            while m % d == 0:
                m //= d
                e += 1
            out *= math.comb(e + r - 1, r - 1)
        d += 1
    if m > 1:
        out *= r
    return out


def tempered_bound(n: int, degree: int, weight: int) -> Fraction:
    """Generic bound |a_n| <= d_r(n) n^(w/2) from temperedness."""
    b2 = Fraction(divisor_count(n, degree)) ** 2 * Fraction(n) ** weight
    return _frac_sqrt_upper(b2)


def _frac_sqrt_upper(x: Fraction) -> Fraction:
    """Rational upper bound for sqrt(x)."""
    if x < 0:
        raise ValueError("negative")
    num = math.isqrt(x.numerator)
    den = math.isqrt(x.denominator)
    # (num+1)/den overestimates unless both are perfect squares
    if num * num == x.numerator and den * den == x.denominator:
        return Fraction(num, den)
    return Fraction(num + 1, den)


def zeta_euler(p: int) -> EulerFactor:
    return EulerFactor(p, (Interval.exact(1), Interval.exact(-1)), 1, 0)


def elliptic_euler(p: int, a_p: int, k: int) -> EulerFactor:
    c = (Interval.exact(1), Interval.exact(-a_p), Interval.exact(p ** (k - 1)))
    return EulerFactor(p, c, 2, k - 1)


def spinor_euler(
    p: int, lambda_p: Optional[int], lambda_p2: Optional[int], j: int, k: int
) -> EulerFactor:
    """Degree-4 spinor factor

        1 - lam_p T + (lam_p^2 - lam_{p^2})/2 T^2 - lam_p p^w T^3 + p^{2w} T^4

    with w = j + 2k - 3.  Missing eigenvalues produce interval coefficients:
    |lam_p| <= 4 p^{w/2}, |lam_{p^2}| <= 4 p^w under temperedness.
    """
    w = j + 2 * k - 3
    pw = p**w
    if lambda_p is None:
        c1 = Interval.ball(0, 4 * _frac_sqrt_upper(Fraction(pw)))
        c3 = c1 * Interval.exact(pw)
        lam = c1
    else:
        lam = Interval.exact(lambda_p)
        c1 = lam
        c3 = Interval.exact(lambda_p * pw)
    if lambda_p2 is None:
        lam2 = Interval.ball(0, 4 * pw)
    else:
        lam2 = Interval.exact(lambda_p2)
    c2 = (lam * lam - lam2) * Interval.exact(Fraction(1, 2))
    return EulerFactor(
        p,
        (Interval.exact(1), -c1, c2, -c3, Interval.exact(pw * pw)),
        4,
        w,
    )


def triple_euler(
    p: int, ap_f: int, ap_g: int, ap_h: int, k1: int, k2: int, k3: int
) -> EulerFactor:
    """Degree-8 triple-product factor, expanded exactly.

    The eight reciprocal roots are the products of one Satake parameter from
    each form; the expansion works in the tensor ring
    Z[x]/(x^2 - a x + p^{k1-1}) (x) ... so no algebraic numbers appear and the
    result provably lands in Z.
    """
    data = ((ap_f, p ** (k1 - 1)), (ap_g, p ** (k2 - 1)), (ap_h, p ** (k3 - 1)))

    def ring_mul(u: dict, v: dict) -> dict:
        out: dict[int, int] = {}
        for m1, c1 in u.items():
            for m2, c2 in v.items():
                terms = [(0, c1 * c2)]
                for bit, (tr, nm) in enumerate(data):
                    b1, b2 = (m1 >> bit) & 1, (m2 >> bit) & 1
                    e = b1 + b2
                    nxt = []
                    for mask, coef in terms:
                        if e == 0:
                            nxt.append((mask, coef))
                        elif e == 1:
                            nxt.append((mask | (1 << bit), coef))
                        else:  # x^2 = tr*x - nm
                            nxt.append((mask | (1 << bit), coef * tr))
                            nxt.append((mask, -coef * nm))
                    terms = nxt
                for mask, coef in terms:
                    out[mask] = out.get(mask, 0) + coef
        return {m: c for m, c in out.items() if c}

    gens = [
        [{1: 1}, {0: data[0][0], 1: -1}],
        [{2: 1}, {0: data[1][0], 2: -1}],
        [{4: 1}, {0: data[2][0], 4: -1}],
    ]
    poly: list[dict] = [{0: 1}]
    for e1 in range(2):
        for e2 in range(2):
            for e3 in range(2):
                root = ring_mul(ring_mul(gens[0][e1], gens[1][e2]), gens[2][e3])
                nxt = [dict(c) for c in poly] + [{}]
                for i, c in enumerate(poly):
                    prod = ring_mul(c, root)
                    tgt = nxt[i + 1]
                    for m, v in prod.items():
                        tgt[m] = tgt.get(m, 0) - v
                poly = [{m: v for m, v in c.items() if v} for c in nxt]
    coeffs = []
    for c in poly:
        if any(m != 0 for m in c):
            raise AssertionError("expansion failed to land in the integers")
        coeffs.append(Interval.exact(c.get(0, 0)))
    return EulerFactor(p, tuple(coeffs), 8, k1 + k2 + k3 - 3)


@dataclass(frozen=True)
class Coefficient:
    """One Dirichlet coefficient: exact value when available, else a bound."""

    value: Optional[Fraction]  # None when unavailable
    bound: Fraction  # always a valid bound on |a_n|

    @property
    def available(self) -> bool:
        return self.value is not None


def dirichlet_coefficients(factors: dict[int, EulerFactor], N: int) -> list[Coefficient]:
    """Multiplicative expansion of prod 1/factor to a_1..a_N.

    Entry [n] describes a_n ([0] is padding).  A coefficient is flagged
    unavailable whenever any required prime-power coefficient has nonzero
    interval width; its bound combines the interval with temperedness.
    """
    table: list[Optional[Interval]] = [None] * (N + 1)
    table[1] = Interval.exact(1)
    for p in _primes_up_to(N):
        if p not in factors:
            raise ValueError(f"missing Euler factor for p={p} <= N={N}")
        fac = factors[p]
        rmax = 0
        pk = p
        while pk <= N:
            rmax += 1
            pk *= p
        # inverse power series b_r of the local polynomial
        b = [Interval.exact(1)]
        for r in range(1, rmax + 1):
            acc = Interval.exact(0)
            for i in range(1, min(r, fac.degree) + 1):
                acc = acc - fac.coeffs[i] * b[r - i]
            acc = acc.intersect(
                Interval.ball(0, tempered_bound(p**r, fac.degree, fac.weight))
            )
            b.append(acc)
        pk = 1
        for r in range(1, rmax + 1):
            pk *= p
            for m in range(1, N // pk + 1):
                if m % p == 0:
                    continue
                if table[m] is not None:
                    prev = table[m]
                    table[m * pk] = prev * b[r]
    # base case: fill n coprime to everything handled by the loop above;
    # every n > 1 decomposes as m * p^r with table[m] filled first because
    # primes are processed in increasing order, so remaining None entries
    # can only mean a missing factor (already raised) -- assert instead
    out = [Coefficient(Fraction(0), Fraction(0))]
    for n in range(1, N + 1):
        iv = table[n]
        if iv is None:
            raise AssertionError(f"coefficient a_{n} never produced")
        if iv.is_exact:
            out.append(Coefficient(iv.lo, abs(iv.lo)))
        else:
            out.append(Coefficient(None, iv.mag))
    return out


def _primes_up_to(N: int) -> list[int]:
    if N < 2:
        return []
    sieve = bytearray([1]) * (N + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, int(N**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i in range(N + 1) if sieve[i]]


@dataclass(frozen=True)
class LSpec:
    """Analytic datum of a motivically normalized L-function of conductor 1.

    gamma_shifts are the GammaR arguments; the completed function satisfies
    Lambda(s) = sign * Lambda(w1 - s); polar lists (location, residue) pairs
    of poles of Lambda (only zeta has any here).
    """

    kind: str
    gamma_shifts: tuple[int, ...]
    w1: int
    sign: int
    conductor: int
    weight: int  # motivic weight w1 - 1
    coeff_source: Callable[[int], list[Coefficient]]
    polar: tuple[tuple[int, int], ...] = ()

    @property
    def degree(self) -> int:
        return len(self.gamma_shifts)

    def coefficients(self, N: int) -> list[Coefficient]:
        return self.coeff_source(N)

    def coefficient_bound(self, n: int) -> Fraction:
        return tempered_bound(n, self.degree, self.weight)


def zeta_spec() -> LSpec:
    def src(N: int) -> list[Coefficient]:
        one = Coefficient(Fraction(1), Fraction(1))
        return [Coefficient(Fraction(0), Fraction(0))] + [one] * N

    return LSpec("zeta", (0,), 1, 1, 1, 0, src, polar=((1, 1), (0, -1)))


def elliptic_spec(k: int) -> LSpec:
    if k % 2:
        raise ValueError("weight must be even")

    def src(N: int) -> list[Coefficient]:
        factors = {p: elliptic_euler(p, forms.ap(k, p), k) for p in _primes_up_to(N)}
        return dirichlet_coefficients(factors, N)

    return LSpec("elliptic", (0, 1), k, 1 if k % 4 == 0 else -1, 1, k - 1, src)


def spinor_spec(j: int, k: int, lambdas: dict) -> LSpec:
    """Spinor L-function of a genus-2 eigenform of weight (j, k).

    lambdas = {"p": {p: lam_p}, "p2": {p: lam_{p^2}}}, possibly partial;
    unknown entries degrade to envelope bounds rather than errors.
    """
    lam_p = dict(lambdas.get("p", {}))
    lam_p2 = dict(lambdas.get("p2", {}))

    def src(N: int) -> list[Coefficient]:
        factors = {
            p: spinor_euler(p, lam_p.get(p), lam_p2.get(p), j, k)
            for p in _primes_up_to(N)
        }
        return dirichlet_coefficients(factors, N)

    shifts = (0, 1, -(k - 2), -(k - 2) + 1)
    return LSpec("spinor", shifts, j + 2 * k - 2, (-1) ** k, 1, j + 2 * k - 3, src)


def triple_spec(k1: int, k2: int, k3: int) -> LSpec:
    """Triple product L-function of the one-dimensional-space eigenforms."""
    ks = sorted((k1, k2, k3), reverse=True)
    k1, k2, k3 = ks
    if k1 >= k2 + k3:
        raise ValueError("weights must be balanced (k1 < k2 + k3)")

    def src(N: int) -> list[Coefficient]:
        factors = {
            p: triple_euler(
                p, forms.ap(k1, p), forms.ap(k2, p), forms.ap(k3, p), k1, k2, k3
            )
            for p in _primes_up_to(N)
        }
        return dirichlet_coefficients(factors, N)

    shifts = []
    for kk in (0, k1 - 1, k2 - 1, k3 - 1):
        shifts += [-kk, -kk + 1]
    w1 = k1 + k2 + k3 - 2
    return LSpec("triple", tuple(shifts), w1, -1, 1, w1 - 1, src)


def build_lspec(kind: str, **kwargs) -> LSpec:
    """Dispatcher: zeta | elliptic(k) | spinor(j,k) | triple(k1,k2,k3)."""
    if kind == "zeta":
        return zeta_spec()
    if kind == "elliptic":
        return elliptic_spec(kwargs["k"])
    if kind == "spinor":
        return spinor_spec(kwargs["j"], kwargs["k"], kwargs["lambdas"])
    if kind == "triple":
        return triple_spec(kwargs["k1"], kwargs["k2"], kwargs["k3"])
    raise ValueError(f"unsupported kind {kind!r}")


def gamma_quotient(l1: int, l2: int, k1: int, k2: int, k3: int) -> Fraction:
    """Exact elementary constant relating consecutive critical values:

        2^{4(l1-l2)} G(l2) G(l2-k1+1) G(l2-k2+1) G(l2-k3+1)
        ---------------------------------------------------,  G = Gamma
                G(l1) G(l1-k1+1) G(l1-k2+1) G(l1-k3+1)
    """
    num, den = Fraction(2) ** (4 * (l1 - l2)), Fraction(1)
    for l, target in ((l2, "num"), (l1, "den")):
        for shift in (0, k1 - 1, k2 - 1, k3 - 1):
            arg = l - shift
            if arg <= 0:
                raise ValueError(f"gamma argument {arg} not positive")
            f = Fraction(math.factorial(arg - 1))
            if target == "num":
                num *= f
            else:
                den *= f
    return num / den


def alg_ratio_identity(
    l1: int, l2: int, ks: tuple[int, int, int], lalg_l1: Fraction, lalg_l2: Fraction
) -> Fraction:
    """Predicted value of L(l1) / (pi^{4(l1-l2)} L(l2)) from normalized
    critical values."""
    if lalg_l2 == 0:
        raise ZeroDivisionError("normalized value at l2 vanishes (central point)")
    k1, k2, k3 = ks
    return Fraction(lalg_l1, lalg_l2) * gamma_quotient(l1, l2, k1, k2, k3)
