"""Exact integer and rational kernels: factorization with certified primality,
continued fractions, rational reconstruction from decimal strings, and real
quadratic integers.

Decimal strings are always interpreted exactly ("0.5" means 1/2); nothing in
this module touches floating point.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

# Largest n for which the fixed Miller-Rabin witness set below is proven
# deterministic (Sorenson-Webster bound for the first 13 primes).
DETERMINISTIC_PRIMALITY_BOUND = 3_317_044_064_679_887_385_961_981

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)

_TRIAL_LIMIT = 10_000  # rho finds anything this misses below ~1e12 in microseconds

_UNFACTORED_HARD_LIMIT = 10**40


def _small_primes() -> list[int]:
    global _SMALL_PRIMES
    if _SMALL_PRIMES is None:
        sieve = bytearray([1]) * _TRIAL_LIMIT
        sieve[0] = sieve[1] = 0
        for i in range(2, int(_TRIAL_LIMIT**0.5) + 1):
            if sieve[i]:
                sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
        _SMALL_PRIMES = [i for i in range(_TRIAL_LIMIT) if sieve[i]]
    return _SMALL_PRIMES


_SMALL_PRIMES: Optional[list[int]] = None


class FactorizationError(Exception):
    """Raised when a cofactor resists the configured effort budget.

    Carries the offending cofactor so callers can report it; a partial or
    wrong factorization is never returned silently.
    """

    def __init__(self, cofactor: int, message: str = ""):
        self.cofactor = cofactor
        super().__init__(message or f"unfactored cofactor {cofactor}")


def is_prime(n: int) -> bool:
    """Miller-Rabin primality test, deterministic below ~3.3e24."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    if n < DETERMINISTIC_PRIMALITY_BOUND:
        witnesses = _MR_WITNESSES
    else:
        # probabilistic fallback, flagged by primality_certified()
        rng = random.Random(n)
        witnesses = tuple(rng.randrange(2, n - 1) for _ in range(40))
    for a in witnesses:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primality_certified(n: int) -> bool:
    """True when is_prime(n) is a proof rather than a probabilistic claim."""
    return n < DETERMINISTIC_PRIMALITY_BOUND


@dataclass(frozen=True)
class Factorization:
    """Sign and ordered prime factorization of a nonzero integer."""

    sign: int
    factors: tuple[tuple[int, int], ...]  # (prime, exponent), primes increasing

    def value(self) -> int:
        v = self.sign
        for p, e in self.factors:
            v *= p**e
        return v

    @property
    def certified(self) -> bool:
        return all(primality_certified(p) for p, _ in self.factors)

    def __str__(self) -> str:
        if not self.factors:
            body = "1"
        else:
            body = "·".join(f"{p}^{e}" if e > 1 else f"{p}" for p, e in self.factors)
        return ("-" if self.sign < 0 else "") + body

    def marked(self, q: int) -> str:
        """Render with the factor q highlighted (markdown bold)."""
        if not self.factors:
            body = "1"
        else:
            parts = []
            for p, e in self.factors:
                base = f"**{p}**" if p == q else f"{p}"
                parts.append(f"{base}^{e}" if e > 1 else base)
            body = "·".join(parts)
        return ("-" if self.sign < 0 else "") + body


def _brent_rho(n: int, rng: random.Random, max_iter: int) -> Optional[int]:
    """Brent-cycle Pollard rho; returns a nontrivial factor or None."""
    if n % 2 == 0:
        return 2
    y = rng.randrange(1, n)
    c = rng.randrange(1, n)
    m = 128
    g, r, q = 1, 1, 1
    x = ys = y
    count = 0
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = math.gcd(q, n)
            k += m
        r *= 2
        count += r
        if count > max_iter:
            return None
    if g == n:
        while True:
            ys = (ys * ys + c) % n
            g = math.gcd(abs(x - ys), n)
            if g > 1:
                break
    return g if g != n else None


def _is_perfect_power(n: int) -> Optional[tuple[int, int]]:
    for k in range(2, n.bit_length() + 1):
        r = round(n ** (1.0 / k))
        for cand in (r - 1, r, r + 1):
            if cand > 1 and cand**k == n:
                return cand, k
    return None


def factorize(n: int, effort: int = 2_000_000) -> Factorization:
    """Factor a nonzero integer into certified primes.

    Trial division to 1e6 followed by Brent-variant rho under an iteration
    budget.  Raises FactorizationError (reporting the cofactor) rather than
    ever returning a wrong or incomplete answer.
    """
    if n == 0:
        raise ValueError("cannot factor 0")
    sign = 1 if n > 0 else -1
    n = abs(n)
    found: dict[int, int] = {}
    for p in _small_primes():
        if p * p > n:
            break
        while n % p == 0:
            found[p] = found.get(p, 0) + 1
            n //= p
    if 1 < n < _TRIAL_LIMIT * _TRIAL_LIMIT:
        # no prime factor below the trial bound remains, so n is prime
        found[n] = found.get(n, 0) + 1
        n = 1
    if n > 1:
        stack = [n]
        rng = random.Random(0xE15C)
        while stack:
            m = stack.pop()
            if m == 1:
                continue
            if is_prime(m):
                found[m] = found.get(m, 0) + 1
                continue
            pw = _is_perfect_power(m)
            if pw:
                base, k = pw
                for _ in range(k):
                    stack.append(base)
                continue
            d = None
            for _ in range(24):
                d = _brent_rho(m, rng, effort)
                if d is not None and 1 < d < m:
                    break
                d = None
            if d is None:
                if m > _UNFACTORED_HARD_LIMIT:
                    raise FactorizationError(
                        m, f"cofactor {m} exceeds 1e40 and resisted the effort budget"
                    )
                raise FactorizationError(m, f"cofactor {m} resisted the effort budget")
            stack.append(d)
            stack.append(m // d)
    return Factorization(sign, tuple(sorted(found.items())))


def parse_exact_decimal(s: str) -> tuple[Fraction, int]:
    """Parse a terminating decimal string exactly.

    Returns (value, d) where d is the number of digits after the decimal
    point.  Raises ValueError on anything that is not a plain signed decimal.
    """
    t = s.strip()
    sign = 1
    if t.startswith(("+", "-")):
        if t[0] == "-":
            sign = -1
        t = t[1:]
    if not t or t.count(".") > 1:
        raise ValueError(f"malformed decimal string: {s!r}")
    if "." in t:
        whole, frac = t.split(".")
    else:
        whole, frac = t, ""
    if whole == "":
        whole = "0"
    if not whole.isdigit() or (frac != "" and not frac.isdigit()):
        raise ValueError(f"malformed decimal string: {s!r}")
    num = int(whole + frac) if frac else int(whole)
    return Fraction(sign * num, 10 ** len(frac)), len(frac)


def cf_terms(x: Fraction, max_terms: Optional[int] = None) -> list[int]:
    """Standard continued-fraction expansion of an exact rational."""
    out = []
    num, den = x.numerator, x.denominator
    while den != 0:
        q, r = divmod(num, den)
        out.append(q)
        num, den = den, r
        if max_terms is not None and len(out) >= max_terms:
            break
    return out


def cf_expand(decimal: str, max_terms: int = 40) -> list[int]:
    """Continued fraction of the exact rational denoted by a decimal string."""
    x, _ = parse_exact_decimal(decimal)
    return cf_terms(x, max_terms)


def convergents(terms: list[int]) -> list[Fraction]:
    """Convergents p_k/q_k of a continued fraction."""
    out = []
    p0, q0 = 1, 0
    p1, q1 = terms[0], 1
    out.append(Fraction(p1, q1))
    for a in terms[1:]:
        p0, p1 = p1, a * p1 + p0
        q0, q1 = q1, a * q1 + q0
        out.append(Fraction(p1, q1))
    return out


def rational_reconstruct(decimal: str, quotient_threshold: int = 10**10) -> Optional[Fraction]:
    """Recover the rational a truncated decimal "clearly ought to be".

    Expands the exact parsed value as a continued fraction, truncates just
    before the first partial quotient exceeding the threshold, and accepts the
    resulting convergent only if it reproduces the input to within
    10^-(d-5), d the count of decimal digits supplied.  Returns None when no
    quotient crosses the threshold or the round-trip check fails.
    """
    if quotient_threshold < 10**6:
        raise ValueError("quotient_threshold must be at least 1e6")
    x, d = parse_exact_decimal(decimal)
    terms = cf_terms(x)
    cut = None
    for i, a in enumerate(terms):
        if i >= 1 and a > quotient_threshold:
            cut = i
            break
    if cut is None or cut == 0:
        return None
    cand = convergents(terms[:cut])[-1]
    if abs(cand - x) <= Fraction(1, 10 ** max(d - 5, 1)):
        return cand
    return None


def squarefree_split(n: int) -> tuple[int, int]:
    """n = c^2 * d with d squarefree; returns (c, d).  Requires n > 0."""
    if n <= 0:
        raise ValueError("need a positive integer")
    c, d = 1, 1
    for p, e in factorize(n).factors:
        c *= p ** (e // 2)
        d *= p ** (e % 2)
    return c, d


@dataclass(frozen=True)
class QuadInt:
    """a + b*sqrt(D) with exact rational a, b and squarefree D > 1.

    Construction normalizes non-squarefree D (the square part is folded
    into b).
    """

    a: Fraction
    b: Fraction
    D: int

    def __init__(self, a, b, D: int):
        if D <= 1:
            raise ValueError("D must exceed 1")
        c, d = squarefree_split(D)
        if d <= 1:
            raise ValueError(f"D={D} is a perfect square; not a quadratic irrational")
        object.__setattr__(self, "a", Fraction(a))
        object.__setattr__(self, "b", Fraction(b) * c)
        object.__setattr__(self, "D", d)

    def conjugate(self) -> "QuadInt":
        return QuadInt(self.a, -self.b, self.D)

    def __add__(self, other):
        if isinstance(other, QuadInt):
            if other.D != self.D:
                raise ValueError("mixed radicands")
            return QuadInt(self.a + other.a, self.b + other.b, self.D)
        return QuadInt(self.a + Fraction(other), self.b, self.D)

    __radd__ = __add__

    def __neg__(self):
        return QuadInt(-self.a, -self.b, self.D)

    def __sub__(self, other):
        return self + (-other if isinstance(other, QuadInt) else -Fraction(other))

    def __rsub__(self, other):
        return (-self) + Fraction(other)

    def __mul__(self, other):
        if isinstance(other, QuadInt):
            if other.D != self.D:
                raise ValueError("mixed radicands")
            return QuadInt(
                self.a * other.a + self.D * self.b * other.b,
                self.a * other.b + self.b * other.a,
                self.D,
            )
        f = Fraction(other)
        return QuadInt(self.a * f, self.b * f, self.D)

    __rmul__ = __mul__

    def __str__(self):
        return f"{self.a} {'+' if self.b >= 0 else '-'} {abs(self.b)}*sqrt({self.D})"


def quad_norm(x: QuadInt) -> Fraction:
    """Field norm a^2 - D*b^2."""
    return x.a * x.a - x.D * x.b * x.b
