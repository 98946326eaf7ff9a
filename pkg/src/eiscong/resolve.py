"""Turning traces of Hecke operators on small spaces into eigenvalues:
endoscopic subtraction, the quadratic Hecke relation for the trace of T(p)^2,
restriction to the stable part, and solving the resulting quadratic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .exact import QuadInt, squarefree_split


def endoscopic_subtract(trace: int, contributions) -> int:
    """trace minus sum of scale * eigenvalue over the listed lifts."""
    return trace - sum(scale * ev for scale, ev in contributions)


def trace_square(tr_tp2: int, tr_tpp: int, p: int, w: int, dim: int) -> int:
    """Trace of T(p)^2 from the quadratic relation in the local Hecke algebra.

    tr T(p)^2 = tr T(p^2) + (p+1) tr T(p,p) + dim * p^(w-5) * (p^5+...+p+1),
    w the motivic weight (odd) of the relevant spin normalization.
    """
    if dim < 1:
        raise ValueError("dim must be positive")
    scalar = p ** (w - 5) * sum(p**i for i in range(6))
    return tr_tp2 + (p + 1) * tr_tpp + dim * scalar


def restrict_square(total_sq: int, known_eigenvalues) -> int:
    """Remove known eigenvalues' squares from a trace of T(p)^2."""
    return total_sq - sum(e * e for e in known_eigenvalues)


@dataclass(frozen=True)
class EigenOutcome:
    """Roots of x^2 - sum*x + product: a rational pair or a conjugate
    quadratic pair a +- b*sqrt(D)."""

    kind: str  # "rational" | "quadratic-pair"
    rational_values: Optional[tuple[int, int]] = None
    pair: Optional[QuadInt] = None  # the +sqrt(D) member; conjugate() is the other

    def root_sum(self) -> Fraction:
        if self.kind == "rational":
            return Fraction(sum(self.rational_values))
        return 2 * self.pair.a

    def root_square_sum(self) -> Fraction:
        if self.kind == "rational":
            return Fraction(sum(v * v for v in self.rational_values))
        a, b, d = self.pair.a, self.pair.b, self.pair.D
        return 2 * (a * a + d * b * b)


def quadratic_resolve(sum_: int, sum_sq: int) -> EigenOutcome:
    """Solve for {a, b} given a + b and a^2 + b^2.

    The discriminant 2*sum_sq - sum_^2 must be nonnegative (inconsistent
    trace data otherwise).  A perfect-square discriminant yields the rational
    kind; otherwise the pair (sum/2) +- (c/2) sqrt(D) with disc = c^2 D.
    """
    disc = 2 * sum_sq - sum_ * sum_
    if disc < 0:
        raise ValueError(f"negative discriminant {disc}: inconsistent trace data")
    prod2 = sum_ * sum_ - sum_sq
    if prod2 % 2 != 0:
        raise ValueError("sum and sum of squares have impossible parities")
    r = _isqrt(disc)
    if r * r == disc:
        hi, lo = (sum_ + r), (sum_ - r)
        if hi % 2 != 0:
            raise ValueError("non-integral rational roots")
        return EigenOutcome("rational", rational_values=(hi // 2, lo // 2))
    c, d = squarefree_split(disc)
    return EigenOutcome(
        "quadratic-pair", pair=QuadInt(Fraction(sum_, 2), Fraction(c, 2), d)
    )


def _isqrt(n: int) -> int:
    import math

    return math.isqrt(n)
