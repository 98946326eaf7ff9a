"""Exact q-expansions of level-1 elliptic modular forms.

Supported weights are the one-dimensional cusp spaces k in
{12, 16, 18, 20, 22, 26}; each eigenform is the monomial
delta * E4^a * E6^b, so no Hecke diagonalization is needed.
All coefficients are exact Python integers.  Cached series are shared;
treat returned QSeries objects as immutable.
"""

from __future__ import annotations

from functools import lru_cache

ONE_DIM_WEIGHTS = (12, 16, 18, 20, 22, 26)

# eigenform(k) = delta * E4^a * E6^b
_MONOMIAL = {12: (0, 0), 16: (1, 0), 18: (0, 1), 20: (2, 0), 22: (1, 1), 26: (2, 1)}


class QSeries:
    """Truncated integer power series in q, exact to its stated order."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs, order=None):
        if order is None:
            order = len(coeffs) - 1
        c = list(coeffs[: order + 1])
        c += [0] * (order + 1 - len(c))
        self.coeffs = c
        self.order = order

    def __getitem__(self, n: int) -> int:
        return self.coeffs[n]

    def __eq__(self, other):
        return (
            isinstance(other, QSeries)
            and self.order == other.order
            and self.coeffs == other.coeffs
        )

    def __add__(self, other):
        n = min(self.order, other.order)
        return QSeries([self.coeffs[i] + other.coeffs[i] for i in range(n + 1)], n)

    def __sub__(self, other):
        n = min(self.order, other.order)
        return QSeries([self.coeffs[i] - other.coeffs[i] for i in range(n + 1)], n)

    def __mul__(self, other):
        if isinstance(other, int):
            return QSeries([c * other for c in self.coeffs], self.order)
        n = min(self.order, other.order)
        out = [0] * (n + 1)
        for i, ai in enumerate(self.coeffs[: n + 1]):
            if ai:
                bo = other.coeffs
                for j in range(n + 1 - i):
                    bj = bo[j]
                    if bj:
                        out[i + j] += ai * bj
        return QSeries(out, n)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers not supported")
        result = QSeries([1], self.order)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def __repr__(self):
        head = ", ".join(str(c) for c in self.coeffs[:6])
        return f"QSeries([{head}, ...], order={self.order})"


def euler_product(order: int) -> QSeries:
    """prod (1 - q^n) via the pentagonal number expansion."""
    c = [0] * (order + 1)
    c[0] = 1
    k = 1
    while True:
        g1 = k * (3 * k - 1) // 2
        g2 = k * (3 * k + 1) // 2
        if g1 > order and g2 > order:
            break
        s = -1 if k % 2 else 1
        if g1 <= order:
            c[g1] += s
        if g2 <= order:
            c[g2] += s
        k += 1
    return QSeries(c, order)


@lru_cache(maxsize=None)
def delta(order: int) -> QSeries:
    """Discriminant cusp form q * prod (1-q^n)^24."""
    e = euler_product(order) ** 24
    return QSeries([0] + e.coeffs[:order], order)


def _divisor_power_sums(order: int, k: int) -> list[int]:
    s = [0] * (order + 1)
    for d in range(1, order + 1):
        dk = d**k
        for n in range(d, order + 1, d):
            s[n] += dk
    return s


@lru_cache(maxsize=None)
def eisenstein(k: int, order: int) -> QSeries:
    """Normalized Eisenstein series E4 or E6 (constant term 1)."""
    if k == 4:
        scale = 240
    elif k == 6:
        scale = -504
    else:
        raise ValueError("only E4 and E6 are needed here")
    s = _divisor_power_sums(order, k - 1)
    return QSeries([1] + [scale * v for v in s[1:]], order)


@lru_cache(maxsize=None)
def eigenform(k: int, order: int) -> QSeries:
    """Normalized Hecke eigenform of weight k, exact to the given order."""
    if k not in _MONOMIAL:
        raise ValueError(f"weight {k} is not a one-dimensional level-1 cusp weight")
    if order < 2:
        raise ValueError("order must be at least 2")
    a, b = _MONOMIAL[k]
    f = delta(order)
    if a:
        f = f * eisenstein(4, order) ** a
    if b:
        f = f * eisenstein(6, order) ** b
    return f


@lru_cache(maxsize=None)
def _coeff_cached(k: int, n: int) -> int:
    # bucket the expansion order so nearby lookups share one expansion
    order = 64
    while order < n:
        order *= 2
    return eigenform(k, order)[n]


def coefficient(k: int, n: int) -> int:
    """n-th q-expansion coefficient a_n(f_k)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return _coeff_cached(k, n)


def ap(k: int, p: int) -> int:
    """Hecke eigenvalue a_p(f_k) for prime p."""
    return coefficient(k, p)


def is_ordinary(k: int, q: int) -> bool:
    """q-ordinarity: q does not divide a_q(f_k)."""
    return coefficient(k, q) % q != 0
