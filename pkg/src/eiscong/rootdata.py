"""Root-system combinatorics for split odd and even orthogonal groups, plus
the weight dictionaries between infinitesimal-character labels, Siegel
weights (j, k), and highest weights of the compact forms.

Half-integer vectors are stored as doubled integers so every pairing is
computed in exact integer arithmetic.  Only the two maximal parabolics the
congruence formulas use are supported: removing the simple root e1-e2 in the
odd (B) series and e2-e3 in the even (D) series.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class HalfIntVector:
    """Vector with half-integer entries; entry i is stored as 2*coordinate."""

    doubled: tuple[int, ...]

    @classmethod
    def from_halves(cls, values) -> "HalfIntVector":
        out = []
        for v in values:
            f = Fraction(v) * 2
            if f.denominator != 1:
                raise ValueError(f"{v} is not a half-integer")
            out.append(f.numerator)
        return cls(tuple(out))

    def halves(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(d, 2) for d in self.doubled)

    def __len__(self):
        return len(self.doubled)

    def __add__(self, other: "HalfIntVector") -> "HalfIntVector":
        return HalfIntVector(tuple(a + b for a, b in zip(self.doubled, other.doubled, strict=True)))

    def is_dominant(self) -> bool:
        return all(a >= b for a, b in zip(self.doubled, self.doubled[1:])) and self.doubled[-1] >= 0

    def is_regular(self) -> bool:
        vals = [abs(d) for d in self.doubled]
        return len(set(vals)) == len(vals) and all(v > 0 for v in vals)

    def __str__(self):
        return "(" + ", ".join(str(Fraction(d, 2)) for d in self.doubled) + ")"


class Root:
    """Root in the e-basis; coroot pairings are exact.

    Supported kinds: e_i - e_j, e_i + e_j (long in B, all of D) and e_i
    (short, series B), which covers every positive root that occurs here.
    """

    __slots__ = ("coords",)

    def __init__(self, coords):
        self.coords = tuple(coords)

    def coroot_coords(self) -> tuple[int, ...]:
        norm2 = sum(c * c for c in self.coords)
        if norm2 == 2:
            return self.coords
        if norm2 == 1:
            return tuple(2 * c for c in self.coords)
        raise ValueError("unexpected root length")

    def pair_with(self, weight: HalfIntVector) -> Fraction:
        """<weight, coroot of self>, exact."""
        cr = self.coroot_coords()
        return Fraction(sum(d * c for d, c in zip(weight.doubled, cr, strict=True)), 2)

    def __eq__(self, other):
        return isinstance(other, Root) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __str__(self):
        parts = []
        for i, c in enumerate(self.coords, start=1):
            if c == 0:
                continue
            sign = "+" if c > 0 else "-"
            parts.append((sign, f"e{i}" if abs(c) == 1 else f"{abs(c)}e{i}"))
        if not parts:
            return "0"
        s = parts[0][1] if parts[0][0] == "+" else "-" + parts[0][1]
        for sign, t in parts[1:]:
            s += sign + t
        return s

    def coroot_str(self) -> str:
        parts = []
        for i, c in enumerate(self.coroot_coords(), start=1):
            if c == 0:
                continue
            sign = "+" if c > 0 else "-"
            parts.append((sign, f"f{i}" if abs(c) == 1 else f"{abs(c)}f{i}"))
        s = parts[0][1] if parts[0][0] == "+" else "-" + parts[0][1]
        for sign, t in parts[1:]:
            s += sign + t
        return s


def _unit(n: int, i: int, sign: int = 1) -> list[int]:
    v = [0] * n
    v[i] = sign
    return v


def positive_roots(series: str, n: int) -> list[Root]:
    """Positive roots of B_n (odd orthogonal) or D_n (even orthogonal)."""
    if series == "B":
        if n < 1:
            raise ValueError("series B needs rank >= 1")
    elif series == "D":
        if n < 3:
            raise ValueError("series D needs rank >= 3")
    else:
        raise ValueError("series must be 'B' or 'D'")
    roots = []
    for i in range(n):
        for j in range(i + 1, n):
            a = _unit(n, i)
            a[j] = -1
            roots.append(Root(a))
    if series == "B":
        for i in range(n):
            roots.append(Root(_unit(n, i)))
    for i in range(n):
        for j in range(i + 1, n):
            a = _unit(n, i)
            a[j] = 1
            roots.append(Root(a))
    return roots


def rho_G(series: str, n: int) -> HalfIntVector:
    """Half-sum of positive roots."""
    total = [0] * n
    for r in positive_roots(series, n):
        for i, c in enumerate(r.coords):
            total[i] += c
    return HalfIntVector(tuple(total))  # doubled sum = 2 * half-sum


@dataclass(frozen=True)
class ParabolicData:
    """Data of the maximal parabolic used by the congruence formulas."""

    series: str
    n: int
    alpha: Root
    phi_N: tuple[Root, ...]
    phi_N_layers: dict  # layer index i -> tuple of roots with <alpha~, coroot> = i
    rho_P: HalfIntVector
    alpha_tilde: HalfIntVector
    pairing_value: Fraction  # <rho_P, alpha-coroot>


def parabolic_data(series: str, n: int) -> ParabolicData:
    """Parabolic from removing e1-e2 (series B) or e2-e3 (series D)."""
    pos = positive_roots(series, n)
    if series == "B":
        alpha = Root(_unit(n, 0) if n == 1 else [1, -1] + [0] * (n - 2))
    else:
        if n < 3:
            raise ValueError("series D needs rank >= 3")
        a = [0] * n
        a[1], a[2] = 1, -1
        alpha = Root(a)

    # Levi positive roots: those whose simple-root expansion avoids alpha.
    # For these two choices that is exactly the positive roots not moving
    # the first coordinate (B) or not mixing {e1,e2} with the rest (D).
    phi_n = []
    for r in pos:
        if series == "B":
            in_levi = r.coords[0] == 0
        else:
            touches_12 = r.coords[0] != 0 or r.coords[1] != 0
            inside_12 = all(c == 0 for c in r.coords[2:])
            in_levi = (not touches_12) or (touches_12 and inside_12 and r.coords[0] * r.coords[1] < 0)
        if not in_levi:
            phi_n.append(r)

    total = [0] * n
    for r in phi_n:
        for i, c in enumerate(r.coords):
            total[i] += c
    rho_p = HalfIntVector(tuple(total))
    pairing = alpha.pair_with(rho_p)
    if series == "B" and n == 1:
        # degenerate rank: rho_P/<rho_P, alpha-coroot> would give e1/2, but the
        # induction parameter is normalized against alpha~ = e1, putting the
        # short root in layer 2 exactly as for higher rank
        alpha_tilde = HalfIntVector((2,))
    else:
        tilde_doubled = []
        for d in rho_p.doubled:
            f = Fraction(d) / pairing
            if f.denominator != 1:
                raise ValueError("alpha_tilde is not integral in the doubled basis")
            tilde_doubled.append(f.numerator)
        alpha_tilde = HalfIntVector(tuple(tilde_doubled))

    layers: dict[int, list[Root]] = {}
    for r in phi_n:
        cr = r.coroot_coords()
        val = Fraction(sum(a * b for a, b in zip(alpha_tilde.doubled, cr, strict=True)), 2)
        if val.denominator != 1:
            raise ValueError("non-integral layer pairing")
        layers.setdefault(int(val), []).append(r)

    return ParabolicData(
        series=series,
        n=n,
        alpha=alpha,
        phi_N=tuple(phi_n),
        phi_N_layers={i: tuple(v) for i, v in sorted(layers.items())},
        rho_P=rho_p,
        alpha_tilde=alpha_tilde,
        pairing_value=pairing,
    )


@dataclass(frozen=True)
class CRLabel:
    """Level-1 infinitesimal-character label: doubled coordinates, strictly
    decreasing.  Odd entries for the odd orthogonal series, even entries
    (last possibly 0) for the even series."""

    weights: tuple[int, ...]

    def __post_init__(self):
        w = self.weights
        if any(a <= b for a, b in zip(w, w[1:])):
            raise ValueError(f"label {w} is not strictly decreasing")
        if w[-1] < 0:
            raise ValueError(f"label {w} has a negative entry")
        parities = {x % 2 for x in w}
        if len(parities) != 1:
            raise ValueError(f"label {w} mixes parities")
        if w[-1] == 0 and len(w) > 1 and w[0] % 2 == 1:
            raise ValueError("odd-series labels must be positive")

    def __str__(self):
        return "D" + "_".join(str(x) for x in self.weights)

    def halves(self):
        return tuple(Fraction(x, 2) for x in self.weights)


def jk_to_cr(j: int, k: int) -> CRLabel:
    """Genus-2 Siegel weight (j, k) to its infinitesimal-character label."""
    if j < 0 or j % 2 != 0:
        raise ValueError("j must be even and nonnegative")
    if k < 3:
        raise ValueError("k must be at least 3")
    a, b = j + 2 * k - 3, j + 1
    if a == b:
        raise ValueError("non-regular weight")
    return CRLabel((a, b))


def cr_to_jk(label: CRLabel) -> tuple[int, int]:
    """Inverse of jk_to_cr for 2-entry labels."""
    if len(label.weights) != 2:
        raise ValueError("need a genus-2 label")
    a, b = label.weights
    j = b - 1
    k = (a + 3 - j) // 2
    if jk_to_cr(j, k) != label:
        raise ValueError("label is not of Siegel type")
    return j, k


def so43_target(j: int, k: int, s: Fraction) -> CRLabel:
    """Infinitesimal character of the predicted odd-orthogonal cusp form."""
    s = Fraction(s)
    if s.denominator != 2:
        raise ValueError("s must be a half-odd-integer")
    if not (Fraction(1, 2) < s < Fraction(j + 1, 2)):
        raise ValueError(f"s={s} outside the critical range (1/2, {Fraction(j+1,2)})")
    base = jk_to_cr(j, k)
    third = int(2 * s)
    if third in base.weights:
        raise ValueError("non-regular target")
    return CRLabel(tuple(sorted((*base.weights, third), reverse=True)))


def so44_target(k: int, ell: int, m: int, s: Fraction) -> CRLabel:
    """Infinitesimal character of the predicted even-orthogonal cusp form."""
    s = Fraction(s)
    if s.denominator != 2:
        raise ValueError("s must be a half-odd-integer")
    hi = min(Fraction(ell + m - 2, 2) - Fraction(k - 1, 2), Fraction(k - 1, 2) - Fraction(abs(ell - m), 2))
    if not (Fraction(1, 2) < s < hi):
        raise ValueError(f"s={s} outside the critical range (1/2, {hi})")
    doubled = (ell + m - 2, int(k - 1 + 2 * s), int(k - 1 - 2 * s), abs(ell - m))
    if len(set(doubled)) != 4:
        raise ValueError("non-regular target")
    return CRLabel(tuple(sorted(doubled, reverse=True)))


def mu_plus_rho(group: str, mu) -> CRLabel:
    """Infinitesimal character mu + rho of a compact-form representation.

    group is "SO7" (rho = (5/2, 3/2, 1/2)) or "SO8" (rho = (3, 2, 1, 0));
    mu is the highest weight as integer coordinates.
    """
    mu = tuple(int(x) for x in mu)
    if group == "SO7":
        rho = rho_G("B", 3)
        if len(mu) != 3:
            raise ValueError("SO7 weights have three coordinates")
    elif group == "SO8":
        rho = rho_G("D", 4)
        if len(mu) != 4:
            raise ValueError("SO8 weights have four coordinates")
    else:
        raise ValueError("group must be SO7 or SO8")
    if any(a < b for a, b in zip(mu, mu[1:])) or mu[-1] < 0:
        raise ValueError("mu must be dominant")
    doubled = tuple(2 * m + r for m, r in zip(mu, rho.doubled))
    if len({abs(d) for d in doubled}) != len(doubled):
        raise ValueError("mu + rho is not regular")
    return CRLabel(doubled)


def _linear_form_str(terms: list[tuple[str, Fraction]]) -> str:
    """Render sum of coeff*symbol, e.g. [("a1",-1),("s",1)] -> "-a1+s"."""
    parts = []
    for name, c in terms:
        if c == 0:
            continue
        sign = "+" if c > 0 else "-"
        mag = abs(c)
        body = name if mag == 1 else f"{mag}{name}"
        parts.append(sign + body)
    if not parts:
        return "0"
    s = "".join(parts)
    return s[1:] if s.startswith("+") else s


def _monomial_str(exps: list[tuple[str, int]]) -> str:
    """Render product of symbol^exp, e.g. "a_p*b1^-1"; empty -> "1"."""
    parts = [name if e == 1 else f"{name}^{e}" for name, e in exps if e != 0]
    return "*".join(parts) if parts else "1"


def pairing_table(pd: ParabolicData) -> list[tuple[str, str, str, str]]:
    """Rows (root, coroot, <lambda + s*alpha~, coroot>, Satake value).

    Regenerated from the parabolic data with the Levi infinitesimal character
    kept symbolic: a_j for the orthogonal factor, (k-1)/2 for the GL2 factor
    of the even-series Levi, s for the induction parameter.  Satake symbols:
    a_p for the GL2 parameter, bj for the orthogonal-factor parameters.
    """
    rows = []
    n = pd.n
    for r in pd.phi_N:
        cr = r.coroot_coords()
        s_coeff = Fraction(sum(a * b for a, b in zip(pd.alpha_tilde.doubled, cr, strict=True)), 2)
        lin: list[tuple[str, Fraction]] = []
        mono: list[tuple[str, int]] = []
        if pd.series == "B":
            # lambda = a_1 e2 + ... + a_{n-1} e_n; Satake has no e1 component
            for idx in range(1, n):
                if cr[idx]:
                    lin.append((f"a{idx}", Fraction(cr[idx])))
                    mono.append((f"b{idx}", cr[idx]))
        else:
            # lambda = (k-1)/2 (e1 - e2) + a_1 e3 + ... + a_{n-2} e_n,
            # and the GL2 Satake parameter sits on e1 - e2 as well
            if cr[0] - cr[1]:
                lin.append(("(k-1)/2", Fraction(cr[0] - cr[1])))
                mono.append(("a_p", cr[0] - cr[1]))
            for idx in range(2, n):
                if cr[idx]:
                    lin.append((f"a{idx - 1}", Fraction(cr[idx])))
                    mono.append((f"b{idx - 1}", cr[idx]))
        lin.append(("s", s_coeff))
        rows.append((str(r), r.coroot_str(), _linear_form_str(lin), _monomial_str(mono)))
    return rows
