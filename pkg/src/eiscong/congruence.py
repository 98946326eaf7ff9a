"""Right-hand sides of the Hecke-eigenvalue congruences, declarative case
files and exact verification with factored-difference reporting.

Shapes:
  eisenstein  a_p(f) = 1 + p^(k'-1)
  harder      genus-2 vs genus-1:  a_p(f) + p^(k-2) + p^(j+k-1)
  so43        rank-3 odd orthogonal vs genus-2:  lam_p + p^(w/2+s) + p^(w/2-s)
  so44        rank-4 even orthogonal vs a triple of eigenforms
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Optional, Union

from . import forms
from .dataset import Dataset, Miss
from .exact import Factorization, QuadInt, factorize, quad_norm
from .resolve import (
    EigenOutcome,
    endoscopic_subtract,
    quadratic_resolve,
    restrict_square,
    trace_square,
)


def rhs_eisenstein(p: int, kprime: int) -> int:
    if kprime < 4 or kprime % 2:
        raise ValueError("weight must be an even integer >= 4")
    return 1 + p ** (kprime - 1)


def rhs_harder(p: int, ap_f: int, j: int, k: int) -> int:
    return ap_f + p ** (k - 2) + p ** (j + k - 1)


def rhs_so43(p: int, lambda_p: int, j: int, k: int, s) -> int:
    s = Fraction(s)
    w = j + 2 * k - 3
    hi = Fraction(w, 2) + s
    lo = Fraction(w, 2) - s
    if hi.denominator != 1 or lo.denominator != 1:
        raise ValueError("w/2 +- s must be integers")
    if not (Fraction(1, 2) < s < Fraction(j + 1, 2)):
        raise ValueError(f"s={s} outside the critical range")
    return p ** int(hi) + p ** int(lo) + lambda_p


def rhs_so44(p: int, ap_f: int, ap_g: int, ap_h: int, k: int, ell: int, m: int, s) -> int:
    s = Fraction(s)
    base = Fraction(ell + m - k - 1, 2)
    hi, lo = base + s, base - s
    if hi.denominator != 1 or lo.denominator != 1:
        raise ValueError("exponents must be integers")
    if lo < 0:
        raise ValueError(f"s={s} outside the critical range")
    return (p ** int(hi) + p ** int(lo)) * ap_f + ap_g * ap_h


def bound_check(k1: int, k2: int, k3: int, tprime: int, q: int) -> tuple[int, bool]:
    """Tamagawa-factor bound: returns (bound, q > bound)."""
    if not (k1 >= k2 >= k3):
        raise ValueError("weights must be ordered k1 >= k2 >= k3")
    if not (k1 <= tprime <= k2 + k3 - 2):
        raise ValueError("t' outside the critical range")
    bound = max(k1, 2 * k3 - 2 - (tprime - (k1 - 1)), k3 + 2 + tprime - k2)
    return bound, q > bound


@dataclass(frozen=True)
class CongruenceCase:
    name: str
    shape: str  # eisenstein | harder | so43 | so44 | so43_quadratic
    modulus: int
    primes: tuple[int, ...]
    params: dict
    lhs: dict
    rhs: dict


@dataclass(frozen=True)
class CongruenceRow:
    p: int
    lhs: int
    rhs: int
    difference: int  # rhs - lhs, signed
    factorization: Optional[Factorization]
    divisible: bool


@dataclass(frozen=True)
class CongruenceReport:
    case: CongruenceCase
    rows: tuple[CongruenceRow, ...]
    all_pass: bool

    def common_prime_factors(self, minimum: int = 5) -> list[int]:
        """Primes >= minimum dividing every nonzero difference.

        A diagnostic for spotting candidate moduli; searching for new
        congruences stays out of scope.
        """
        common = None
        for row in self.rows:
            if row.factorization is None:
                continue
            primes = {p for p, _ in row.factorization.factors if p >= minimum}
            common = primes if common is None else common & primes
        return sorted(common or ())


@dataclass(frozen=True)
class QuadraticReport:
    case: CongruenceCase
    p: int
    chain: tuple[tuple[str, str], ...]  # (label, value) resolution steps
    outcome: EigenOutcome
    difference: QuadInt  # rhs - (stable eigenvalue), + sqrt branch
    norm: int
    norm_factorization: Factorization
    divisible: bool


def load_cases() -> dict[str, CongruenceCase]:
    raw = json.loads(
        resources.files("eiscong.data").joinpath("congruence_cases.json").read_text()
    )
    out = {}
    for obj in raw:
        case = CongruenceCase(
            name=obj["name"],
            shape=obj["shape"],
            modulus=obj["modulus"],
            primes=tuple(obj.get("primes", ())),
            params=obj.get("params", {}),
            lhs=obj.get("lhs", {}),
            rhs=obj.get("rhs", {}),
        )
        out[case.name] = case
    return out


def _eigen_source(spec: dict, ds: Dataset, p: int) -> int:
    """Resolve one eigenvalue reference: dataset record or eigenform."""
    if "form_weight" in spec:
        return forms.ap(spec["form_weight"], p)
    return ds.require(spec["space"], spec.get("op", "T(p)"), spec.get("n", p))


def lhs_value(case: CongruenceCase, ds: Dataset, p: int) -> int:
    """Left side at p: direct eigenvalue or endoscopically resolved trace."""
    lhs = case.lhs
    if "form_weight" in lhs:
        return forms.ap(lhs["form_weight"], p)
    if "eigen_space" in lhs:
        return ds.require(lhs["eigen_space"], "T(p)", p)
    trace = ds.require(lhs["trace"]["space"], lhs["trace"].get("op", "trT(p)"), p)
    contributions = []
    for sub in lhs.get("subtract", []):
        scale = sub.get("coeff", 1) * p ** sub.get("p_exp", 0)
        contributions.append((scale, _eigen_source(sub, ds, p)))
    value = endoscopic_subtract(trace, contributions)
    cross = lhs.get("cross_check_space")
    if cross:
        recorded = ds.query(cross, "T(p)", p)
        if not isinstance(recorded, Miss) and recorded != value:
            raise ValueError(
                f"{case.name}: resolved eigenvalue {value} at p={p} "
                f"contradicts the recorded value {recorded}"
            )
    return value


def rhs_value(case: CongruenceCase, ds: Dataset, p: int) -> int:
    rhs = case.rhs
    shape = case.shape
    if shape == "eisenstein":
        return rhs_eisenstein(p, case.params["kprime"])
    if shape == "harder":
        j, k = case.params["jk"]
        return rhs_harder(p, forms.ap(case.params["f_weight"], p), j, k)
    if shape in ("so43", "so43_quadratic"):
        j, k = case.params["jk"]
        lam = _eigen_source(rhs["lambda"], ds, p)
        return rhs_so43(p, lam, j, k, Fraction(case.params["s"]))
    if shape == "so44":
        k, ell, m = case.params["klm"]
        wf, wg, wh = rhs["weights"]
        return rhs_so44(
            p,
            forms.ap(wf, p),
            forms.ap(wg, p),
            forms.ap(wh, p),
            k,
            ell,
            m,
            Fraction(case.params["s"]),
        )
    raise ValueError(f"unknown shape {shape!r}")


def check(case: CongruenceCase, ds: Dataset) -> CongruenceReport:
    """Verify one linear congruence case over its prime list, exactly."""
    if case.shape == "so43_quadratic":
        raise ValueError("use check_quadratic for quadratic-pair cases")
    rows = []
    q = case.modulus
    for p in case.primes:
        lhs = lhs_value(case, ds, p)
        rhs = rhs_value(case, ds, p)
        diff = rhs - lhs
        fac = factorize(diff) if diff != 0 else None
        rows.append(
            CongruenceRow(
                p=p,
                lhs=lhs,
                rhs=rhs,
                difference=diff,
                factorization=fac,
                divisible=diff % q == 0,
            )
        )
    return CongruenceReport(case=case, rows=tuple(rows), all_pass=all(r.divisible for r in rows))


def check_norm(value: QuadInt, q: int) -> tuple[Factorization, bool]:
    """Factor |Norm(value)| and test divisibility by q."""
    n = quad_norm(value)
    if n.denominator != 1:
        raise ValueError("norm is not an integer")
    n = n.numerator
    if n == 0:
        raise ValueError("zero norm")
    return factorize(n), n % q == 0


def check_quadratic(case: CongruenceCase, ds: Dataset) -> QuadraticReport:
    """Run a trace -> quadratic-pair pipeline and the norm congruence test."""
    q = case.modulus
    p = case.params["p"]
    w = case.params["w"]
    dim = case.params["dim"]
    space = case.lhs["trace_space"]
    tr = ds.require(space, "trT(p)", p)
    tr_p2 = ds.require(space, "trT(p^2)", p * p)
    tr_pp = ds.require(space, "T(p,p)", p)
    tr_sq = trace_square(tr_p2, tr_pp, p, w, dim)
    chain = [
        (f"tr T({p})", str(tr)),
        (f"tr T({p * p})", str(tr_p2)),
        (f"tr T({p},{p})", str(tr_pp)),
        (f"tr T({p})^2", str(tr_sq)),
    ]
    recorded = ds.query(space, "trT(p^2_derived)", p)
    if not isinstance(recorded, Miss) and recorded != tr_sq:
        raise ValueError(f"{case.name}: derived tr T(p)^2 {tr_sq} contradicts {recorded}")
    removed = []
    for sub in case.lhs.get("subtract", []):
        removed.append(_eigen_source(sub, ds, p))
    stable_tr = endoscopic_subtract(tr, [(1, e) for e in removed])
    stable_sq = restrict_square(tr_sq, removed)
    if removed:
        chain.append((f"tr T({p}) on the stable part", str(stable_tr)))
        chain.append((f"tr T({p})^2 on the stable part", str(stable_sq)))
    outcome = quadratic_resolve(stable_tr, stable_sq)
    if outcome.kind != "quadratic-pair":
        raise ValueError(f"{case.name}: expected an irrational pair, got {outcome}")
    chain.append(("eigenvalue pair", str(outcome.pair) + " and conjugate"))
    rhs0 = rhs_value(case, ds, p)
    diff = rhs0 - outcome.pair
    fac, divisible = check_norm(diff, q)
    chain.append((f"rhs at p={p}", str(rhs0)))
    chain.append(("difference", str(diff)))
    chain.append(("norm", str(quad_norm(diff))))
    return QuadraticReport(
        case=case,
        p=p,
        chain=tuple(chain),
        outcome=outcome,
        difference=diff,
        norm=int(quad_norm(diff)),
        norm_factorization=fac,
        divisible=divisible,
    )


def run_case(name: str, ds: Dataset) -> Union[CongruenceReport, QuadraticReport]:
    case = load_cases()[name]
    if case.shape == "so43_quadratic":
        return check_quadratic(case, ds)
    return check(case, ds)
