"""Aggregated reproduction reports: the congruence suites, the triple-product
critical-value sweep, and the (data-starved) genus-2/genus-1 case."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional

from mpmath import mpf, workdps
from mpmath import fabs as mp_abs

from . import afe, congruence, lalg, lfunc
from .dataset import DataMissError, Dataset


@dataclass
class ReportRow:
    label: str
    detail: str
    ok: Optional[bool]  # None marks a data miss rather than a failure


@dataclass
class Report:
    name: str
    rows: list[ReportRow] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def all_pass(self) -> bool:
        return all(r.ok for r in self.rows if r.ok is not None)

    @property
    def any_miss(self) -> bool:
        return any(r.ok is None for r in self.rows)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "all_pass": self.all_pass,
            "any_miss": self.any_miss,
            "seconds": round(self.seconds, 3),
            "rows": [
                {"label": r.label, "detail": r.detail, "ok": r.ok} for r in self.rows
            ],
        }

    def to_markdown(self) -> str:
        out = [f"# report: {self.name}", ""]
        out.append("| case | result | status |")
        out.append("|---|---|---|")
        for r in self.rows:
            badge = "pass" if r.ok else ("MISS" if r.ok is None else "FAIL")
            out.append(f"| {r.label} | {r.detail} | {badge} |")
        out.append("")
        out.append(f"_elapsed {self.seconds:.1f}s_")
        return "\n".join(out)


_SO43_CASES = (
    "so43_25_17_11_mod47",
    "so43_25_15_5_mod19",
    "so43_23_13_5_mod19",
    "so43_25_15_9_mod557",
    "so43_25_19_13_mod31",
)
_SO43_QUADRATIC = (
    "so43q_25_17_3_mod59",
    "so43q_25_17_7_mod1223",
    "so43q_25_19_5_mod103",
)
_SO44_CASES = (
    "so44_30_20_14_8_mod31",
    "so44_30_26_16_8_mod73",
    "so44_28_24_18_6_mod43",
    "so44_30_20_10_8_mod19",
    "so44_26_24_14_4_mod19",
)

# ordinarity and Tamagawa-bound side conditions quoted with the rank-4 cases
_SO44_SIDE_CONDITIONS = {
    "so44_30_20_14_8_mod31": {"f_weight": 20, "q": 31, "bound": (20, 18, 12, 22)},
    "so44_30_26_16_8_mod73": {"f_weight": 22, "q": 73, "bound": (22, 20, 12, 23)},
    "so44_28_24_18_6_mod43": {"f_weight": 22, "q": 43, "bound": (22, 18, 12, 23)},
    "so44_30_20_10_8_mod19": {"f_weight": 20, "q": 19, "bound": (20, 16, 12, 20)},
    "so44_26_24_14_4_mod19": {"f_weight": 20, "q": 19, "bound": (20, 16, 12, 20)},
}


def _congruence_rows(names, ds: Dataset) -> list[ReportRow]:
    rows = []
    cases = congruence.load_cases()
    for name in names:
        case = cases[name]
        try:
            if case.shape == "so43_quadratic":
                rep = congruence.check_quadratic(case, ds)
                detail = (
                    f"pair {rep.outcome.pair}, norm "
                    f"{rep.norm_factorization.marked(case.modulus)}"
                )
                rows.append(ReportRow(name, detail, rep.divisible))
            else:
                rep = congruence.check(case, ds)
                facs = ", ".join(
                    r.factorization.marked(case.modulus) if r.factorization else "0"
                    for r in rep.rows
                )
                rows.append(ReportRow(name, facs, rep.all_pass))
        except DataMissError as e:
            rows.append(ReportRow(name, f"data miss: {e.miss}", None))
    return rows


def so43_suite(ds: Dataset) -> Report:
    t0 = time.time()
    rep = Report("so43_suite")
    rep.rows = _congruence_rows(_SO43_CASES + _SO43_QUADRATIC, ds)
    rep.seconds = time.time() - t0
    return rep


def so44_suite(ds: Dataset) -> Report:
    t0 = time.time()
    rep = Report("so44_suite")
    rep.rows = _congruence_rows(_SO44_CASES, ds)
    from . import forms

    for name, cond in _SO44_SIDE_CONDITIONS.items():
        k1, k2, k3, tprime = cond["bound"]
        q = cond["q"]
        bound, ok = congruence.bound_check(k1, k2, k3, tprime, q)
        note = f"q={q} vs bound {bound}" + ("" if ok else " (bound not met; tested anyway)")
        rep.rows.append(ReportRow(f"{name}:bound", note, True))
        ordinary = forms.is_ordinary(cond["f_weight"], q)
        rep.rows.append(
            ReportRow(f"{name}:ordinary", f"f_{cond['f_weight']} at {q}", ordinary)
        )
    rep.seconds = time.time() - t0
    return rep


def harder41(ds: Dataset) -> Report:
    t0 = time.time()
    rep = Report("harder41")
    rep.rows = _congruence_rows(("harder_21_5_mod41",), ds)
    rep.seconds = time.time() - t0
    return rep


def appendix_sweep(
    digits: int = 11,
    rel_tol: str = "1e-8",
    weights_filter: Optional[tuple] = None,
    n_coeffs: Optional[int] = None,
) -> Report:
    """Check every consecutive critical-value ratio in the bundled tables
    against the numeric engine."""
    t0 = time.time()
    rep = Report("appendix_sweep")
    tol = mpf(rel_tol)
    for table in lalg.tables():
        if weights_filter and table.weights != tuple(sorted(weights_filter)):
            continue
        pairs = table.consecutive_pairs()
        if not pairs:
            rep.rows.append(
                ReportRow(f"Lalg{table.weights}", "no adjacent critical pairs", True)
            )
            continue
        k3, k2, k1 = table.weights
        spec = lfunc.triple_spec(k1, k2, k3)
        points = sorted({l for p in pairs for l in (p[0], p[1])})
        N = n_coeffs or afe.coeffs_required(spec, digits + 1)
        values = {
            pt: res
            for pt, res in zip(points, afe.evaluate_many(spec, points, digits=digits, N=N))
        }
        for l1, l2, v1, v2 in pairs:
            want = lfunc.alg_ratio_identity(l1, l2, (k1, k2, k3), v1, v2)
            with workdps(digits + 25):
                from mpmath import pi as mp_pi

                got = values[l1].value / (mp_pi ** (4 * (l1 - l2)) * values[l2].value)
                wantf = mpf(want.numerator) / want.denominator
                rel = mp_abs(got - wantf) / mp_abs(wantf)
            rep.rows.append(
                ReportRow(
                    f"Lalg{table.weights}:{l1}/{l2}",
                    f"ratio {float(got):.10g} vs exact {want} (rel {float(rel):.2e})",
                    bool(rel < tol),
                )
            )
    rep.seconds = time.time() - t0
    return rep


REPORTS = {
    "so43_suite": so43_suite,
    "so44_suite": so44_suite,
    "harder41": harder41,
}


def run_report(name: str, ds: Dataset) -> Report:
    if name == "appendix_sweep":
        return appendix_sweep()
    if name not in REPORTS:
        raise KeyError(f"unknown report {name!r}")
    return REPORTS[name](ds)
