"""Bundled tables of normalized triple-product critical values.

Twenty weight-triples from the one-dimensional cusp weights, each with its
critical points and the published normalized value L_alg(l) = completed
value over the product of Petersson norms.  The table entries are unsigned
(consecutive values share a sign), so ratios of consecutive rows are the
quantities verified against the numeric engine.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources


@dataclass(frozen=True)
class LalgTable:
    weights: tuple[int, int, int]  # ascending
    rows: tuple[tuple[int, int, Fraction], ...]  # (r, l, value)

    def consecutive_pairs(self):
        """(l1, l2, lalg_l1, lalg_l2) for adjacent critical points, skipping
        vanishing entries."""
        out = []
        for (r1, l1, v1), (r2, l2, v2) in zip(self.rows[1:], self.rows):
            if l1 == l2 + 1 and v1 != 0 and v2 != 0:
                out.append((l1, l2, v1, v2))
        return out


_FACTOR = re.compile(r"^(\d+)(?:\^(\d+))?$")


def parse_factored(s: str) -> Fraction:
    """Parse "2^54*3*5*19/(13*17)" into an exact rational."""
    s = s.strip().replace(" ", "")
    if s == "0":
        return Fraction(0)
    if "/" in s:
        num_s, den_s = s.split("/")
        den_s = den_s.strip("()")
    else:
        num_s, den_s = s, "1"

    def side(text: str) -> Fraction:
        out = Fraction(1)
        for part in text.split("*"):
            m = _FACTOR.match(part)
            if not m:
                raise ValueError(f"bad factor {part!r} in {s!r}")
            base = int(m.group(1))
            exp = int(m.group(2) or 1)
            out *= Fraction(base) ** exp
        return out

    return side(num_s) / side(den_s)


def tables() -> list[LalgTable]:
    raw = json.loads(
        resources.files("eiscong.data").joinpath("triple_lalg_tables.json").read_text()
    )
    out = []
    for obj in raw:
        rows = tuple((r, l, parse_factored(v)) for r, l, v in obj["rows"])
        out.append(LalgTable(weights=tuple(obj["weights"]), rows=rows))
    return out


def table_for(weights) -> LalgTable:
    key = tuple(sorted(weights))
    for t in tables():
        if t.weights == key:
            return t
    raise KeyError(f"no bundled table for weights {key}")
