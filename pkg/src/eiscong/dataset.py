"""Registry of externally computed Hecke data.

Genus-2 spinor eigenvalues, orthogonal-group traces and composite endoscopic
values are bundled from published tables; users can merge further JSON-lines
files (one record per line, big integers as decimal strings):

    {"space": "D25_17", "op": "T(p)", "n": 2, "value": "3600", "src": "..."}

Space labels: "D25_17" (genus-2, infinitesimal character (25/2, 17/2)),
"D17" (genus-1), "D25_9sq" (a 2-dimensional genus-2 space, trace-level data),
"so7:25,17,11" / "so8:30,20,14,8" (compact-form algebraic modular forms).

Operators: "T(p)" eigenvalue, "T(p^2)" eigenvalue at a prime square (user
data only), "trT(p)" trace, "trT(p^2)" trace of T(p^2), "T(p,p)" trace of
the second generator, "trT(p^2_derived)" the trace of T(p)^2 obtained from
the quadratic Hecke relation, "composite" a quoted endoscopic combination.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable, Optional, Union

OPERATORS = (
    "T(p)",
    "T(p^2)",
    "T(p,p)",
    "trT(p)",
    "trT(p^2)",
    "trT(p^2_derived)",
    "composite",
)


class DatasetError(Exception):
    pass


class ConflictError(DatasetError):
    """Two sources disagree on the same (space, operator, index)."""


class DataMissError(DatasetError):
    """A required record is absent; carries the typed miss."""

    def __init__(self, miss: "Miss"):
        self.miss = miss
        super().__init__(f"no record for {miss.space} {miss.op} n={miss.n}")


@dataclass(frozen=True)
class Miss:
    """Typed lookup miss (never silently 0)."""

    space: str
    op: str
    n: int


@dataclass(frozen=True)
class HeckeRecord:
    space: str
    op: str
    n: int
    value: int
    src: str


def _parse_line(line: str, path: str, lineno: int) -> HeckeRecord:
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as e:
        raise DatasetError(f"{path}:{lineno}: malformed JSON: {e}") from None
    for key in ("space", "op", "n", "value", "src"):
        if key not in obj:
            raise DatasetError(f"{path}:{lineno}: missing field {key!r}")
    if obj["op"] not in OPERATORS:
        raise DatasetError(f"{path}:{lineno}: unknown operator {obj['op']!r}")
    if not obj["src"]:
        raise DatasetError(f"{path}:{lineno}: empty provenance")
    raw = obj["value"]
    if isinstance(raw, str):
        stripped = raw.lstrip("-")
        if not stripped.isdigit():
            raise DatasetError(f"{path}:{lineno}: non-integer value {raw!r}")
        value = int(raw)
    elif isinstance(raw, int):
        value = raw
    else:
        raise DatasetError(f"{path}:{lineno}: non-integer value {raw!r}")
    return HeckeRecord(obj["space"], obj["op"], int(obj["n"]), value, obj["src"])


class Dataset:
    """Immutable-after-load keyed collection of Hecke records."""

    def __init__(self):
        self._records: dict[tuple[str, str, int], HeckeRecord] = {}
        self.manifest: dict[str, str] = {}

    def _add(self, rec: HeckeRecord):
        key = (rec.space, rec.op, rec.n)
        old = self._records.get(key)
        if old is not None and old.value != rec.value:
            raise ConflictError(
                f"conflicting values for {key}: {old.value} ({old.src}) vs {rec.value} ({rec.src})"
            )
        if old is None:
            self._records[key] = rec

    def query(self, space: str, op: str, n: int) -> Union[int, Miss]:
        rec = self._records.get((space, op, n))
        return rec.value if rec is not None else Miss(space, op, n)

    def require(self, space: str, op: str, n: int) -> int:
        v = self.query(space, op, n)
        if isinstance(v, Miss):
            raise DataMissError(v)
        return v

    def record(self, space: str, op: str, n: int) -> Optional[HeckeRecord]:
        return self._records.get((space, op, n))

    def records(self) -> list[HeckeRecord]:
        return sorted(self._records.values(), key=lambda r: (r.space, r.op, r.n))

    def spaces(self) -> list[str]:
        return sorted({r.space for r in self._records.values()})

    def __len__(self):
        return len(self._records)

    def lambda_source(self, space: str) -> dict:
        """Spinor eigenvalue data for a genus-2 space.

        Returns {"p": {p: lambda_p}, "p2": {p: lambda_{p^2}}}; either map may
        be partial, and the L-series machinery degrades to envelope bounds
        where entries are missing.
        """
        lam_p, lam_p2 = {}, {}
        for rec in self._records.values():
            if rec.space != space:
                continue
            if rec.op == "T(p)":
                lam_p[rec.n] = rec.value
            elif rec.op == "T(p^2)":
                p = round(rec.n ** 0.5)
                if p * p != rec.n:
                    raise DatasetError(f"T(p^2) record with non-square index {rec.n}")
                lam_p2[p] = rec.value
        return {"p": lam_p, "p2": lam_p2}


def load(paths: Iterable[Union[str, Path]]) -> Dataset:
    """Load and merge JSON-lines files; conflicting duplicates are an error."""
    ds = Dataset()
    for path in paths:
        p = Path(path)
        data = p.read_text()
        ds.manifest[str(p)] = hashlib.sha256(data.encode()).hexdigest()
        for i, line in enumerate(data.splitlines(), start=1):
            if not line.strip():
                continue
            ds._add(_parse_line(line, str(p), i))
    return ds


def merge(base: Dataset, extra: Dataset) -> Dataset:
    out = Dataset()
    out.manifest.update(base.manifest)
    out.manifest.update(extra.manifest)
    for rec in base.records():
        out._add(rec)
    for rec in extra.records():
        out._add(rec)
    return out


def bundled() -> Dataset:
    """The packaged registry of published table values."""
    ref = resources.files("eiscong.data").joinpath("hecke_records.jsonl")
    ds = Dataset()
    data = ref.read_text()
    ds.manifest["bundled:hecke_records.jsonl"] = hashlib.sha256(data.encode()).hexdigest()
    for i, line in enumerate(data.splitlines(), start=1):
        if not line.strip():
            continue
        ds._add(_parse_line(line, "bundled", i))
    return ds
