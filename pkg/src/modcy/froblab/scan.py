"""Fibre scans, the point-count cache and moment sums."""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..errors import CacheCorrupt
from .families import Family, fibre_counts, get_family, singular_flags

HEADER = "family,p,param,count"


@dataclass(frozen=True)
class TraceRecord:
    param: str
    count: int
    trace: int
    singular: bool


@dataclass(frozen=True)
class TraceTable:
    family: str
    p: int
    records: tuple[TraceRecord, ...]

    def traces(self) -> list[int]:
        return [r.trace for r in self.records]

    def __len__(self) -> int:
        return len(self.records)

    def render(self) -> str:
        lines = [f"family {self.family}", f"p {self.p}", f"records {len(self.records)}",
                 "param count trace singular"]
        for r in self.records:
            lines.append(f"{r.param} {r.count} {r.trace} {'yes' if r.singular else 'no'}")
        return "\n".join(lines)


class CacheStore:
    """Append-only per-family files of fibre counts."""

    def __init__(self, directory):
        self.directory = Path(directory)

    def path(self, family: str) -> Path:
        return self.directory / f"{family}.csv"

    def load(self, family: str, p: int) -> dict[str, int]:
        path = self.path(family)
        if not path.exists():
            return {}
        text = path.read_text(encoding="utf-8")
        lines = text.split("\n")
        if lines[0] != HEADER:
            raise CacheCorrupt(f"{path}: bad header {lines[0]!r}")
        if lines[-1] != "":
            raise CacheCorrupt(f"{path}: truncated final record")
        out: dict[str, int] = {}
        for lineno, line in enumerate(lines[1:-1], start=2):
            fields = line.split(",")
            if len(fields) != 4:
                raise CacheCorrupt(f"{path}:{lineno}: expected 4 fields")
            fam, ps, param, cs = fields
            try:
                rp, count = int(ps), int(cs)
            except ValueError:
                raise CacheCorrupt(f"{path}:{lineno}: non-integer field") from None
            if fam != family or not param or count < 0:
                raise CacheCorrupt(f"{path}:{lineno}: malformed record")
            if rp != p:
                continue
            if out.get(param, count) != count:
                raise CacheCorrupt(f"{path}:{lineno}: conflicting counts for {param}")
            out[param] = count
        return out

    def append(self, family: str, p: int, items) -> None:
        self.directory.mkdir(parents=True, exist_ok=True)
        path = self.path(family)
        body = "".join(f"{family},{p},{param},{count}\n" for param, count in items)
        if not body:
            return
        fresh = not path.exists()
        with open(path, "a", encoding="utf-8") as fh:
            fh.write((HEADER + "\n" if fresh else "") + body)
            fh.flush()
            os.fsync(fh.fileno())


def scan(F: Family | str, p: int, cache: CacheStore | None = None) -> TraceTable:
    if isinstance(F, str):
        F = get_family(F)
    F.check_prime(p)
    params = F.parameters(p)
    keys = [F.param_key(row) for row in params]
    stored = cache.load(F.id, p) if cache is not None else {}
    if stored and set(stored) - set(keys):
        extra = sorted(set(stored) - set(keys))[0]
        raise CacheCorrupt(f"cached parameter {extra} is not a parameter of {F.id} mod {p}")
    if cache is not None and len(stored) == len(keys):
        counts = [stored[k] for k in keys]
    else:
        counts = [int(c) for c in fibre_counts(F, p, params)]
        for k, c in zip(keys, counts):
            if k in stored and stored[k] != c:
                raise CacheCorrupt(f"cached count for {k} disagrees with recomputation")
        if cache is not None:
            cache.append(F.id, p, [(k, c) for k, c in zip(keys, counts) if k not in stored])
    flags = singular_flags(F, p, params)
    records = tuple(TraceRecord(k, c, p + 1 - c, bool(s)) for k, c, s in zip(keys, counts, flags))
    return TraceTable(F.id, p, records)


@dataclass(frozen=True)
class MomentReport:
    family: str
    p: int
    r: int
    total: int
    smooth: int
    fibres: int
    singular_fibres: int

    def render(self) -> str:
        return (f"family {self.family} p {self.p} r {self.r} M_r {self.total} "
                f"M_r_smooth {self.smooth} fibres {self.fibres} singular {self.singular_fibres}")


def moment(T: TraceTable, r: int) -> MomentReport:
    if r < 1:
        raise ValueError("moment exponent must be positive")
    a = np.array([rec.trace for rec in T.records], dtype=object)
    sing = np.array([rec.singular for rec in T.records], dtype=bool)
    total = int(sum(a ** r)) if len(a) else 0
    smooth = int(sum(a[~sing] ** r)) if len(a) else 0
    return MomentReport(T.family, T.p, r, total, smooth, len(a), int(sing.sum()))


_TRACES: dict[tuple[str, int], list[int]] = {}


def moment_value(F: Family | str, p: int, r: int, cache: CacheStore | None = None) -> int:
    """M_r(p) for a family; traces are memoized per (family, p) within the process."""
    if r < 1:
        raise ValueError("moment exponent must be positive")
    fid = F if isinstance(F, str) else F.id
    key = (fid, p)
    if key not in _TRACES:
        _TRACES[key] = scan(fid, p, cache).traces()
    return sum(a ** r for a in _TRACES[key])
