"""Flat key=value configuration.

One key per line, ``#`` starts a comment. Unknown keys are rejected so that a
typo cannot silently fall back to a default. Environment variables are never
consulted.
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields, replace
from pathlib import Path

from ..froblab.pinned import ACCEPTANCE

# moment suites: suite name -> family
MOMENT_SUITES = {
    "delta-birch": "level1_weierstrass",
    "level5-weight4": "level5_cubic",
    "level4-weight6": "level4_cubic",
    "level3-weight6": "level3_cubic",
    "level2-weight8": "level2_cubic",
}


class ConfigError(ValueError):
    pass


def _int_list(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.replace(" ", "").split(",") if x)


def _curve_list(text: str) -> tuple[tuple[int, int], ...]:
    out = []
    for item in text.replace(" ", "").split(";"):
        if item:
            a, b = item.split(",")
            out.append((int(a), int(b)))
    return tuple(out)


@dataclass(frozen=True)
class Config:
    cache_dir: str = ""
    hecke_prec: int = 1000
    shimura_limit: int = 500
    torsion_max_p: int = 50
    hasse_max_p: int = 31
    diagnostic_limit: int = 31
    kummer_max_p: int = 31
    kummer_curves: tuple[tuple[int, int], ...] = ((1, 1), (-1, 0), (0, 1), (2, 3))
    detcy_prime: int = 101
    detcy_trials: int = 100
    detcy_fibre_prime: int = 11
    detcy_fibres: int = 10
    seed: int = 20240601
    todd_max_m: int = 19
    todd_dual_max: int = 6
    # per moment suite: basis, fit primes and validation bound
    fit_basis: dict = field(default_factory=lambda: {f: tuple(v["basis"]) for f, v in ACCEPTANCE.items()})
    fit_primes: dict = field(default_factory=lambda: {f: v["fit"] for f, v in ACCEPTANCE.items()})
    validate_max: dict = field(default_factory=lambda: {f: v["validate"][1] for f, v in ACCEPTANCE.items()})

    @property
    def cache(self):
        from ..froblab.scan import CacheStore

        return CacheStore(self.cache_dir) if self.cache_dir else None


_SCALARS = {f.name: f for f in fields(Config) if f.name not in ("fit_basis", "fit_primes", "validate_max")}
_PER_FAMILY = {"fit_basis", "fit_primes", "validate_max"}


def _convert(name: str, raw: str):
    if name == "kummer_curves":
        return _curve_list(raw)
    if name == "cache_dir":
        return raw
    return int(raw)


def parse_config(text: str, base: Config | None = None) -> Config:
    cfg = base or Config()
    updates: dict = {}
    per_family = {k: dict(getattr(cfg, k)) for k in _PER_FAMILY}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key = value")
        key, raw = (s.strip() for s in line.split("=", 1))
        head, _, family = key.partition(".")
        try:
            if head in _PER_FAMILY and family:
                if family not in ACCEPTANCE:
                    raise ConfigError(f"line {lineno}: unknown family {family!r}")
                if head == "fit_basis":
                    value = tuple(s.strip() for s in raw.split(",") if s.strip())
                elif head == "fit_primes":
                    value = "first9" if raw == "first9" else _int_list(raw)
                else:
                    value = int(raw)
                per_family[head][family] = value
            elif key in _SCALARS:
                updates[key] = _convert(key, raw)
            else:
                raise ConfigError(f"line {lineno}: unknown key {key!r}")
        except ValueError as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(f"line {lineno}: bad value for {key}: {raw!r}") from None
    return replace(cfg, **updates, **per_family)


def load_config(path: str | Path | None) -> Config:
    if path is None:
        return Config()
    return parse_config(Path(path).read_text(encoding="utf-8"))
