"""Run configuration: defaults, a strict `key = value` file format, CLI overrides."""

from __future__ import annotations

import re
from dataclasses import dataclass, fields, replace
from pathlib import Path

from .field import Poly, check_prime, parse_poly


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    q: int = 3
    modulus: str = "t^2+1"
    char_index: int | None = None  # None means every character
    n_range: tuple[int, int, int] = (2, 12, 1)  # start, stop (inclusive), step
    k_mode: str = "fixed:2"
    method: str = "analytic"
    output: str | None = None
    fmt: str = "csv"
    enum_cap: int = 2**24
    n_cap: int = 300
    cutoff: int = 12
    rh_tol: float = 1e-9
    cluster_radius: float = 1e-7

    def __post_init__(self) -> None:
        check_prime(self.q)
        d = self.poly()
        if not d.is_monic() or d.degree < 1:
            raise ConfigError(f"modulus {self.modulus!r} must be monic of degree >= 1")
        a, b, s = self.n_range
        if s <= 0 or a > b:
            raise ConfigError(f"empty n-range {a}:{b}:{s}")
        for name in ("enum_cap", "n_cap", "cutoff"):
            if getattr(self, name) <= 0:
                raise ConfigError(f"{name.replace('_', '-')} must be positive")
        for name in ("rh_tol", "cluster_radius"):
            if not getattr(self, name) > 0:
                raise ConfigError(f"{name.replace('_', '-')} must be positive")
        if self.method not in ("analytic", "enumerate"):
            raise ConfigError(f"unknown method {self.method!r}")
        if self.fmt not in ("csv", "json"):
            raise ConfigError(f"unknown format {self.fmt!r}")
        parse_k_mode(self.k_mode)

    def poly(self) -> Poly:
        try:
            return parse_poly(self.modulus, self.q)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None

    def ns(self) -> list[int]:
        a, b, s = self.n_range
        return list(range(a, b + 1, s))


def parse_range(text: str) -> tuple[int, int, int]:
    parts = text.split(":")
    if len(parts) not in (2, 3) or not all(re.fullmatch(r"-?\d+", p.strip()) for p in parts):
        raise ConfigError(f"bad range {text!r}: expected a:b or a:b:step")
    vals = [int(p) for p in parts] + ([1] if len(parts) == 2 else [])
    return vals[0], vals[1], vals[2]


def parse_k_mode(text: str) -> tuple[str, float]:
    kind, _, val = text.partition(":")
    try:
        x = float(val)
    except ValueError:
        raise ConfigError(f"bad k-mode {text!r}") from None
    if kind == "fixed" and x >= 1 and x == int(x):
        return kind, int(x)
    if kind == "scaled" and x > 0:
        return kind, x
    raise ConfigError(f"bad k-mode {text!r}: expected fixed:<k> or scaled:<alpha>")


def _int(text: str) -> int:
    m = re.fullmatch(r"\s*(\d+)\s*(?:\^\s*(\d+))?\s*", text)
    if not m:
        raise ValueError(f"not an integer: {text!r}")
    return int(m[1]) ** int(m[2]) if m[2] else int(m[1])


def _char(text: str) -> int | None:
    return None if text.strip() == "all" else _int(text)


_KEYS = {
    "q": ("q", _int),
    "modulus": ("modulus", str.strip),
    "char-index": ("char_index", _char),
    "n-range": ("n_range", parse_range),
    "k-mode": ("k_mode", str.strip),
    "method": ("method", str.strip),
    "output": ("output", str.strip),
    "format": ("fmt", str.strip),
    "enum-cap": ("enum_cap", _int),
    "n-cap": ("n_cap", _int),
    "cutoff": ("cutoff", _int),
    "rh-tol": ("rh_tol", float),
    "cluster-radius": ("cluster_radius", float),
}


def parse_config_text(text: str, source: str = "<config>") -> dict:
    out = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value'")
        key, _, value = (s.strip() for s in line.partition("="))
        key = key.replace("_", "-")
        if key not in _KEYS:
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r}")
        if not value:
            raise ConfigError(f"{source}:{lineno}: missing value for {key!r}")
        name, conv = _KEYS[key]
        try:
            out[name] = conv(value)
        except (ValueError, ConfigError) as exc:
            raise ConfigError(f"{source}:{lineno}: {exc}") from None
    return out


def load_config(path: str | Path, **overrides) -> RunConfig:
    """Read a config file; keyword overrides (e.g. from flags) win over file values."""
    p = Path(path)
    values = parse_config_text(p.read_text(), str(p))
    values.update({k: v for k, v in overrides.items() if v is not None})
    try:
        return RunConfig(**values)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def with_overrides(cfg: RunConfig, **overrides) -> RunConfig:
    known = {f.name for f in fields(RunConfig)}
    return replace(cfg, **{k: v for k, v in overrides.items() if k in known and v is not None})
