"""Plain key=value configuration.

Recognised keys: guard (int), cache-dir (path, empty disables caching),
primes (comma-separated ints). Unknown keys are rejected so typos fail loud.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path

DEFAULT_GUARD = 2**28
DEFAULT_PRIMES = (3, 5, 7)


def default_cache_dir() -> Path:
    base = os.environ.get("XDG_CACHE_HOME")
    root = Path(base) if base else Path.home() / ".cache"
    return root / "towerbound"


@dataclass
class Config:
    guard: int = DEFAULT_GUARD
    cache_dir: Path | None = field(default_factory=default_cache_dir)
    primes: tuple[int, ...] = DEFAULT_PRIMES


def load_config(path: str | Path | None = None) -> Config:
    cfg = Config()
    if path is None:
        return cfg
    text = Path(path).read_text()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"config line {lineno}: expected key=value, got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key == "guard":
            cfg.guard = int(value)
        elif key == "cache-dir":
            cfg.cache_dir = Path(value).expanduser() if value else None
        elif key == "primes":
            cfg.primes = tuple(int(v) for v in value.split(",") if v.strip())
        else:
            raise ValueError(f"config line {lineno}: unknown key {key!r}")
    if cfg.guard < 1:
        raise ValueError("guard must be positive")
    return cfg
