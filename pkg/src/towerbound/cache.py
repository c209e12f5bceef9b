"""File cache for expensive exact counts.

One file per record. Values are decimal strings (or "a/b" for rationals);
a checksum line detects corruption, in which case the record is recomputed
and rewritten rather than trusted.
"""

from __future__ import annotations

import hashlib
import re
from pathlib import Path
from typing import Callable

FORMAT_LINE = "towerbound-cache v1"

_KEY_OK = re.compile(r"[^A-Za-z0-9._=-]+")


def _slug(key: str) -> str:
    digest = hashlib.sha256(key.encode()).hexdigest()[:16]
    head = _KEY_OK.sub("-", key)[:80].strip("-")
    return f"{head}.{digest}.txt"


def _checksum(body: str) -> str:
    return hashlib.sha256(body.encode()).hexdigest()


class Cache:
    def __init__(self, directory: str | Path):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)

    def _path(self, key: str) -> Path:
        return self.directory / _slug(key)

    def lookup(self, key: str) -> str | None:
        path = self._path(key)
        if not path.exists():
            return None
        try:
            lines = path.read_text().splitlines()
            if len(lines) != 4:
                return None
            fmt, stored_key, value, digest = lines
            body = "\n".join([fmt, stored_key, value]) + "\n"
            if fmt != FORMAT_LINE or stored_key != f"key: {key}":
                return None
            if digest != f"sha256: {_checksum(body)}":
                return None
            return value.removeprefix("value: ")
        except OSError:
            return None

    def store(self, key: str, value: str) -> None:
        body = f"{FORMAT_LINE}\nkey: {key}\nvalue: {value}\n"
        self._path(key).write_text(body + f"sha256: {_checksum(body)}\n")

    def get_or_compute(self, key: str, compute: Callable[[], int]) -> int:
        hit = self.lookup(key)
        if hit is not None:
            return int(hit)
        value = compute()
        self.store(key, str(value))
        return value
