"""Persistent atom-set cache keyed by (group, support, cap).

Entries are canonical JSON files written with atomic replace, so concurrent
readers are safe and writers serialize per key.  A cache hit deserializes
to exactly what recomputation would produce; corrupt or version-mismatched
entries count as misses and are overwritten.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
from pathlib import Path

from .zerosum import AtomSet, Support

FORMAT_VERSION = 1

log = logging.getLogger(__name__)


def canonical_json(payload) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


class AtomCache:
    def __init__(self, directory):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)

    def _path(self, support: Support, cap: int | None) -> Path:
        key = canonical_json(
            {
                "group": support.group.spec_string(),
                "support": [e.literal() for e in support.elements],
                "cap": cap,
            }
        )
        digest = hashlib.sha256(key.encode()).hexdigest()[:32]
        return self.directory / f"atoms-{digest}.json"

    def get(self, support: Support, cap: int | None) -> AtomSet | None:
        path = self._path(support, cap)
        try:
            payload = json.loads(path.read_text())
        except FileNotFoundError:
            return None
        except (OSError, json.JSONDecodeError, UnicodeDecodeError):
            log.warning("discarding corrupt cache entry %s", path)
            return None
        if payload.get("format_version") != FORMAT_VERSION:
            return None
        try:
            return AtomSet.from_json_dict(payload["atoms"])
        except Exception:
            log.warning("discarding unreadable cache entry %s", path)
            return None

    def put(self, support: Support, cap: int | None, atom_set: AtomSet) -> None:
        path = self._path(support, cap)
        payload = {"format_version": FORMAT_VERSION, "atoms": atom_set.to_json_dict()}
        fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as handle:
                handle.write(canonical_json(payload))
            os.replace(tmp, path)
        except BaseException:
            try:
                os.unlink(tmp)
            except OSError:
                pass
            raise

    def entries(self) -> list[Path]:
        return sorted(self.directory.glob("atoms-*.json"))

    def total_bytes(self) -> int:
        return sum(p.stat().st_size for p in self.entries())

    def clear(self) -> int:
        removed = 0
        for p in self.entries():
            p.unlink()
            removed += 1
        return removed
