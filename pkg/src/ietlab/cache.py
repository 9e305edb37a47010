"""On-disk result cache with checksums and atomic writes."""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

SCHEMA_VERSION = 1

ENV_CACHE_DIR = "IETLAB_CACHE"


def checksum(payload) -> str:
    canonical = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class CacheEntry:
    kind: str
    params: dict
    payload: dict

    @property
    def key(self) -> tuple:
        return (self.kind, tuple(sorted(self.params.items())), SCHEMA_VERSION)

    def document(self) -> dict:
        return {
            "kind": self.kind,
            "params": self.params,
            "schema": SCHEMA_VERSION,
            "checksum": checksum(self.payload),
            "payload": self.payload,
        }


class ResultCache:
    """Directory of JSON documents keyed by (kind, params, schema version).

    Writes go to a temporary file first and are renamed into place, so
    parallel invocations never observe a torn entry.  Entries with a stale
    schema version or a wrong checksum are ignored.
    """

    def __init__(self, root: os.PathLike | str):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)

    def _path(self, kind: str, params: dict) -> Path:
        tag = "-".join(f"{k}{params[k]}" for k in sorted(params))
        name = f"{kind}-{tag}-v{SCHEMA_VERSION}.json" if tag else f"{kind}-v{SCHEMA_VERSION}.json"
        return self.root / name

    def load(self, kind: str, **params) -> Optional[dict]:
        path = self._path(kind, params)
        try:
            doc = json.loads(path.read_text())
        except (OSError, ValueError):
            return None
        if doc.get("schema") != SCHEMA_VERSION or doc.get("params") != params:
            return None
        payload = doc.get("payload")
        if payload is None or doc.get("checksum") != checksum(payload):
            return None
        return payload

    def store(self, kind: str, payload: dict, **params) -> Path:
        path = self._path(kind, params)
        doc = CacheEntry(kind, params, payload).document()
        fd, tmp = tempfile.mkstemp(dir=self.root, suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as handle:
                json.dump(doc, handle, indent=2)
                handle.write("\n")
            os.replace(tmp, path)
        except BaseException:
            try:
                os.unlink(tmp)
            except OSError:
                pass
            raise
        return path


def cache_from_env(flag_value: Optional[str]) -> Optional[ResultCache]:
    """Cache directory from the CLI flag, else the environment, else None."""
    root = flag_value or os.environ.get(ENV_CACHE_DIR)
    return ResultCache(root) if root else None
