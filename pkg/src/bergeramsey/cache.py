"""On-disk result cache: one JSON file per key, written atomically."""

from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
import time
from pathlib import Path
from typing import Optional

from . import __version__

log = logging.getLogger(__name__)

ENV_VAR = "BERGERAMSEY_CACHE_DIR"
DEFAULT_DIR = ".berge-cache"


def default_dir() -> Path:
    return Path(os.environ.get(ENV_VAR) or DEFAULT_DIR)


class Cache:
    """Records are ``{key, value, version, timestamp}``.

    An unusable directory disables the cache with a warning; a record that
    fails to parse, or whose key does not match, is ignored with a warning.
    """

    def __init__(self, directory: Optional[os.PathLike] = None, enabled: bool = True):
        self.directory = Path(directory) if directory is not None else default_dir()
        self.enabled = enabled
        if enabled:
            try:
                self.directory.mkdir(parents=True, exist_ok=True)
                probe = tempfile.NamedTemporaryFile(dir=self.directory, delete=True)
                probe.close()
            except OSError as exc:
                log.warning("cache disabled: %s is not writable (%s)", self.directory, exc)
                self.enabled = False

    def path_for(self, key: dict) -> Path:
        digest = hashlib.sha256(json.dumps(key, sort_keys=True).encode()).hexdigest()[:32]
        return self.directory / f"{key.get('op', 'result')}-{digest}.json"

    def get(self, key: dict) -> Optional[dict]:
        if not self.enabled:
            return None
        path = self.path_for(key)
        try:
            with open(path, encoding="utf-8") as fh:
                rec = json.load(fh)
        except FileNotFoundError:
            return None
        except (OSError, ValueError) as exc:
            log.warning("ignoring corrupted cache record %s (%s)", path, exc)
            return None
        if not isinstance(rec, dict) or rec.get("key") != key or "value" not in rec:
            log.warning("ignoring corrupted cache record %s (key mismatch)", path)
            return None
        return rec

    def put(self, key: dict, value) -> Optional[dict]:
        if not self.enabled:
            return None
        rec = {"key": key, "value": value, "version": __version__, "timestamp": time.time()}
        path = self.path_for(key)
        try:
            fd, tmp = tempfile.mkstemp(dir=self.directory, prefix=".tmp-", suffix=".json")
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                json.dump(rec, fh, sort_keys=True)
            os.replace(tmp, path)
        except OSError as exc:
            log.warning("could not write cache record %s (%s)", path, exc)
            return None
        return rec
