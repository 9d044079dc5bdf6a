"""Disk cache for computed reports.

Reports are keyed by (group label, prime, seed, caps, package version) and
stored as JSON files under a cache directory (FUSIONSYS_CACHE_DIR or
~/.cache/fusionsys).  The dominant cost of repeated analyses is the fusion
construction, so caching the finished report captures it.
"""

from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path

from . import __version__


def default_cache_dir() -> Path:
    env = os.environ.get("FUSIONSYS_CACHE_DIR")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "fusionsys"


class ReportCache:
    def __init__(self, directory: Path | str | None = None, enabled: bool = True):
        self.directory = Path(directory) if directory else default_cache_dir()
        self.enabled = enabled

    def _path(self, label: str, p: int, options) -> Path:
        payload = {"label": label, "prime": p, "version": __version__}
        payload.update(options.cache_key_fields())
        digest = hashlib.sha256(
            json.dumps(payload, sort_keys=True).encode()).hexdigest()[:24]
        return self.directory / f"report-{digest}.json"

    def load(self, label: str, p: int, options) -> dict | None:
        if not self.enabled:
            return None
        path = self._path(label, p, options)
        if not path.exists():
            return None
        try:
            with open(path) as fh:
                return json.load(fh)
        except (OSError, json.JSONDecodeError):
            return None

    def store(self, label: str, p: int, options, report: dict) -> None:
        if not self.enabled:
            return
        self.directory.mkdir(parents=True, exist_ok=True)
        path = self._path(label, p, options)
        tmp = path.with_suffix(".tmp")
        with open(tmp, "w") as fh:
            json.dump(report, fh, sort_keys=True, indent=1)
        os.replace(tmp, path)
