"""On-disk cache of computed characters, one JSON file per (weight, method)."""

from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path

from .admissible import Weight
from .errors import CacheCorrupt, CacheMiss
from .series import TriGradedSeries

ENV_VAR = "FSCHAR_CACHE_DIR"


def _canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _digest(weight: Weight, method: str, series: dict) -> str:
    body = _canonical({"weight": list(weight.components), "method": method, "series": series})
    return "sha256:" + hashlib.sha256(body.encode()).hexdigest()


class SeriesCache:
    """A larger stored cutoff serves any smaller request by truncation."""

    def __init__(self, root: str | os.PathLike):
        self.root = Path(root)

    @classmethod
    def from_env(cls, flag: str | None = None) -> SeriesCache | None:
        path = flag or os.environ.get(ENV_VAR)
        return cls(path) if path else None

    def path_for(self, weight: Weight, method: str) -> Path:
        return self.root / f"{method}__{'-'.join(map(str, weight.components))}.json"

    def store(self, weight: Weight, method: str, series: TriGradedSeries) -> Path:
        path = self.path_for(weight, method)
        try:
            if self._read(path, weight, method).cutoff > series.cutoff:
                return path  # keep the more informative entry
        except (CacheMiss, CacheCorrupt):
            pass
        self.root.mkdir(parents=True, exist_ok=True)
        payload = series.to_dict()
        doc = {
            "weight": list(weight.components),
            "method": method,
            "digest": _digest(weight, method, payload),
            "series": payload,
        }
        tmp = path.with_suffix(".tmp")
        tmp.write_text(_canonical(doc) + "\n", encoding="utf-8")
        tmp.replace(path)
        return path

    def load(self, weight: Weight, method: str, cutoff: int) -> TriGradedSeries:
        series = self._read(self.path_for(weight, method), weight, method)
        if series.cutoff < cutoff:
            raise CacheMiss(f"cached {method} for ({weight}) only reaches q^{series.cutoff}, need q^{cutoff}")
        return series.truncate(cutoff)

    def _read(self, path: Path, weight: Weight, method: str) -> TriGradedSeries:
        if not path.exists():
            raise CacheMiss(f"no cache entry at {path}")
        try:
            doc = json.loads(path.read_text(encoding="utf-8"))
            payload = doc["series"]
            stored = doc["digest"]
        except (ValueError, KeyError, TypeError) as exc:
            raise CacheCorrupt(f"unreadable cache file {path}: {exc}") from exc
        if stored != _digest(weight, method, payload):
            raise CacheCorrupt(f"digest mismatch in {path}")
        try:
            return TriGradedSeries.from_dict(payload)
        except (ValueError, KeyError, TypeError) as exc:
            raise CacheCorrupt(f"malformed series in {path}: {exc}") from exc
