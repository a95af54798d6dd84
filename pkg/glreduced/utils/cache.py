"""
Content-addressed result cache.

Entries live under <cache_dir>/<kind>/<sha256>.npz and hold the arrays of a
result plus its JSON metadata. Writes go through a temporary file and
os.replace, so concurrent readers never see a partial entry.
"""

import hashlib
import json
import logging
import os
import tempfile
from pathlib import Path
from typing import Any, Callable, Dict, Optional, Tuple

import numpy as np

from ..errors import CorruptCacheEntry
from ..schemas import ComplexField, Grid, MinResult, Spectrum

logger = logging.getLogger(__name__)


def cache_key(kind: str, params: Dict[str, Any]) -> str:
    """sha256 of the canonical JSON of (kind, params)"""
    canonical = json.dumps({"kind": kind, "params": params}, sort_keys=True, separators=(",", ":"), default=str)
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def _encode_min_result(result: MinResult) -> Tuple[Dict[str, np.ndarray], Dict[str, Any]]:
    meta = {"result": result.model_dump(mode="json"), "grid": result.field.grid.model_dump(mode="json")}
    return {"values": result.field.values}, meta


def _decode_min_result(arrays: Dict[str, np.ndarray], meta: Dict[str, Any]) -> MinResult:
    grid = Grid.model_validate(meta["grid"])
    field = ComplexField(grid=grid, values=arrays["values"])
    return MinResult.model_validate({**meta["result"], "field": field})


def _encode_spectrum(spectrum: Spectrum) -> Tuple[Dict[str, np.ndarray], Dict[str, Any]]:
    arrays = {} if spectrum.vectors is None else {"vectors": spectrum.vectors}
    return arrays, {"result": spectrum.model_dump(mode="json")}


def _decode_spectrum(arrays: Dict[str, np.ndarray], meta: Dict[str, Any]) -> Spectrum:
    return Spectrum.model_validate({**meta["result"], "vectors": arrays.get("vectors")})


CODECS = {
    MinResult: (_encode_min_result, _decode_min_result),
    Spectrum: (_encode_spectrum, _decode_spectrum),
}


class ResultCache:
    """Disk cache for MinResult and Spectrum values keyed by their parameters"""

    def __init__(self, cache_dir, enabled: bool = True):
        self.cache_dir = Path(cache_dir)
        self.enabled = enabled
        self.hits = 0
        self.misses = 0

    def _path(self, kind: str, key: str) -> Path:
        return self.cache_dir / kind / f"{key}.npz"

    def lookup(self, kind: str, params: Dict[str, Any], result_type: type):
        """The cached value, or None when absent. Corrupt entries are evicted."""
        if not self.enabled:
            return None
        path = self._path(kind, cache_key(kind, params))
        if not path.exists():
            return None
        try:
            value = self._read(path, result_type)
        except CorruptCacheEntry as exc:
            logger.warning("%s; evicting and recomputing", exc)
            path.unlink(missing_ok=True)
            return None
        self.hits += 1
        logger.debug("cache hit %s", path.name)
        return value

    def store(self, kind: str, params: Dict[str, Any], value) -> Optional[Path]:
        if not self.enabled:
            return None
        encode, _ = CODECS[type(value)]
        arrays, meta = encode(value)
        path = self._path(kind, cache_key(kind, params))
        path.parent.mkdir(parents=True, exist_ok=True)

        fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
        try:
            with os.fdopen(fd, "wb") as handle:
                np.savez(handle, __meta__=np.array(json.dumps(meta)), **arrays)
            os.replace(tmp, path)
        except OSError:
            Path(tmp).unlink(missing_ok=True)
            raise
        return path

    def get_or_compute(self, kind: str, params: Dict[str, Any], result_type: type, compute: Callable[[], Any]):
        value = self.lookup(kind, params, result_type)
        if value is not None:
            return value
        self.misses += 1
        value = compute()
        self.store(kind, params, value)
        return value

    @staticmethod
    def _read(path: Path, result_type: type):
        _, decode = CODECS[result_type]
        try:
            with np.load(path, allow_pickle=False) as data:
                arrays = {name: data[name] for name in data.files if name != "__meta__"}
                meta = json.loads(str(data["__meta__"]))
            return decode(arrays, meta)
        except Exception as exc:
            raise CorruptCacheEntry(f"unreadable cache entry {path}: {exc}") from exc
