"""On-disk cache of serialized series keyed by the canonical product spec."""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path

from .qproducts import ProductSpec
from .series import TruncatedSeries

CACHE_ENV = "QBORWEIN_CACHE_DIR"
CACHE_FORMAT_VERSION = 1


def cache_key(spec: ProductSpec) -> str:
    payload = json.dumps(
        {"format": CACHE_FORMAT_VERSION, "spec": spec.to_json()},
        sort_keys=True,
        separators=(",", ":"),
    )
    return hashlib.sha256(payload.encode()).hexdigest()


class SeriesCache:
    def __init__(self, root: str | os.PathLike):
        self.root = Path(root)

    def path_for(self, spec: ProductSpec) -> Path:
        return self.root / f"{cache_key(spec)}.json"

    def get(self, spec: ProductSpec) -> TruncatedSeries | None:
        path = self.path_for(spec)
        try:
            with open(path) as fh:
                obj = json.load(fh)
        except (FileNotFoundError, json.JSONDecodeError):
            return None
        if obj.get("spec") != spec.to_json():
            return None
        return TruncatedSeries.from_json(obj["series"])

    def put(self, spec: ProductSpec, series: TruncatedSeries) -> Path:
        self.root.mkdir(parents=True, exist_ok=True)
        path = self.path_for(spec)
        body = json.dumps({"spec": spec.to_json(), "series": series.to_json()}, sort_keys=True)
        # write-then-rename so concurrent readers never see a partial file
        fd, tmp = tempfile.mkstemp(dir=self.root, prefix=".tmp-", suffix=".json")
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write(body)
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
        return path

    def get_or_build(self, spec: ProductSpec, build) -> TruncatedSeries:
        cached = self.get(spec)
        if cached is not None:
            return cached
        series = build(spec)
        self.put(spec, series)
        return series


def cache_from_option(path: str | None) -> SeriesCache | None:
    path = path or os.environ.get(CACHE_ENV)
    return SeriesCache(path) if path else None
