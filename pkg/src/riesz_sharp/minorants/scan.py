from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from ..params import ParamSpace
from .pointwise import TWO_PI, _phi3, _phi4

THREADS_ENV = "RIESZ_SHARP_THREADS"
DEFAULT_TOL = 1e-9

FIELDS = {
    "lemma31-reduced": "eq3",
    "lemma32-reduced": "eq4",
    "eq3": "eq3",
    "eq4": "eq4",
}


@dataclass(frozen=True)
class ScanReport:
    field: str
    rectangle: tuple[float, float, float, float]
    resolution: tuple[int, int]
    max_gap: float
    argmax: tuple[float, float]
    tolerance: float
    passed: bool
    in_regime: bool

    def to_dict(self) -> dict:
        d = asdict(self)
        d["rectangle"] = list(self.rectangle)
        d["resolution"] = list(self.resolution)
        d["argmax"] = list(self.argmax)
        return d


def thread_count() -> int:
    cap = os.environ.get(THREADS_ENV)
    n = os.cpu_count() or 1
    if cap:
        try:
            n = min(n, max(1, int(cap)))
        except ValueError:
            raise ValueError(f"{THREADS_ENV} must be an integer, got {cap!r}") from None
    return n


def cell_centres(lo: float, hi: float, n: int) -> np.ndarray:
    """n midpoints of a uniform partition; keeps nodes off removable singular edges."""
    return lo + (np.arange(n) + 0.5) * ((hi - lo) / n)


def _band_max(fn, r, t, lo: int, hi: int):
    vals = fn(r[lo:hi, None], t[None, :])
    k = int(np.argmax(vals))
    return float(vals.flat[k]), lo * t.size + k


def grid_max(fn, r: np.ndarray, t: np.ndarray, threads: int | None = None, band: int = 64):
    """Max and flat argmax of fn over the outer grid r x t, split into row bands.

    Ties go to the smallest flat index, so the result does not depend on the
    number of threads.
    """
    threads = threads or thread_count()
    bands = [(lo, min(lo + band, r.size)) for lo in range(0, r.size, band)]
    if threads == 1 or len(bands) == 1:
        results = [_band_max(fn, r, t, lo, hi) for lo, hi in bands]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda b: _band_max(fn, r, t, *b), bands))
    # a NaN anywhere must surface as the maximum, never be skipped
    key = lambda vi: (-math.inf if math.isnan(vi[0]) else -vi[0], vi[1])
    return min(results, key=key)


def scan(field: str, ps: ParamSpace, resolution: tuple[int, int] = (2000, 2000),
         tolerance: float = DEFAULT_TOL, threads: int | None = None) -> ScanReport:
    """Maximise a reduced gap over its canonical rectangle on a cell-centred grid."""
    try:
        kind = FIELDS[field]
    except KeyError:
        raise ValueError(f"unknown field {field!r}; choose from {sorted(FIELDS)}") from None
    n_r, n_t = resolution
    if n_r < 2 or n_t < 2:
        raise ValueError("resolution must be at least 2x2")
    if not tolerance > 0:
        raise ValueError("tolerance must be positive")
    p, s = ps.p, ps.s
    if kind == "eq3":
        if not 1 < p <= 2:
            raise ValueError("the small-p reduced gap needs 1 < p <= 2")
        rect = (0.0, 1.0, 0.0, math.pi)
        fn = lambda r, t: _phi3(r, t, p, s)
        in_regime = ps.in_regime1
    else:
        if not p > 2:
            raise ValueError("the large-p reduced gap needs p > 2")
        rect = (0.0, 1.0, 0.0, TWO_PI)
        fn = lambda r, t: _phi4(r, t, p)
        in_regime = p >= 9
    r = cell_centres(rect[0], rect[1], n_r)
    t = cell_centres(rect[2], rect[3], n_t)
    val, idx = grid_max(fn, r, t, threads)
    i, j = divmod(idx, n_t)
    return ScanReport(
        field=kind,
        rectangle=rect,
        resolution=(n_r, n_t),
        max_gap=val,
        argmax=(float(r[i]), float(t[j])),
        tolerance=tolerance,
        passed=bool(val <= tolerance),
        in_regime=in_regime,
    )
