"""Runtime of the filter against signal length."""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import ParameterError
from .filtering import ntewt_filter
from .fixedpoint import NtewtConfig, analyze
from .signal import Signal
from .spectral import WaveletParams

DEFAULT_LENGTHS = tuple(range(4, 1025, 2))
DEFAULT_REPS = 50
DEFAULT_WARMUP = 3


@dataclass(frozen=True)
class BenchRecord:
    n: int
    mean_runtime_s: float
    repetitions: int
    tfr_mean_runtime_s: float | None = None

    @property
    def max_realtime_fs_hz(self) -> float:
        """Highest sampling rate at which an ``n``-sample block is filtered in real time."""
        return self.n / self.mean_runtime_s


def _time(fn: Callable[[Signal], object], signals: Sequence[Signal], warmup: int) -> float:
    for x in signals[:1] * warmup:
        fn(x)
    total = 0.0
    for x in signals:
        t0 = time.perf_counter()
        fn(x)
        total += time.perf_counter() - t0
    return total / len(signals)


def run_speed_sweep(
    lengths: Iterable[int] = DEFAULT_LENGTHS,
    reps: int = DEFAULT_REPS,
    params: WaveletParams | None = None,
    cfg: NtewtConfig | None = None,
    seed: int = 0,
    warmup: int = DEFAULT_WARMUP,
    workers: int | None = None,
    with_tfr: bool = False,
    progress: Callable[[BenchRecord], None] | None = None,
) -> list[BenchRecord]:
    """Mean filter runtime for each length, over ``reps`` fresh random signals.

    Only the filter call is timed. ``with_tfr`` additionally times the
    analysis-only pass (transform, fixed points, reassignment; no synthesis).
    """
    params = params or WaveletParams()
    cfg = cfg or NtewtConfig()
    lengths = sorted(lengths)
    if reps < 1:
        raise ParameterError("reps must be >= 1")
    bad = [n for n in lengths if n < 4 or n % 2]
    if bad:
        raise ParameterError(f"lengths must be even and >= 4: {bad[:5]}")
    rng = np.random.default_rng(seed)
    records = []
    for n in lengths:
        signals = [Signal(rng.standard_normal(n), 180e3) for _ in range(reps)]
        mean = _time(lambda x: ntewt_filter(x, params, cfg, workers=workers), signals, warmup)
        tfr_mean = _time(lambda x: analyze(x, params, cfg, workers=workers), signals, warmup) if with_tfr else None
        rec = BenchRecord(n, mean, reps, tfr_mean)
        records.append(rec)
        if progress:
            progress(rec)
    return records


def loglog_slope(records: Sequence[BenchRecord], n_min: int = 128, n_max: int = 1024) -> float:
    """Least-squares slope of log(runtime) against log(n) within ``[n_min, n_max]``."""
    sel = [r for r in records if n_min <= r.n <= n_max]
    if len(sel) < 2:
        raise ParameterError("need at least two records in range for a slope")
    ns = np.log([r.n for r in sel])
    ts = np.log([r.mean_runtime_s for r in sel])
    return float(np.polyfit(ns, ts, 1)[0])


def runtime_inversions(records: Sequence[BenchRecord]) -> int:
    """Number of adjacent pairs whose runtime decreases as ``n`` grows."""
    t = [r.mean_runtime_s for r in records]
    return sum(1 for a, b in zip(t, t[1:]) if b < a)


CSV_HEADER = ("n", "mean_runtime_s", "max_realtime_fs_hz")


def csv_rows(records: Iterable[BenchRecord]) -> list[tuple[int, float, float]]:
    return [(r.n, r.mean_runtime_s, r.max_realtime_fs_hz) for r in records]
