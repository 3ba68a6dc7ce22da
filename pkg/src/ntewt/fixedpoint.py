"""Newton group-delay estimation and fixed-point reassignment.

For each time-frequency point the complex time operator

    t~ = b + a * W_t / W

is refined by one Newton step on ``b - t~(b) = 0``::

    t_bar = b - (b - t~) / (1 - d t~/db)

Points where ``|b - t_bar| < epsilon`` are fixed points; they trace the group
delay of chirp-like components. Reassignment keeps only those coefficients
and rescales every scale row back to its original two-norm.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .cwt import KernelBank, ScaleGrid, Tfr, TfrKind, map_row_blocks, row_blocks
from .errors import ParameterError
from .signal import Signal
from .spectral import WaveletParams


@dataclass(frozen=True)
class NtewtConfig:
    """Reassignment tolerance plus numerical guards.

    ``magnitude_guard`` is relative to each row's peak ``|W|``; ``denom_guard``
    is an absolute floor on ``|1 - d t~/db|``. ``metric`` selects the complex
    modulus of ``b - t_bar`` or the modulus of its real part.

    ``epsilon = inf`` switches thresholding off: reassignment then keeps every
    point, including guarded ones, and returns ``W`` unchanged.
    """

    epsilon: float = 1e-3
    magnitude_guard: float = 1e-12
    denom_guard: float = 1e-8
    metric: Literal["modulus", "real"] = "modulus"
    paper_derivative: bool = False
    paper_accumulation: bool = False

    def __post_init__(self) -> None:
        if not self.epsilon >= 0:
            raise ParameterError(f"epsilon must be >= 0, got {self.epsilon}")
        if not (self.magnitude_guard > 0 and self.denom_guard > 0):
            raise ParameterError("guards must be positive")
        if self.metric not in ("modulus", "real"):
            raise ParameterError(f"unknown metric {self.metric!r}")


@dataclass(frozen=True)
class ComplexTime:
    values: np.ndarray
    valid: np.ndarray


@dataclass(frozen=True)
class FixedPointField:
    """``|b[j] - t_bar[j,k]|`` per point; invalid points hold ``inf``."""

    metric: np.ndarray
    valid: np.ndarray
    grid: ScaleGrid

    def survivors(self, epsilon: float) -> np.ndarray:
        return self.valid & (self.metric < epsilon)


# -- array-level kernels, shared by the Tfr API and the fused filter --------


def _magnitude_ok(W: np.ndarray, guard: float) -> np.ndarray:
    mag = np.abs(W)
    peak = mag.max(axis=-1, keepdims=True)
    return (mag >= guard * peak) & (peak > 0)


def time_operator_rows(W: np.ndarray, Wt: np.ndarray, a: np.ndarray, b: np.ndarray, cfg: NtewtConfig) -> ComplexTime:
    valid = _magnitude_ok(W, cfg.magnitude_guard)
    safe_W = np.where(valid, W, 1.0)
    t = b + a * Wt / safe_W
    return ComplexTime(np.where(valid, t, b), valid)


def newton_rows(
    t_tilde: ComplexTime,
    dW: np.ndarray,
    dWt: np.ndarray,
    W: np.ndarray,
    Wt: np.ndarray,
    a: np.ndarray,
    b: np.ndarray,
    cfg: NtewtConfig,
) -> tuple[np.ndarray, np.ndarray]:
    valid = t_tilde.valid.copy()
    safe_W = np.where(valid, W, 1.0)
    # 1 - d(t~)/db, with (dWt*W - Wt*dW) / W^2 split to avoid squaring tiny
    # magnitudes; forming 1 + (...) first would cancel digits near fixed points
    denom = -a * (dWt / safe_W - (Wt / safe_W) * (dW / safe_W))
    valid &= np.abs(denom) >= cfg.denom_guard
    step = (b - t_tilde.values) / np.where(valid, denom, 1.0)
    # b - t_bar equals the Newton step itself
    diff = step if cfg.metric == "modulus" else step.real
    metric = np.where(valid, np.abs(diff), np.inf)
    return metric, valid


def keep_mask(metric: np.ndarray, valid: np.ndarray, epsilon: float) -> np.ndarray:
    if np.isinf(epsilon):
        return np.ones_like(valid)
    return valid & (metric < epsilon)


def reassign_rows(W: np.ndarray, keep: np.ndarray) -> np.ndarray:
    nte = np.where(keep, W, 0)
    full = np.linalg.norm(W, axis=-1)
    kept = np.linalg.norm(nte, axis=-1)
    scale = np.divide(full, kept, out=np.zeros_like(full), where=kept > 0)
    return nte * scale[:, None]


# -- public Tfr-level operations --------------------------------------------


def _check_same_grid(*tfrs: Tfr) -> None:
    shapes = {t.coeffs.shape for t in tfrs}
    if len(shapes) != 1:
        raise ParameterError(f"mismatched Tfr dimensions {sorted(shapes)}")


def complex_time_operator(W: Tfr, W_t: Tfr, grid: ScaleGrid, cfg: NtewtConfig) -> ComplexTime:
    """``b + a*W_t/W``; points where ``|W|`` fails the guard are marked invalid."""
    _check_same_grid(W, W_t)
    return time_operator_rows(W.coeffs, W_t.coeffs, grid.a[:, None], grid.b, cfg)


def newton_gd(
    t_tilde: ComplexTime,
    dbW: Tfr,
    dbW_t: Tfr,
    W: Tfr,
    W_t: Tfr,
    grid: ScaleGrid,
    cfg: NtewtConfig,
) -> FixedPointField:
    _check_same_grid(dbW, dbW_t, W, W_t)
    metric, valid = newton_rows(t_tilde, dbW.coeffs, dbW_t.coeffs, W.coeffs, W_t.coeffs, grid.a[:, None], grid.b, cfg)
    return FixedPointField(metric, valid, grid)


def reassign(W: Tfr, field: FixedPointField, cfg: NtewtConfig) -> Tfr:
    """Zero all but the fixed points, then restore each row's two-norm."""
    if field.metric.shape != W.coeffs.shape:
        raise ParameterError("field and Tfr dimensions differ")
    return Tfr(reassign_rows(W.coeffs, keep_mask(field.metric, field.valid, cfg.epsilon)), TfrKind.NTE, W.grid)


def export_fixed_point_log(field: FixedPointField, cap: float = 1.0) -> np.ndarray:
    """``log10`` of the metric, clipped to ``cap``; invalid points map to ``cap``.

    Exact zeros are floored at ``log10`` of the smallest normal double.
    """
    m = np.where(field.valid, np.maximum(field.metric, np.finfo(np.float64).tiny), 1.0)
    out = np.log10(m)
    out[~field.valid] = cap
    return np.minimum(out, cap)


@dataclass(frozen=True)
class Analysis:
    """Output of a full time-frequency analysis of one signal."""

    w: Tfr
    field: FixedPointField
    nte: Tfr
    runtime_s: float


def analyze(x: Signal, params: WaveletParams, cfg: NtewtConfig, workers: int | None = None) -> Analysis:
    """CWT, fixed-point field and reassigned representation in one row-wise pass."""
    start = time.perf_counter()
    grid = ScaleGrid.for_signal(x, params)
    x_hat = np.fft.fft(x.samples)
    W = np.empty((grid.n_scales, grid.n), dtype=np.complex128)
    metric = np.empty((grid.n_scales, grid.n))
    valid = np.empty((grid.n_scales, grid.n), dtype=bool)
    nte = np.empty_like(W)

    def run(rows: slice) -> None:
        bank = KernelBank.build(grid, params, rows, cfg.paper_derivative)
        w, m, v = field_block(x_hat, bank, grid, cfg)
        W[rows], metric[rows], valid[rows] = w, m, v
        nte[rows] = reassign_rows(w, keep_mask(m, v, cfg.epsilon))

    map_row_blocks(run, row_blocks(grid.n_scales, grid.n), workers)
    field = FixedPointField(metric, valid, grid)
    return Analysis(Tfr(W, TfrKind.W, grid), field, Tfr(nte, TfrKind.NTE, grid), time.perf_counter() - start)


def field_block(
    x_hat: np.ndarray, bank: KernelBank, grid: ScaleGrid, cfg: NtewtConfig
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    w = bank.transform(x_hat, TfrKind.W)
    wt = bank.transform(x_hat, TfrKind.W_TPSI)
    dw = bank.transform(x_hat, TfrKind.DB_W)
    dwt = bank.transform(x_hat, TfrKind.DB_W_TPSI)
    tt = time_operator_rows(w, wt, bank.a, grid.b, cfg)
    metric, valid = newton_rows(tt, dw, dwt, w, wt, bank.a, grid.b, cfg)
    return w, metric, valid
