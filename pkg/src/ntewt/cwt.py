"""Row-wise FFT evaluation of the wavelet time-frequency representations.

Every scale row ``k`` is one inverse FFT of the signal spectrum multiplied by
a sampled kernel. Coefficient matrices are stored with shape
``(n // 2, n)``: ``coeffs[k, j]`` is the value at scale ``a[k] = 1/(k+1)`` and
time ``b[j] = j/n``. Boundaries are circular.
"""

from __future__ import annotations

import enum
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterator, TypeVar

import numpy as np

from .errors import ParameterError, UsageError
from .signal import Signal
from .spectral import WaveletParams, angular_grid, morlet_spectrum, time_weighted_kernel

T = TypeVar("T")

# rows per block are chosen so that one block holds about this many coefficients
BLOCK_ELEMENTS = 1 << 16


class TfrKind(str, enum.Enum):
    W = "W"
    W_TPSI = "W_tpsi"
    DB_W = "dbW"
    DB_W_TPSI = "dbW_tpsi"
    NTE = "NTe"

    @property
    def tag(self) -> int:
        return list(TfrKind).index(self)

    @classmethod
    def from_tag(cls, tag: int) -> TfrKind:
        try:
            return list(cls)[tag]
        except IndexError:
            raise ParameterError(f"unknown Tfr kind tag {tag}") from None


@dataclass(frozen=True)
class ScaleGrid:
    """Scale, time and frequency axes of an ``n``-sample analysis."""

    n: int
    sample_rate: float = 180e3
    omega_psi: float = 6.0
    a: np.ndarray = field(init=False, repr=False)
    b: np.ndarray = field(init=False, repr=False)
    omega: np.ndarray = field(init=False, repr=False)
    center_freq_hz: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if self.n < 4 or self.n % 2:
            raise ParameterError(f"analysis length must be even and >= 4, got {self.n}")
        k = np.arange(self.n // 2) + 1.0
        arrays = {
            "a": 1.0 / k,
            "b": np.arange(self.n) / self.n,
            "omega": angular_grid(self.n),
            # a[k]*omega = omega_psi at bin l = (k+1)*omega_psi/(2*pi); one bin is f_s/n Hz
            "center_freq_hz": k * self.omega_psi / (2 * np.pi) * (self.sample_rate / self.n),
        }
        for name, arr in arrays.items():
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @classmethod
    def for_signal(cls, x: Signal, params: WaveletParams) -> ScaleGrid:
        return cls(x.n, x.sample_rate, params.omega_psi)

    @property
    def n_scales(self) -> int:
        return self.n // 2

    def nearest_row(self, freq_hz: float) -> int:
        return int(np.argmin(np.abs(self.center_freq_hz - freq_hz)))


@dataclass(frozen=True)
class Tfr:
    """Immutable complex coefficient matrix of shape ``(n // 2, n)``."""

    coeffs: np.ndarray
    kind: TfrKind
    grid: ScaleGrid

    def __post_init__(self) -> None:
        c = np.array(self.coeffs, dtype=np.complex128)
        if c.shape != (self.grid.n_scales, self.grid.n):
            raise ParameterError(f"Tfr shape {c.shape} does not match grid ({self.grid.n_scales}, {self.grid.n})")
        if not np.all(np.isfinite(c)):
            raise ParameterError("Tfr coefficients must be finite")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "kind", TfrKind(self.kind))

    def scalogram(self) -> np.ndarray:
        return np.abs(self.coeffs)


def row_blocks(n_rows: int, n: int) -> list[slice]:
    step = max(1, BLOCK_ELEMENTS // n)
    return [slice(s, min(s + step, n_rows)) for s in range(0, n_rows, step)]


def map_row_blocks(fn: Callable[[slice], T], blocks: list[slice], workers: int | None = None) -> list[T]:
    """Apply ``fn`` to each block, returning results in block order.

    With ``workers`` > 1 blocks run on a thread pool (numpy's FFT releases the
    GIL). Results never depend on scheduling since each block is independent
    and the caller reduces them in list order.
    """
    if workers is None or workers <= 1 or len(blocks) == 1:
        return [fn(s) for s in blocks]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, blocks))


@dataclass(frozen=True)
class KernelBank:
    """Sampled frequency kernels for a block of scale rows."""

    psi: np.ndarray  # psi_hat(a*omega), real
    tpsi: np.ndarray  # kernel of the time-weighted transform, imaginary
    omega: np.ndarray
    a: np.ndarray  # column vector of the block's scales

    @classmethod
    def build(cls, grid: ScaleGrid, params: WaveletParams, rows: slice, paper_derivative: bool = False) -> KernelBank:
        a = grid.a[rows, None]
        return cls(
            psi=morlet_spectrum(params, a, grid.omega),
            tpsi=time_weighted_kernel(params, a, grid.omega, paper_derivative),
            omega=grid.omega,
            a=a,
        )

    def kernel(self, kind: TfrKind) -> np.ndarray:
        if kind is TfrKind.W:
            return self.psi
        if kind is TfrKind.W_TPSI:
            return self.tpsi
        if kind is TfrKind.DB_W:
            return 1j * self.omega * self.psi
        if kind is TfrKind.DB_W_TPSI:
            return 1j * self.omega * self.tpsi
        raise UsageError(f"no analysis kernel for kind {kind.value}")

    def transform(self, x_hat: np.ndarray, kind: TfrKind) -> np.ndarray:
        return np.fft.ifft(x_hat * self.kernel(kind), axis=-1)


def _compute(
    x: Signal,
    params: WaveletParams,
    kind: TfrKind,
    paper_derivative: bool = False,
    workers: int | None = None,
) -> Tfr:
    grid = ScaleGrid.for_signal(x, params)
    x_hat = np.fft.fft(x.samples)
    out = np.empty((grid.n_scales, grid.n), dtype=np.complex128)

    def run(rows: slice) -> None:
        out[rows] = KernelBank.build(grid, params, rows, paper_derivative).transform(x_hat, kind)

    map_row_blocks(run, row_blocks(grid.n_scales, grid.n), workers)
    return Tfr(out, kind, grid)


def compute_w(x: Signal, params: WaveletParams, workers: int | None = None) -> Tfr:
    """Continuous wavelet transform W^psi with the Morlet kernel."""
    return _compute(x, params, TfrKind.W, workers=workers)


def compute_w_tpsi(x: Signal, params: WaveletParams, paper_derivative: bool = False, workers: int | None = None) -> Tfr:
    """Transform with the time-weighted wavelet ``t*psi(t)``."""
    return _compute(x, params, TfrKind.W_TPSI, paper_derivative, workers)


def compute_db_w(x: Signal, params: WaveletParams, workers: int | None = None) -> Tfr:
    """Time derivative of W^psi, via multiplication by ``i*omega``."""
    return _compute(x, params, TfrKind.DB_W, workers=workers)


def compute_db_w_tpsi(
    x: Signal, params: WaveletParams, paper_derivative: bool = False, workers: int | None = None
) -> Tfr:
    return _compute(x, params, TfrKind.DB_W_TPSI, paper_derivative, workers)


def wavelet_atom(grid: ScaleGrid, params: WaveletParams, j: int, k: int) -> np.ndarray:
    """Time-domain atom at scale ``a[k]`` centred on sample ``j`` (circular)."""
    if not (0 <= j < grid.n and 0 <= k < grid.n_scales):
        raise ParameterError(f"atom index (j={j}, k={k}) outside ({grid.n}, {grid.n_scales})")
    base = np.fft.ifft(morlet_spectrum(params, grid.a[k], grid.omega))
    return np.roll(base, j)


def synthesis_spectrum(coeffs: np.ndarray, bank: KernelBank) -> np.ndarray:
    """Spectrum of ``sum_k sum_j a[k] c[k, j] psi[j, k]`` for one block of rows.

    Summing shifted copies of an atom weighted by a row of coefficients is a
    circular convolution, so each row costs one forward FFT.
    """
    return np.sum(bank.a * np.fft.fft(coeffs, axis=-1) * bank.psi, axis=0)


def reconstruct_from_cwt(tfr: Tfr, params: WaveletParams, workers: int | None = None) -> Signal:
    """Inverse transform ``2*Re(sum_j sum_k a[k] c[j,k] psi[j,k])``, up to scale.

    No normalization constant is applied; compare results by correlation or
    a least-squares amplitude fit.
    """
    if tfr.kind not in (TfrKind.W, TfrKind.NTE):
        raise UsageError(f"cannot reconstruct from a {tfr.kind.value} representation")
    grid = tfr.grid
    blocks = row_blocks(grid.n_scales, grid.n)

    def run(rows: slice) -> np.ndarray:
        return synthesis_spectrum(tfr.coeffs[rows], KernelBank.build(grid, params, rows))

    acc = np.zeros(grid.n, dtype=np.complex128)
    for part in map_row_blocks(run, blocks, workers):
        acc += part
    return Signal(2 * np.real(np.fft.ifft(acc)), grid.sample_rate)
