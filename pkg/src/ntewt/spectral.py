"""DFT contract and the frequency-domain Morlet kernel.

The transform pair follows the engineering sign convention::

    X[k] = sum_j x[j] exp(-2j*pi*j*k/n)
    x[j] = (1/n) sum_k X[k] exp(+2j*pi*j*k/n)

which is exactly what ``numpy.fft`` computes for any length.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from .errors import ParameterError

ADMISSIBILITY_RATIO = 1e-3


def dft(x: npt.ArrayLike) -> np.ndarray:
    x = np.asarray(getattr(x, "samples", x))
    if x.ndim != 1 or x.size == 0:
        raise ParameterError("dft needs a non-empty 1-D vector")
    return np.fft.fft(x)


def idft(X: npt.ArrayLike) -> np.ndarray:
    X = np.asarray(X)
    if X.ndim != 1 or X.size == 0:
        raise ParameterError("idft needs a non-empty 1-D vector")
    return np.fft.ifft(X)


def angular_grid(n: int) -> np.ndarray:
    """omega[l] = 2*pi*l for l = 0..n-1 (one-sided, time normalized to [0, 1))."""
    return 2 * np.pi * np.arange(n, dtype=np.float64)


@dataclass(frozen=True)
class WaveletParams:
    """Morlet width ``sigma`` and central frequency ``omega_psi`` (rad)."""

    sigma: float = 5.0
    omega_psi: float = 6.0

    def __post_init__(self) -> None:
        if not self.sigma > 0:
            raise ParameterError(f"sigma must be positive, got {self.sigma}")
        if not self.omega_psi > 0:
            raise ParameterError(f"omega_psi must be positive, got {self.omega_psi}")
        # psi_hat(0) / peak = exp(-(sigma*omega_psi)^2 / 2)
        if np.exp(-((self.sigma * self.omega_psi) ** 2) / 2) >= ADMISSIBILITY_RATIO:
            raise ParameterError(
                f"Morlet with sigma={self.sigma}, omega_psi={self.omega_psi} is not numerically "
                f"admissible (spectrum at zero frequency >= {ADMISSIBILITY_RATIO} of peak)"
            )

    @property
    def peak(self) -> float:
        return (4 * np.pi * self.sigma**2) ** 0.25


def morlet_spectrum(params: WaveletParams, a: float | np.ndarray, omegas: npt.ArrayLike) -> np.ndarray:
    """Sampled Morlet spectrum psi_hat(a*omega).

    ``a`` may be a scalar or a column vector broadcasting against ``omegas``.
    """
    a = np.asarray(a, dtype=np.float64)
    if np.any(a <= 0):
        raise ParameterError("scale must be positive")
    aw = a * np.asarray(omegas, dtype=np.float64)
    return params.peak * np.exp(-(params.sigma**2) * (aw - params.omega_psi) ** 2 / 2)


def morlet_spectrum_derivative(
    params: WaveletParams,
    a: float | np.ndarray,
    omegas: npt.ArrayLike,
    paper_variant: bool = False,
) -> np.ndarray:
    """d/d(omega) of psi_hat(a*omega): ``-a*sigma**2*(a*omega - omega_psi)*psi_hat``.

    With ``paper_variant`` the width enters as ``sigma**5`` instead of
    ``sigma**2``. Only a per-row constant changes, so fixed points do not move.
    """
    a = np.asarray(a, dtype=np.float64)
    aw = a * np.asarray(omegas, dtype=np.float64)
    power = 5 if paper_variant else 2
    return -a * params.sigma**power * (aw - params.omega_psi) * morlet_spectrum(params, a, omegas)


def time_weighted_kernel(
    params: WaveletParams,
    a: float | np.ndarray,
    omegas: npt.ArrayLike,
    paper_variant: bool = False,
) -> np.ndarray:
    """Frequency-domain kernel producing the time-weighted transform W^{t psi}.

    The conjugated spectrum of the dilated atom ``((t-b)/a) psi((t-b)/a)`` is
    ``-i * psi_hat'(a*omega)``, i.e. ``-(i/a)`` times the omega-derivative of
    ``psi_hat(a*omega)``. With this kernel ``b + a*W_t/W`` lands on the true
    time of an impulse. ``paper_variant`` uses the alternative kernel
    ``+i * D_omega psi_hat(a*omega)`` with the ``sigma**5`` factor; it differs
    from the default by the per-row constant ``-a*sigma**3``, which cancels in
    the Newton group-delay estimate.
    """
    d = morlet_spectrum_derivative(params, a, omegas, paper_variant)
    if paper_variant:
        return 1j * d
    return -1j * d / np.asarray(a, dtype=np.float64)
