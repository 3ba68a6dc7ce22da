"""Discrete test signals: linear chirp pulses, stationary harmonics and noise.

All synthesis is closed-form in double precision. Noise comes from a seeded
``numpy.random.Generator`` whose bit generator is recorded in
:data:`NOISE_ALGORITHM` so that outputs can be tagged with it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
import numpy.typing as npt

from .errors import ParameterError

NOISE_ALGORITHM = "numpy.random.PCG64/standard_normal"


@dataclass(frozen=True)
class Signal:
    """Real sample vector with its sampling rate in Hz."""

    samples: npt.NDArray[np.float64]
    sample_rate: float

    def __post_init__(self) -> None:
        x = np.array(self.samples, dtype=np.float64).ravel()
        if x.size < 2 or x.size % 2:
            raise ParameterError(f"signal length must be even and >= 2, got {x.size}")
        if not self.sample_rate > 0:
            raise ParameterError(f"sample_rate must be positive, got {self.sample_rate}")
        if not np.all(np.isfinite(x)):
            raise ParameterError("signal contains non-finite samples")
        x.setflags(write=False)
        object.__setattr__(self, "samples", x)
        object.__setattr__(self, "sample_rate", float(self.sample_rate))

    @property
    def n(self) -> int:
        return self.samples.size

    def __len__(self) -> int:
        return self.samples.size

    def scaled(self, factor: float) -> Signal:
        return Signal(self.samples * factor, self.sample_rate)


@dataclass(frozen=True)
class ChirpSpec:
    """Linear chirp pulse sweeping ``f_low`` to ``f_high`` over ``pulse_len`` samples."""

    f_low: float
    f_high: float
    pulse_len: int
    start_offset: int = 0
    amplitude: float = 1.0

    def validate(self, n: int, sample_rate: float) -> None:
        nyq = sample_rate / 2
        if self.pulse_len < 1:
            raise ParameterError(f"pulse_len must be >= 1, got {self.pulse_len}")
        if self.start_offset < 0 or self.start_offset + self.pulse_len > n:
            raise ParameterError(
                f"pulse [{self.start_offset}, {self.start_offset + self.pulse_len}) "
                f"does not fit in {n} samples"
            )
        for f in (self.f_low, self.f_high):
            if not 0 <= f <= nyq:
                raise ParameterError(f"chirp frequency {f} Hz outside [0, {nyq}]")
        if not self.amplitude > 0:
            raise ParameterError(f"amplitude must be positive, got {self.amplitude}")

    def duration(self, sample_rate: float) -> float:
        return self.pulse_len / sample_rate

    def phase(self, t: npt.ArrayLike, sample_rate: float) -> np.ndarray:
        t = np.asarray(t, dtype=np.float64)
        T = self.duration(sample_rate)
        return 2 * np.pi * t * self.f_low + np.pi * t**2 * (self.f_high - self.f_low) / T

    def instantaneous_frequency(self, t: npt.ArrayLike, sample_rate: float) -> np.ndarray:
        """Derivative of the phase divided by 2*pi, in Hz."""
        t = np.asarray(t, dtype=np.float64)
        T = self.duration(sample_rate)
        return self.f_low + t * (self.f_high - self.f_low) / T

    def group_delay(self, freq_hz: npt.ArrayLike, sample_rate: float) -> np.ndarray:
        """Sample position at which the sweep passes ``freq_hz`` (inverse IF law)."""
        f = np.asarray(freq_hz, dtype=np.float64)
        return self.start_offset + self.pulse_len * (f - self.f_low) / (self.f_high - self.f_low)


@dataclass(frozen=True)
class HarmonicSpec:
    freq: float
    amplitude: float = 1.0

    def validate(self, sample_rate: float) -> None:
        if not 0 <= self.freq <= sample_rate / 2:
            raise ParameterError(f"harmonic frequency {self.freq} Hz outside [0, {sample_rate / 2}]")


@dataclass(frozen=True)
class NoiseSpec:
    std_dev: float = 0.0
    seed: int = 0

    def validate(self) -> None:
        if not self.std_dev >= 0:
            raise ParameterError(f"noise std_dev must be >= 0, got {self.std_dev}")


def chirp_samples(spec: ChirpSpec, n: int, f_s: float) -> np.ndarray:
    spec.validate(n, f_s)
    x = np.zeros(n)
    t = np.arange(spec.pulse_len) / f_s
    x[spec.start_offset : spec.start_offset + spec.pulse_len] = spec.amplitude * np.sin(spec.phase(t, f_s))
    return x


def harmonic_samples(spec: HarmonicSpec, n: int, f_s: float) -> np.ndarray:
    spec.validate(f_s)
    return spec.amplitude * np.cos(2 * np.pi * spec.freq * np.arange(n) / f_s)


def noise_samples(spec: NoiseSpec, n: int) -> np.ndarray:
    spec.validate()
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    return spec.std_dev * rng.standard_normal(n)


def synth_chirp(spec: ChirpSpec, n: int, f_s: float) -> Signal:
    """Single linear chirp pulse, zero outside its support."""
    return Signal(chirp_samples(spec, n, f_s), f_s)


def synth_composite(
    chirps: Sequence[ChirpSpec] = (),
    harmonics: Sequence[HarmonicSpec] = (),
    noise: NoiseSpec | None = None,
    n: int = 1024,
    f_s: float = 180e3,
) -> Signal:
    """Sum of chirps, stationary cosines and seeded Gaussian noise.

    Deterministic components are accumulated first, in list order; the noise
    vector is drawn last, one value per sample.
    """
    x = np.zeros(n)
    for c in chirps:
        x += chirp_samples(c, n, f_s)
    for h in harmonics:
        x += harmonic_samples(h, n, f_s)
    if noise is not None:
        x += noise_samples(noise, n)
    return Signal(x, f_s)


@dataclass(frozen=True)
class Composite:
    """Bundle of component specs describing one synthetic scenario signal."""

    n: int
    sample_rate: float
    chirps: tuple[ChirpSpec, ...] = ()
    harmonics: tuple[HarmonicSpec, ...] = ()
    noise: NoiseSpec = field(default_factory=NoiseSpec)

    def signal(self) -> Signal:
        return synth_composite(self.chirps, self.harmonics, self.noise, self.n, self.sample_rate)

    def chirp_only(self) -> Signal:
        return synth_composite(self.chirps, (), None, self.n, self.sample_rate)

    def harmonics_only(self) -> Signal:
        return synth_composite((), self.harmonics, None, self.n, self.sample_rate)
