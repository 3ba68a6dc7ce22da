"""Preset synthetic scenarios for the four chirp-filtering test cases.

Every test runs at f_s = 180 kHz with a Morlet central frequency of 6 rad.
Single pulses are centred in the signal and the Test-4 train starts at
sample 0.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .errors import ParameterError
from .fixedpoint import NtewtConfig
from .signal import ChirpSpec, Composite, HarmonicSpec, NoiseSpec, Signal
from .spectral import WaveletParams

FS = 180e3
OMEGA_PSI = 6.0
HARMONICS = (HarmonicSpec(30e3), HarmonicSpec(60e3))


@dataclass(frozen=True)
class ScenarioConfig:
    name: str
    composite: Composite
    sigma: float
    epsilon: float
    # tolerance used once noise is present (Test 4 tunes it separately)
    epsilon_noisy: float | None = None
    omega_psi: float = OMEGA_PSI

    @property
    def params(self) -> WaveletParams:
        return WaveletParams(self.sigma, self.omega_psi)

    @property
    def template_spec(self) -> ChirpSpec:
        c = self.composite.chirps[0]
        return replace(c, start_offset=0)

    def template(self) -> Signal:
        """A single pulse of the scenario's chirp, used for matched filtering."""
        c = self.template_spec
        return Composite(c.pulse_len + c.pulse_len % 2, self.composite.sample_rate, (c,)).signal()

    def config(self, **overrides: object) -> NtewtConfig:
        eps = self.epsilon
        if self.epsilon_noisy is not None and self.composite.noise.std_dev > 0:
            eps = self.epsilon_noisy
        return NtewtConfig(**{"epsilon": eps, **overrides})

    def with_noise(self, std_dev: float, seed: int = 0) -> ScenarioConfig:
        return replace(self, composite=replace(self.composite, noise=NoiseSpec(std_dev, seed)))


def _single(n: int, f_low: float, f_high: float, pulse_len: int, harmonics=HARMONICS) -> Composite:
    chirp = ChirpSpec(f_low, f_high, pulse_len, (n - pulse_len) // 2)
    return Composite(n, FS, (chirp,), tuple(harmonics))


def _train(n: int, f_low: float, f_high: float, pulse_len: int, count: int) -> Composite:
    chirps = tuple(ChirpSpec(f_low, f_high, pulse_len, i * pulse_len) for i in range(count))
    return Composite(n, FS, chirps, ())


PRESETS: dict[str, ScenarioConfig] = {
    # long, low-rate pulse with stationary harmonics
    "test1": ScenarioConfig("test1", _single(1024, 0.0, 90e3, 512), sigma=5.0, epsilon=1e-3),
    # short, high-rate pulse in a long signal
    "test2": ScenarioConfig("test2", _single(1024, 0.0, 90e3, 32), sigma=5.0, epsilon=2e-3),
    # same pulse in a short signal
    "test3": ScenarioConfig("test3", _single(128, 0.0, 90e3, 32), sigma=3.0, epsilon=1e-2),
    # four back-to-back pulses, no harmonics
    "test4": ScenarioConfig("test4", _train(128, 30e3, 60e3, 32, 4), sigma=3.0, epsilon=1e-2, epsilon_noisy=2e-2),
}


def preset(name: str) -> ScenarioConfig:
    try:
        return PRESETS[name]
    except KeyError:
        raise ParameterError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}") from None
