import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ntewt.errors import ParameterError
from ntewt.signal import (
    ChirpSpec,
    HarmonicSpec,
    NoiseSpec,
    Signal,
    synth_chirp,
    synth_composite,
)

FS = 180e3


class TestSignal:
    def test_rejects_odd_length(self):
        with pytest.raises(ParameterError):
            Signal(np.zeros(5), FS)

    def test_rejects_short_and_bad_rate(self):
        with pytest.raises(ParameterError):
            Signal(np.zeros(0), FS)
        with pytest.raises(ParameterError):
            Signal(np.zeros(4), 0.0)

    def test_samples_are_read_only(self):
        x = Signal(np.ones(4), FS)
        with pytest.raises(ValueError):
            x.samples[0] = 2.0


class TestChirp:
    def test_first_sample_is_zero(self):
        x = synth_chirp(ChirpSpec(0, 90e3, 512, 100), 1024, FS)
        assert x.samples[100] == 0.0

    def test_zero_outside_pulse(self):
        x = synth_chirp(ChirpSpec(10e3, 50e3, 64, 100), 1024, FS)
        assert not x.samples[:100].any()
        assert not x.samples[164:].any()

    def test_constant_frequency_is_a_sinusoid(self):
        f = 20e3
        x = synth_chirp(ChirpSpec(f, f, 256, 0), 256, FS)
        expected = np.sin(2 * np.pi * f * np.arange(256) / FS)
        np.testing.assert_allclose(x.samples, expected, rtol=0, atol=1e-12)

    def test_closed_form_phase(self):
        spec = ChirpSpec(5e3, 70e3, 100, 30, amplitude=2.0)
        x = synth_chirp(spec, 200, FS)
        t = np.arange(100) / FS
        T = 100 / FS
        phi = 2 * np.pi * t * 5e3 + np.pi * t**2 * (70e3 - 5e3) / T
        np.testing.assert_array_equal(x.samples[30:130], 2.0 * np.sin(phi))

    def test_end_frequency_of_test1_chirp(self):
        spec = ChirpSpec(0, 90e3, 512, 0)
        assert spec.instantaneous_frequency(512 / FS, FS) == pytest.approx(90e3)

    def test_group_delay_inverts_frequency_law(self):
        spec = ChirpSpec(0, 90e3, 32, 496)
        t = np.linspace(0, 32 / FS, 7)
        f = spec.instantaneous_frequency(t, FS)
        np.testing.assert_allclose(spec.group_delay(f, FS), 496 + t * FS)

    @pytest.mark.parametrize(
        "spec",
        [
            ChirpSpec(0, 90e3, 0, 0),
            ChirpSpec(0, 90e3, 32, 1000),
            ChirpSpec(0, 95e3, 32, 0),
            ChirpSpec(-1, 90e3, 32, 0),
            ChirpSpec(0, 90e3, 32, 0, amplitude=0.0),
        ],
    )
    def test_invalid_specs(self, spec):
        with pytest.raises(ParameterError):
            synth_chirp(spec, 1024, FS)

    @pytest.mark.parametrize("f1,f2,length", [(0, 90e3, 512), (30e3, 60e3, 32)])
    def test_mean_square_near_half_for_test_pulses(self, f1, f2, length):
        x = synth_chirp(ChirpSpec(f1, f2, length, 0), 1024, FS).samples[:length]
        assert abs(np.mean(x**2) - 0.5) <= 0.05 * 0.5

    def test_short_sweep_to_nyquist_loses_power(self):
        # samples near the Nyquist end sit close to phase multiples of pi
        x = synth_chirp(ChirpSpec(0, 90e3, 32, 0), 32, FS).samples
        assert np.mean(x**2) == pytest.approx(0.4375, abs=1e-12)

    @given(st.sampled_from([32, 64, 128, 512]), st.floats(18e3, 72e3), st.floats(18e3, 72e3))
    @settings(max_examples=200, deadline=None)
    def test_mean_square_near_half(self, length, f1, f2):
        # cos^2 = (1 + cos 2phi)/2; the 2phi term, aliased to within [0, FS/2],
        # must run through enough cycles to average out
        cycles = (f1 + f2) / 2 * length / FS
        if cycles < 8:
            return
        x = synth_chirp(ChirpSpec(f1, f2, length, 0), 1024, FS).samples[:length]
        assert abs(np.mean(x**2) - 0.5) <= 0.05 * 0.5


class TestComposite:
    def test_empty_is_zero(self):
        x = synth_composite([], [], NoiseSpec(0.0, 3), 64, FS)
        assert not x.samples.any()

    def test_harmonic_formula(self):
        x = synth_composite([], [HarmonicSpec(30e3)], None, 64, FS)
        np.testing.assert_array_equal(x.samples, np.cos(2 * np.pi * 30e3 * np.arange(64) / FS))

    def test_superposition_noiseless(self):
        chirps = [ChirpSpec(0, 90e3, 512, 256)]
        harmonics = [HarmonicSpec(30e3), HarmonicSpec(60e3)]
        total = synth_composite(chirps, harmonics, None, 1024, FS).samples
        parts = synth_chirp(chirps[0], 1024, FS).samples
        parts = parts + synth_composite([], harmonics[:1], None, 1024, FS).samples
        parts = parts + synth_composite([], harmonics[1:], None, 1024, FS).samples
        np.testing.assert_array_equal(total, parts)

    def test_superposition_with_noise(self):
        noise = NoiseSpec(0.2, 11)
        chirp = ChirpSpec(30e3, 60e3, 32, 10)
        total = synth_composite([chirp], [], noise, 128, FS).samples
        only_noise = synth_composite([], [], noise, 128, FS).samples
        np.testing.assert_array_equal(total, synth_chirp(chirp, 128, FS).samples + only_noise)

    def test_deterministic_for_seed(self):
        args = ([ChirpSpec(0, 90e3, 32, 48)], [HarmonicSpec(30e3)], NoiseSpec(0.4, 7), 128, FS)
        a = synth_composite(*args).samples
        b = synth_composite(*args).samples
        assert a.tobytes() == b.tobytes()
        c = synth_composite(*args[:2], NoiseSpec(0.4, 8), 128, FS).samples
        assert not np.array_equal(a, c)

    def test_noise_statistics(self):
        x = synth_composite([], [], NoiseSpec(0.4, 1), 1 << 14, FS).samples
        assert np.std(x) == pytest.approx(0.4, rel=0.03)

    def test_test1_composite_shape(self):
        x = synth_composite(
            [ChirpSpec(0, 90e3, 512, 256)], [HarmonicSpec(30e3), HarmonicSpec(60e3)], NoiseSpec(0.0), 1024, FS
        )
        assert x.n == 1024
        assert x.sample_rate == FS

    def test_test4_train(self):
        chirps = [ChirpSpec(30e3, 60e3, 32, 32 * i) for i in range(4)]
        x = synth_composite(chirps, [], None, 128, FS).samples
        pulse = synth_chirp(chirps[0], 128, FS).samples[:32]
        for i in range(4):
            np.testing.assert_array_equal(x[32 * i : 32 * (i + 1)], pulse)

    def test_negative_noise_rejected(self):
        with pytest.raises(ParameterError):
            synth_composite([], [], NoiseSpec(-1.0), 64, FS)
