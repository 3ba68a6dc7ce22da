import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ntewt.detect import detection_gain, matched_filter
from ntewt.errors import DegenerateResultError, ParameterError
from ntewt.scenarios import preset
from ntewt.signal import Signal

from oracles import linear_xcorr


def test_autocorrelation_peak():
    t = np.random.default_rng(0).standard_normal(24)
    r = matched_filter(t, t)
    assert r.peak_index == 0
    assert r.peak_value == pytest.approx(np.sum(t**2), rel=1e-12)


def test_matches_brute_force():
    rng = np.random.default_rng(1)
    x, t = rng.standard_normal(50), rng.standard_normal(7)
    r = matched_filter(x, t)
    np.testing.assert_allclose(r.response, linear_xcorr(x, t), atol=1e-12)
    assert r.response.size == 50 + 7 - 1


def test_zero_signal():
    r = matched_filter(np.zeros(32), np.ones(4))
    assert not r.response.any()
    assert r.peak_value == 0 and np.isnan(r.peak_to_sidelobe_db)


def test_sidelobe_window():
    x = np.zeros(64)
    x[30] = 4.0
    x[10] = 1.0  # 20 lags from the peak, outside a 5-sample window
    x[33] = 3.0  # inside the window
    r = matched_filter(x, np.array([1.0, 0, 0, 0, 0]))
    assert r.peak_index == 30
    assert r.peak_to_sidelobe_db == pytest.approx(20 * np.log10(4.0))


def test_no_sidelobe_region_is_infinite():
    t = np.ones(8)
    assert matched_filter(t, t).peak_to_sidelobe_db == np.inf


def test_test2_peak_at_pulse_start():
    s = preset("test2")
    r = matched_filter(s.composite.signal(), s.template())
    assert abs(r.peak_index - s.composite.chirps[0].start_offset) <= 1


@given(st.integers(0, 40))
@settings(max_examples=20, deadline=None)
def test_shift_equivariance(m):
    rng = np.random.default_rng(2)
    t = rng.standard_normal(16)
    x = np.zeros(128)
    x[20 : 20 + 16] = t
    shifted = np.roll(x, m)
    assert matched_filter(shifted, t).peak_index == matched_filter(x, t).peak_index + m


def test_linearity():
    rng = np.random.default_rng(3)
    x, y, t = rng.standard_normal(64), rng.standard_normal(64), rng.standard_normal(9)
    lhs = matched_filter(2 * x - 3 * y, t).response
    rhs = 2 * matched_filter(x, t).response - 3 * matched_filter(y, t).response
    np.testing.assert_allclose(lhs, rhs, atol=1e-12)


def test_self_response_is_symmetric():
    x = np.random.default_rng(4).standard_normal(40)
    r = matched_filter(x, x).response
    assert np.linalg.norm(r - r[::-1]) / np.linalg.norm(r) <= 1e-10


def test_accepts_signals():
    x = Signal(np.arange(8.0), 1.0)
    assert matched_filter(x, x).peak_index == 0


@pytest.mark.parametrize("t", [[], np.ones(9)])
def test_bad_template(t):
    with pytest.raises(ParameterError):
        matched_filter(np.ones(8), t)


def test_record_fields():
    r = matched_filter(np.ones(8), np.ones(2))
    rec = r.as_record()
    assert rec["template_len"] == 2 and rec["response_len"] == 9
    assert set(rec) >= {"peak_index", "peak_value", "peak_to_sidelobe_db"}


class TestGain:
    def report(self, seed=5):
        rng = np.random.default_rng(seed)
        return matched_filter(rng.standard_normal(128), rng.standard_normal(8))

    def test_identical_is_zero(self):
        r = self.report()
        assert detection_gain(r, r) == 0.0

    def test_difference(self):
        a, b = self.report(5), self.report(6)
        assert detection_gain(a, b) == pytest.approx(b.peak_to_sidelobe_db - a.peak_to_sidelobe_db)

    def test_zero_filtered_is_degenerate(self):
        raw = self.report()
        zero = matched_filter(np.zeros(128), np.ones(8))
        with pytest.raises(DegenerateResultError):
            detection_gain(raw, zero)

    def test_template_mismatch(self):
        with pytest.raises(ParameterError):
            detection_gain(self.report(), matched_filter(np.ones(16), np.ones(3)))
