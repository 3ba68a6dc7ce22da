import numpy as np
import pytest

from ntewt.bench import BenchRecord, csv_rows, loglog_slope, run_speed_sweep, runtime_inversions
from ntewt.errors import ParameterError
from ntewt.filtering import ntewt_filter
from ntewt.fixedpoint import NtewtConfig
from ntewt.signal import Signal
from ntewt.spectral import WaveletParams


def test_small_sweep():
    seen = []
    recs = run_speed_sweep([16, 4, 8], reps=3, warmup=1, with_tfr=True, progress=seen.append)
    assert [r.n for r in recs] == [4, 8, 16]
    assert seen == recs
    for r in recs:
        assert r.mean_runtime_s > 0 and r.repetitions == 3
        assert r.tfr_mean_runtime_s > 0
        assert r.max_realtime_fs_hz == r.n / r.mean_runtime_s


def test_rows_for_csv():
    recs = run_speed_sweep([4, 6], reps=1, warmup=0)
    rows = csv_rows(recs)
    assert [row[0] for row in rows] == [4, 6]
    assert rows[1][2] == pytest.approx(6 / rows[1][1])


@pytest.mark.parametrize("lengths,reps", [([5], 1), ([2], 1), ([8], 0)])
def test_rejects_bad_arguments(lengths, reps):
    with pytest.raises(ParameterError):
        run_speed_sweep(lengths, reps=reps)


def test_slope_of_exact_power_law():
    recs = [BenchRecord(n, 1e-9 * n**2, 1) for n in range(64, 1025, 64)]
    assert loglog_slope(recs, 128, 1024) == pytest.approx(2.0)
    with pytest.raises(ParameterError):
        loglog_slope(recs, 2000, 3000)


def test_inversions():
    recs = [BenchRecord(n, t, 1) for n, t in [(4, 1.0), (6, 0.5), (8, 2.0), (10, 1.5)]]
    assert runtime_inversions(recs) == 2


def test_filter_output_is_repeatable():
    x = Signal(np.random.default_rng(11).standard_normal(256), 180e3)
    p, cfg = WaveletParams(5.0), NtewtConfig()
    outs = [ntewt_filter(x, p, cfg).filtered.samples for _ in range(3)]
    for o in outs[1:]:
        np.testing.assert_array_equal(o, outs[0])
