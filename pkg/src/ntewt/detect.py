"""Matched-filter detection and the peak-to-sidelobe gain of pre-filtering."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from .errors import DegenerateResultError, ParameterError
from .signal import Signal


@dataclass(frozen=True)
class DetectionReport:
    """Matched-filter output.

    ``response[i]`` is the correlation at lag ``i - (m - 1)`` for a template of
    ``m`` samples; ``peak_index`` is that lag, i.e. the sample at which the
    template start aligns with the strongest match.
    """

    response: np.ndarray
    peak_index: int
    peak_value: float
    peak_to_sidelobe_db: float
    template_len: int

    def as_record(self) -> dict[str, float | int]:
        return {
            "peak_index": self.peak_index,
            "peak_value": self.peak_value,
            "peak_to_sidelobe_db": self.peak_to_sidelobe_db,
            "template_len": self.template_len,
            "response_len": self.response.size,
        }


def _samples(x: Signal | npt.ArrayLike) -> np.ndarray:
    return np.asarray(getattr(x, "samples", x), dtype=np.float64).ravel()


def matched_filter(x: Signal | npt.ArrayLike, template: Signal | npt.ArrayLike) -> DetectionReport:
    """Full linear cross-correlation of ``x`` with ``template``.

    The sidelobe level is the largest ``|response|`` more than one template
    length away from the peak; with nothing left outside that window the
    ratio is ``inf``. An all-zero response gives a ``nan`` ratio.
    """
    xs, ts = _samples(x), _samples(template)
    m = ts.size
    if m == 0:
        raise ParameterError("template is empty")
    if m > xs.size:
        raise ParameterError(f"template ({m}) longer than signal ({xs.size})")
    response = np.correlate(xs, ts, mode="full")
    mag = np.abs(response)
    p = int(np.argmax(mag))
    peak = float(mag[p])
    outside = np.ones(response.size, dtype=bool)
    outside[max(0, p - m) : p + m + 1] = False
    side = float(mag[outside].max()) if outside.any() else 0.0
    with np.errstate(divide="ignore", invalid="ignore"):
        psr = float(20 * np.log10(np.float64(peak) / side)) if peak > 0 else float("nan")
    return DetectionReport(response, p - (m - 1), peak, psr, m)


def detection_gain(raw: DetectionReport, filtered: DetectionReport) -> float:
    """Peak-to-sidelobe improvement in dB of ``filtered`` over ``raw``."""
    if raw.template_len != filtered.template_len:
        raise ParameterError("reports come from different templates")
    for name, rep in (("raw", raw), ("filtered", filtered)):
        if rep.peak_value == 0 or not np.isfinite(rep.peak_to_sidelobe_db):
            raise DegenerateResultError(f"{name} response has no defined peak-to-sidelobe ratio")
    return filtered.peak_to_sidelobe_db - raw.peak_to_sidelobe_db
