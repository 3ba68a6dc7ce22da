"""Newton time-extracting wavelet transform (NTEWT) used as a chirp filter."""

from .cwt import (
    ScaleGrid,
    Tfr,
    TfrKind,
    compute_db_w,
    compute_db_w_tpsi,
    compute_w,
    compute_w_tpsi,
    reconstruct_from_cwt,
    wavelet_atom,
)
from .detect import DetectionReport, detection_gain, matched_filter
from .errors import DegenerateResultError, FormatError, NtewtError, ParameterError, UsageError
from .filtering import FilterResult, ntewt_filter
from .fixedpoint import (
    FixedPointField,
    NtewtConfig,
    analyze,
    complex_time_operator,
    export_fixed_point_log,
    newton_gd,
    reassign,
)
from .signal import ChirpSpec, Composite, HarmonicSpec, NoiseSpec, Signal, synth_chirp, synth_composite
from .spectral import WaveletParams, dft, idft, morlet_spectrum, morlet_spectrum_derivative

__version__ = "0.1.0"
