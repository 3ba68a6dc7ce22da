"""File formats: signals, coefficient matrices, scalograms and reports.

Binary layouts are little-endian throughout:

* signal: ``b"NTESIG01"``, u32 n, f64 sample_rate, n x f64 samples
* Tfr: ``b"NTETFR01"``, u32 n, u32 n_rows, u8 kind tag, then
  ``n_rows * n`` (re, im) f64 pairs in row-major order (one row per scale)
"""

from __future__ import annotations

import os
import struct
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .cwt import ScaleGrid, Tfr, TfrKind
from .errors import FormatError, ParameterError
from .signal import Signal

SIGNAL_MAGIC = b"NTESIG01"
TFR_MAGIC = b"NTETFR01"
_SIG_HEADER = struct.Struct("<8sId")
_TFR_HEADER = struct.Struct("<8sIIB")

PathLike = str | os.PathLike


# -- signals -----------------------------------------------------------------


def signal_to_bytes(x: Signal) -> bytes:
    return _SIG_HEADER.pack(SIGNAL_MAGIC, x.n, x.sample_rate) + x.samples.astype("<f8").tobytes()


def signal_from_bytes(data: bytes) -> Signal:
    if len(data) < _SIG_HEADER.size:
        raise FormatError("truncated signal header")
    magic, n, fs = _SIG_HEADER.unpack_from(data)
    if magic != SIGNAL_MAGIC:
        raise FormatError(f"bad signal magic {magic!r}")
    body = data[_SIG_HEADER.size :]
    if len(body) != 8 * n:
        raise FormatError(f"expected {n} samples, found {len(body) / 8:g}")
    try:
        return Signal(np.frombuffer(body, dtype="<f8").astype(np.float64), fs)
    except ParameterError as exc:
        raise FormatError(str(exc)) from exc


def write_signal_bin(path: PathLike, x: Signal) -> None:
    Path(path).write_bytes(signal_to_bytes(x))


def read_signal_bin(path: PathLike) -> Signal:
    return signal_from_bytes(Path(path).read_bytes())


def write_signal_csv(path: PathLike, x: Signal) -> None:
    # repr() is the shortest string that round-trips a double exactly
    Path(path).write_text("".join(f"{v!r}\n" for v in x.samples.tolist()))


def read_signal_csv(path: PathLike, sample_rate: float) -> Signal:
    values = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.strip()
            if not text:
                continue
            try:
                values.append(float(text))
            except ValueError:
                raise FormatError(f"not a number: {text[:40]!r}", line=lineno) from None
    try:
        return Signal(np.array(values), sample_rate)
    except ParameterError as exc:
        raise FormatError(str(exc)) from exc


def detect_format(path: PathLike) -> str:
    with open(path, "rb") as fh:
        head = fh.read(8)
    return "bin" if head == SIGNAL_MAGIC else "csv"


def read_signal(path: PathLike, sample_rate: float = 180e3) -> Signal:
    """Read either format; CSV files take their rate from ``sample_rate``."""
    if detect_format(path) == "bin":
        return read_signal_bin(path)
    return read_signal_csv(path, sample_rate)


def write_signal(path: PathLike, x: Signal, fmt: str = "bin") -> None:
    if fmt == "bin":
        write_signal_bin(path, x)
    elif fmt == "csv":
        write_signal_csv(path, x)
    else:
        raise ParameterError(f"signals cannot be written as {fmt!r}")


# -- coefficient matrices ----------------------------------------------------


def tfr_to_bytes(tfr: Tfr) -> bytes:
    n_rows, n = tfr.coeffs.shape
    pairs = np.empty((n_rows, n, 2), dtype="<f8")
    pairs[..., 0] = tfr.coeffs.real
    pairs[..., 1] = tfr.coeffs.imag
    return _TFR_HEADER.pack(TFR_MAGIC, n, n_rows, tfr.kind.tag) + pairs.tobytes()


def tfr_from_bytes(data: bytes, sample_rate: float = 180e3, omega_psi: float = 6.0) -> Tfr:
    """Decode a Tfr; the file does not store the sampling rate or omega_psi."""
    if len(data) < _TFR_HEADER.size:
        raise FormatError("truncated Tfr header")
    magic, n, n_rows, tag = _TFR_HEADER.unpack_from(data)
    if magic != TFR_MAGIC:
        raise FormatError(f"bad Tfr magic {magic!r}")
    body = data[_TFR_HEADER.size :]
    if len(body) != 16 * n * n_rows:
        raise FormatError("Tfr payload size does not match header")
    pairs = np.frombuffer(body, dtype="<f8").reshape(n_rows, n, 2)
    try:
        return Tfr(pairs[..., 0] + 1j * pairs[..., 1], TfrKind.from_tag(tag), ScaleGrid(n, sample_rate, omega_psi))
    except ParameterError as exc:
        raise FormatError(str(exc)) from exc


def write_tfr_bin(path: PathLike, tfr: Tfr) -> None:
    Path(path).write_bytes(tfr_to_bytes(tfr))


def read_tfr_bin(path: PathLike, sample_rate: float = 180e3, omega_psi: float = 6.0) -> Tfr:
    return tfr_from_bytes(Path(path).read_bytes(), sample_rate, omega_psi)


def write_matrix_csv(path: PathLike, matrix: np.ndarray, grid: ScaleGrid) -> None:
    """Scale-by-time matrix as CSV.

    The first line lists each row's centre frequency in Hz; row ``i`` below
    it holds the ``n`` time samples for frequency ``i``. Rows are sorted by
    ascending frequency.
    """
    order = np.argsort(grid.center_freq_hz, kind="stable")
    with open(path, "w") as fh:
        fh.write(",".join(f"{f!r}" for f in grid.center_freq_hz[order].tolist()) + "\n")
        for k in order:
            fh.write(",".join(f"{v!r}" for v in matrix[k].tolist()) + "\n")


def read_matrix_csv(path: PathLike) -> tuple[np.ndarray, np.ndarray]:
    """Inverse of :func:`write_matrix_csv`: (centre frequencies, matrix)."""
    rows = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            try:
                rows.append([float(v) for v in line.strip().split(",")])
            except ValueError:
                raise FormatError("malformed matrix entry", line=lineno) from None
    if not rows:
        raise FormatError("empty matrix file")
    return np.array(rows[0]), np.array(rows[1:])


def write_pgm(path: PathLike, matrix: np.ndarray, grid: ScaleGrid) -> None:
    """8-bit binary PGM of ``matrix``, highest frequency on the top row."""
    order = np.argsort(grid.center_freq_hz, kind="stable")[::-1]
    m = np.asarray(matrix, dtype=np.float64)[order]
    finite = np.isfinite(m)
    lo = m[finite].min() if finite.any() else 0.0
    hi = m[finite].max() if finite.any() else 0.0
    span = hi - lo if hi > lo else 1.0
    img = np.where(finite, np.round(255 * (m - lo) / span), 255).astype(np.uint8)
    h, w = img.shape
    Path(path).write_bytes(f"P5\n{w} {h}\n255\n".encode() + img.tobytes())


# -- small text records --------------------------------------------------------


def write_record(path: PathLike, record: dict[str, object]) -> None:
    Path(path).write_text("".join(f"{k}={v}\n" for k, v in record.items()))


def read_record(path: PathLike) -> dict[str, str]:
    out = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), start=1):
        if not line.strip():
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise FormatError("expected key=value", line=lineno)
        out[key.strip()] = value.strip()
    return out


def write_vector_csv(path: PathLike, values: Iterable[float]) -> None:
    Path(path).write_text("".join(f"{float(v)!r}\n" for v in values))


def write_table_csv(path: PathLike, header: Sequence[str], rows: Iterable[Sequence[object]]) -> None:
    with open(path, "w") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(repr(v) if isinstance(v, float) else str(v) for v in row) + "\n")
