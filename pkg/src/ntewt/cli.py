"""Command-line front end: ``ntewt {synth,analyze,filter,match,bench}``.

Exit codes: 0 success, 2 invalid parameters, 3 I/O or parse failure,
4 degenerate result (e.g. a detection gain that is undefined).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import asdict
from pathlib import Path
from typing import Sequence

import numpy as np

from . import io
from .bench import CSV_HEADER, DEFAULT_REPS, DEFAULT_WARMUP, csv_rows, run_speed_sweep
from .cwt import ScaleGrid
from .detect import detection_gain, matched_filter
from .errors import DegenerateResultError, FormatError, NtewtError, ParameterError
from .filtering import ntewt_filter
from .fixedpoint import NtewtConfig, analyze, export_fixed_point_log
from .scenarios import FS, OMEGA_PSI, preset
from .signal import NOISE_ALGORITHM, ChirpSpec, Composite, HarmonicSpec, NoiseSpec, Signal
from .spectral import WaveletParams

log = logging.getLogger("ntewt")

EXIT_OK = 0
EXIT_PARAM = 2
EXIT_IO = 3
EXIT_DEGENERATE = 4

DEFAULT_SIGMA = 5.0
DEFAULT_EPSILON = 1e-3


def _chirp_arg(text: str) -> ChirpSpec:
    try:
        f1, f2, length, offset = text.split(":")
        return ChirpSpec(float(f1), float(f2), int(length), int(offset))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected f1:f2:len:offset, got {text!r}") from None


def _harmonic_arg(text: str) -> HarmonicSpec:
    try:
        f, _, amp = text.partition(":")
        return HarmonicSpec(float(f), float(amp) if amp else 1.0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected f[:amp], got {text!r}") from None


def _lengths_arg(text: str) -> list[int]:
    """``start:stop:step`` (inclusive stop) or a comma-separated list."""
    try:
        if ":" in text:
            start, stop, step = (int(v) for v in text.split(":"))
            return list(range(start, stop + 1, step))
        return [int(v) for v in text.split(",") if v]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad length list {text!r}") from None


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--preset", choices=["test1", "test2", "test3", "test4"])
    p.add_argument("--fs", type=float, help="sampling rate in Hz (default 180 kHz)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--noise-std", type=float)
    p.add_argument("-v", "--verbose", action="store_true")


def _add_transform(p: argparse.ArgumentParser, multi_sigma: bool = False) -> None:
    if multi_sigma:
        p.add_argument("--sigma", type=float, action="append", help="Morlet width (repeatable)")
    else:
        p.add_argument("--sigma", type=float, help="Morlet width")
    p.add_argument("--omega-psi", type=float, default=OMEGA_PSI)
    p.add_argument("--epsilon", type=float, help="fixed-point tolerance (normalized time)")
    p.add_argument("--magnitude-guard", type=float, default=1e-12)
    p.add_argument("--denom-guard", type=float, default=1e-8)
    p.add_argument("--metric", choices=["modulus", "real"], default="modulus")
    p.add_argument("--paper-derivative", action="store_true", help="use the sigma**5-scaled time-weighted kernel")
    p.add_argument("--paper-accumulation", action="store_true", help="synthesize from unscaled coefficients")
    p.add_argument("--parallel", type=int, default=None, metavar="N", help="row-block worker threads")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ntewt", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="synthesize a test signal")
    _add_common(p)
    p.add_argument("--n", type=int)
    p.add_argument("--chirp", type=_chirp_arg, action="append", metavar="F1:F2:LEN:OFFSET")
    p.add_argument("--harmonic", type=_harmonic_arg, action="append", metavar="F[:AMP]")
    p.add_argument("--format", choices=["csv", "bin"], default="bin")
    p.add_argument("-o", "--out", required=True)

    p = sub.add_parser("analyze", help="write CWT, reassigned and fixed-point matrices")
    _add_common(p)
    _add_transform(p, multi_sigma=True)
    p.add_argument("input")
    p.add_argument("--outdir", default=".")
    p.add_argument("--format", choices=["csv", "pgm"], action="append")
    p.add_argument("--log-cap", type=float, default=1.0, help="value for invalid fixed-point entries")

    p = sub.add_parser("filter", help="filter a signal to its fixed-point content")
    _add_common(p)
    _add_transform(p)
    p.add_argument("input")
    p.add_argument("-o", "--out", required=True)
    p.add_argument("--format", choices=["csv", "bin"], default="bin")

    p = sub.add_parser("match", help="matched-filter a signal against a chirp template")
    _add_common(p)
    p.add_argument("input")
    p.add_argument("--template", help="template signal file (default: the preset's pulse)")
    p.add_argument("--compare", help="second signal (e.g. filtered) for a detection gain")
    p.add_argument("-o", "--out", required=True, help="output prefix for .txt record and .csv response")

    p = sub.add_parser("bench", help="runtime sweep over signal lengths")
    p.add_argument("--lengths", type=_lengths_arg, default=list(range(4, 1025, 2)))
    p.add_argument("--reps", type=int, default=DEFAULT_REPS)
    p.add_argument("--warmup", type=int, default=DEFAULT_WARMUP)
    p.add_argument("--sigma", type=float, default=DEFAULT_SIGMA)
    p.add_argument("--epsilon", type=float, default=DEFAULT_EPSILON)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--parallel", type=int, default=None, metavar="N")
    p.add_argument("--with-tfr", action="store_true", help="also time the analysis-only pass")
    p.add_argument("-o", "--out", required=True)
    p.add_argument("-v", "--verbose", action="store_true")
    return parser


# -- argument resolution -------------------------------------------------------


def _sample_rate(args: argparse.Namespace) -> float:
    return args.fs if args.fs is not None else FS


def _composite(args: argparse.Namespace) -> tuple[Composite, dict]:
    scen = preset(args.preset) if args.preset else None
    base = scen.composite if scen else Composite(args.n or 1024, _sample_rate(args))
    n = args.n if args.n is not None else base.n
    fs = args.fs if args.fs is not None else base.sample_rate
    chirps = tuple(args.chirp) if args.chirp else base.chirps
    harmonics = tuple(args.harmonic) if args.harmonic else base.harmonics
    std = args.noise_std if args.noise_std is not None else base.noise.std_dev
    comp = Composite(n, fs, chirps, harmonics, NoiseSpec(std, args.seed))
    meta = {
        "preset": args.preset,
        "n": n,
        "sample_rate": fs,
        "seed": args.seed,
        "noise_std": std,
        "noise_algorithm": NOISE_ALGORITHM,
        "chirps": [asdict(c) for c in chirps],
        "harmonics": [{"freq": h.freq, "amplitude": h.amplitude} for h in harmonics],
    }
    return comp, meta


def _transform_settings(args: argparse.Namespace, sigma: float | None = None) -> tuple[WaveletParams, NtewtConfig]:
    scen = preset(args.preset) if args.preset else None
    if args.noise_std is not None and scen is not None:
        scen = scen.with_noise(args.noise_std, args.seed)
    if sigma is None:
        sigma = scen.sigma if scen else DEFAULT_SIGMA
    eps = args.epsilon
    if eps is None:
        eps = scen.config().epsilon if scen else DEFAULT_EPSILON
    params = WaveletParams(sigma, args.omega_psi)
    cfg = NtewtConfig(
        epsilon=eps,
        magnitude_guard=args.magnitude_guard,
        denom_guard=args.denom_guard,
        metric=args.metric,
        paper_derivative=args.paper_derivative,
        paper_accumulation=args.paper_accumulation,
    )
    return params, cfg


def _read(path: str, args: argparse.Namespace) -> Signal:
    return io.read_signal(path, _sample_rate(args))


# -- commands ------------------------------------------------------------------


def cmd_synth(args: argparse.Namespace) -> int:
    comp, meta = _composite(args)
    x = comp.signal()
    io.write_signal(args.out, x, args.format)
    meta["format"] = args.format
    Path(str(args.out) + ".json").write_text(json.dumps(meta, indent=2) + "\n")
    log.info("wrote %d samples to %s", x.n, args.out)
    return EXIT_OK


def cmd_analyze(args: argparse.Namespace) -> int:
    x = _read(args.input, args)
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    formats = args.format or ["csv"]
    sigmas = args.sigma or [None]
    for sigma in sigmas:
        params, cfg = _transform_settings(args, sigma)
        res = analyze(x, params, cfg, workers=args.parallel)
        suffix = f"_sigma{params.sigma:g}" if len(sigmas) > 1 else ""
        grid = ScaleGrid.for_signal(x, params)
        mats = {
            "cwt": res.w.scalogram(),
            "ntewt": res.nte.scalogram(),
            "fixedpoint": export_fixed_point_log(res.field, args.log_cap),
        }
        for name, mat in mats.items():
            if "csv" in formats:
                io.write_matrix_csv(outdir / f"{name}{suffix}.csv", mat, grid)
            if "pgm" in formats:
                io.write_pgm(outdir / f"{name}{suffix}.pgm", mat, grid)
        log.info("sigma=%g: %d fixed points, %.3f s", params.sigma, int(res.field.survivors(cfg.epsilon).sum()), res.runtime_s)
    return EXIT_OK


def cmd_filter(args: argparse.Namespace) -> int:
    x = _read(args.input, args)
    params, cfg = _transform_settings(args)
    res = ntewt_filter(x, params, cfg, workers=args.parallel)
    io.write_signal(args.out, res.filtered, args.format)
    stats = {
        "n": x.n,
        "sigma": params.sigma,
        "epsilon": cfg.epsilon,
        "fixed_points": int(res.surviving.sum()),
        "rows_with_fixed_points": int(np.count_nonzero(res.surviving)),
        "runtime_s": res.runtime_s,
    }
    print(json.dumps(stats))
    return EXIT_OK


def cmd_match(args: argparse.Namespace) -> int:
    x = _read(args.input, args)
    if args.template:
        template = _read(args.template, args)
    elif args.preset:
        template = preset(args.preset).template()
    else:
        raise ParameterError("match needs --template or --preset")
    rep = matched_filter(x, template)
    record: dict[str, object] = dict(rep.as_record())
    if args.compare:
        other = matched_filter(_read(args.compare, args), template)
        record["compare_peak_to_sidelobe_db"] = other.peak_to_sidelobe_db
        record["gain_db"] = detection_gain(rep, other)
    io.write_record(str(args.out) + ".txt", record)
    io.write_vector_csv(str(args.out) + ".csv", rep.response)
    print(json.dumps(record))
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    params = WaveletParams(args.sigma, OMEGA_PSI)
    cfg = NtewtConfig(epsilon=args.epsilon)
    records = run_speed_sweep(
        args.lengths,
        args.reps,
        params,
        cfg,
        seed=args.seed,
        warmup=args.warmup,
        workers=args.parallel,
        with_tfr=args.with_tfr,
        progress=lambda r: log.info("n=%d %.6f s", r.n, r.mean_runtime_s),
    )
    header = list(CSV_HEADER)
    rows = [list(r) for r in csv_rows(records)]
    if args.with_tfr:
        header.append("tfr_mean_runtime_s")
        for row, rec in zip(rows, records):
            row.append(rec.tfr_mean_runtime_s)
    io.write_table_csv(args.out, header, rows)
    return EXIT_OK


COMMANDS = {
    "synth": cmd_synth,
    "analyze": cmd_analyze,
    "filter": cmd_filter,
    "match": cmd_match,
    "bench": cmd_bench,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return COMMANDS[args.command](args)
    except DegenerateResultError as exc:
        print(f"ntewt: degenerate result: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except ParameterError as exc:
        print(f"ntewt: invalid parameter: {exc}", file=sys.stderr)
        return EXIT_PARAM
    except (FormatError, OSError) as exc:
        print(f"ntewt: {exc}", file=sys.stderr)
        return EXIT_IO
    except NtewtError as exc:  # pragma: no cover - every subclass is handled above
        print(f"ntewt: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
