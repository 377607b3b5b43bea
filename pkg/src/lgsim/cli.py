"""Command-line front end: ``lgsim {sweep,tilt,threshold,classical,verify}``."""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .dephasing import DEFAULT_LAMBDA0, DEFAULT_SIGMA, SpectralProfile
from .engine import DEFAULT_TILT_SAMPLES, envelope_extrema
from .errors import LGSimError
from .sweep import (
    SweepConfig,
    classical_curves,
    emit_classical_csv,
    emit_csv,
    emit_tilt_csv,
    fmt,
    run_envelope_sweep,
    run_threshold,
    run_tilt_scan,
)
from .svgplot import emit_svg

log = logging.getLogger("lgsim")

DEFAULTS = {
    "sigma": DEFAULT_SIGMA,
    "lambda0": DEFAULT_LAMBDA0,
    "r_min": 0.0,
    "r_max": 60.0,
    "r_step": 0.25,
    "tilt_samples": DEFAULT_TILT_SAMPLES,
    "out": ".",
    "svg": False,
    "png": False,
    "seed": 0,
    "retardation": 0.0,
    "which": "minus",
    "p_samples": 101,
    "trials": 100_000,
}
_TYPES = {k: type(v) for k, v in DEFAULTS.items()}


def _parse_bool(text: str) -> bool:
    low = text.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def load_config_file(path) -> dict:
    """Read ``key = value`` lines; ``#`` starts a comment, keys accept - or _."""
    values = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in DEFAULTS:
            raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
        kind = _TYPES[key]
        values[key] = _parse_bool(value) if kind is bool else kind(value)
    return values


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value file; explicit flags override it")
    common.add_argument("--sigma", type=float, help="spectral spread in rad/s (default 3.56e13)")
    common.add_argument("--lambda0", type=float, help="central wavelength in m (default 0.78e-6)")
    common.add_argument("--r-min", dest="r_min", type=float, help="first retardation, waves")
    common.add_argument("--r-max", dest="r_max", type=float, help="last retardation, waves")
    common.add_argument("--r-step", dest="r_step", type=float, help="retardation step, waves")
    common.add_argument("--tilt-samples", dest="tilt_samples", type=int,
                        help="grid points per tilt scan (>= 360)")
    common.add_argument("--out", help="output directory")
    common.add_argument("--svg", action="store_const", const=True, help="also write SVG plot")
    common.add_argument("--png", action="store_const", const=True,
                        help="also render matplotlib PNG figures")
    common.add_argument("--seed", type=int, help="Monte Carlo / verification seed")

    parser = argparse.ArgumentParser(prog="lgsim", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("sweep", parents=[common], help="envelope sweep over retardation")
    tilt = sub.add_parser("tilt", parents=[common], help="tilt scan at one retardation")
    tilt.add_argument("--retardation", type=float, help="retardation in waves (default 0)")
    tilt.add_argument("--which", choices=("minus", "plus"))
    sub.add_parser("threshold", parents=[common], help="quantum-to-classical threshold")
    classical = sub.add_parser("classical", parents=[common], help="macrorealist model curves")
    classical.add_argument("--p-samples", dest="p_samples", type=int)
    classical.add_argument("--trials", type=int, help="Monte Carlo trajectories per p")
    sub.add_parser("verify", parents=[common], help="run the invariant suite")
    return parser


def resolve_options(ns: argparse.Namespace) -> dict:
    opts = dict(DEFAULTS)
    if ns.config:
        opts.update(load_config_file(ns.config))
    for key in DEFAULTS:
        value = getattr(ns, key, None)
        if value is not None:
            opts[key] = value
    return opts


def _sweep_config(opts) -> SweepConfig:
    return SweepConfig(
        spec=SpectralProfile.from_wavelength(opts["lambda0"], opts["sigma"]),
        r_min=opts["r_min"],
        r_max=opts["r_max"],
        r_step=opts["r_step"],
        tilt_samples=opts["tilt_samples"],
        output_dir=Path(opts["out"]),
        emit_svg=opts["svg"],
        seed=opts["seed"],
    )


def cmd_sweep(opts) -> int:
    cfg = _sweep_config(opts)
    rows = run_envelope_sweep(cfg)
    print(emit_csv(rows, cfg.output_dir / "envelope_sweep.csv"))
    if cfg.emit_svg:
        print(emit_svg(rows, cfg.output_dir / "envelope_sweep.svg"))
    if opts["png"]:
        from .figures import plot_envelopes
        print(plot_envelopes(rows, cfg.output_dir / "envelope_sweep.png"))
    return 0


def cmd_tilt(opts) -> int:
    cfg = _sweep_config(opts)
    r, which = opts["retardation"], opts["which"]
    scan = run_tilt_scan(r, cfg.spec, which, cfg.tilt_samples)
    print(emit_tilt_csv(scan, which, cfg.output_dir / f"tilt_{which}.csv"))
    lo, hi, arg = envelope_extrema(r, cfg.spec, which, cfg.tilt_samples)
    print(f"retardation: {fmt(r)}\nwhich: {which}\nmin: {fmt(lo)}\nmax: {fmt(hi)}\nargmin_tilt: {fmt(arg)}")
    if opts["png"]:
        from .figures import plot_tilt_scan
        print(plot_tilt_scan(scan, which, r, cfg.output_dir / f"tilt_{which}.png"))
    return 0


def cmd_threshold(opts) -> int:
    summary = run_threshold(_sweep_config(opts))
    for key, value in summary.items():
        print(f"{key}: {fmt(value)}")
    return 0


def cmd_classical(opts) -> int:
    out = Path(opts["out"])
    rows = classical_curves(opts["p_samples"], opts["trials"], opts["seed"])
    print(emit_classical_csv(rows, out / "classical.csv"))
    if opts["png"]:
        from .figures import plot_classical
        print(plot_classical(rows, out / "classical.png"))
    return 0


def cmd_verify(opts) -> int:
    from .verify import run_all_checks

    spec = SpectralProfile.from_wavelength(opts["lambda0"], opts["sigma"])
    results = run_all_checks(spec, opts["seed"])
    for res in results:
        print(res.line())
    failed = sum(not r.passed for r in results)
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return 1 if failed else 0


COMMANDS = {
    "sweep": cmd_sweep,
    "tilt": cmd_tilt,
    "threshold": cmd_threshold,
    "classical": cmd_classical,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        opts = resolve_options(ns)
        return COMMANDS[ns.command](opts)
    except (LGSimError, OSError, ValueError) as exc:
        print(f"lgsim: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
