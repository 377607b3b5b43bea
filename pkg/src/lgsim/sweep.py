"""Tilt scans, retardation sweeps and the threshold summary behind the CLI."""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .classical import FlipModel, classical_lg, monte_carlo_classical
from .dephasing import SpectralProfile
from .engine import (
    CLASSICAL_BOUND,
    DEFAULT_TILT_SAMPLES,
    QUANTUM_BOUND,
    TWO_PI,
    _select,
    closed_form_decohered,
    envelope_extrema,
    find_transition,
)
from .errors import InvalidArgumentError

SWEEP_COLUMNS = (
    "retardation_waves",
    "env_min_minus",
    "env_max_minus",
    "env_min_plus",
    "env_max_plus",
    "classical_bound",
    "quantum_bound",
)


@dataclass(frozen=True)
class SweepConfig:
    spec: SpectralProfile = field(default_factory=SpectralProfile.from_wavelength)
    r_min: float = 0.0
    r_max: float = 60.0
    r_step: float = 0.25
    tilt_samples: int = DEFAULT_TILT_SAMPLES
    output_dir: Path = Path(".")
    emit_svg: bool = False
    seed: int = 0

    def __post_init__(self):
        if not self.r_step > 0:
            raise InvalidArgumentError(f"r_step must be > 0, got {self.r_step!r}")
        if not 0 <= self.r_min <= self.r_max:
            raise InvalidArgumentError(f"need 0 <= r_min <= r_max, got {self.r_min}, {self.r_max}")
        if self.tilt_samples < 360:
            raise InvalidArgumentError(f"tilt_samples must be >= 360, got {self.tilt_samples}")

    def retardations(self) -> np.ndarray:
        n = int(math.floor((self.r_max - self.r_min) / self.r_step + 1e-9))
        return self.r_min + self.r_step * np.arange(n + 1)


@dataclass(frozen=True)
class SweepRow:
    retardation: float
    env_min_minus: float
    env_max_minus: float
    env_min_plus: float
    env_max_plus: float
    classical_bound: float = CLASSICAL_BOUND
    quantum_bound: float = QUANTUM_BOUND

    def values(self) -> tuple[float, ...]:
        return (self.retardation, self.env_min_minus, self.env_max_minus,
                self.env_min_plus, self.env_max_plus, self.classical_bound, self.quantum_bound)


def run_tilt_scan(retardation: float, spec: SpectralProfile, which: str = "minus",
                  samples: int = DEFAULT_TILT_SAMPLES) -> list[tuple[float, float]]:
    idx = _select(which)
    deltas = np.linspace(0.0, TWO_PI, samples, endpoint=False)
    values = closed_form_decohered(retardation, deltas, spec)[idx]
    return [(float(d), float(v)) for d, v in zip(deltas, values)]


def sweep_row(retardation: float, spec: SpectralProfile, samples: int) -> SweepRow:
    lo_m, hi_m, _ = envelope_extrema(retardation, spec, "minus", samples)
    lo_p, hi_p, _ = envelope_extrema(retardation, spec, "plus", samples)
    return SweepRow(float(retardation), lo_m, hi_m, lo_p, hi_p)


def run_envelope_sweep(cfg: SweepConfig) -> list[SweepRow]:
    return [sweep_row(r, cfg.spec, cfg.tilt_samples) for r in cfg.retardations()]


def run_threshold(cfg: SweepConfig) -> dict[str, float]:
    r_minus = find_transition(cfg.spec, "minus", cfg.tilt_samples)
    r_plus = find_transition(cfg.spec, "plus", cfg.tilt_samples)
    return {
        "r_star_minus": r_minus,
        "r_star_plus": r_plus,
        "sigma": cfg.spec.sigma,
        "lambda0": cfg.spec.lambda0,
    }


def classical_curves(p_samples: int = 101, n_trials: int = 100_000, seed: int = 0) -> list[dict]:
    """Analytic and Monte Carlo macrorealist correlators over a uniform grid in p.

    Each grid point gets its own generator seeded from ``(seed, index)``.
    """
    rows = []
    for i, p in enumerate(np.linspace(0.0, 1.0, p_samples)):
        model = FlipModel(float(p))
        res = classical_lg(model)
        mc = monte_carlo_classical(model, n_trials, np.random.SeedSequence([seed, i]).generate_state(1)[0])
        rows.append({
            "p": model.p,
            "k12": res.correlators.k12,
            "k23": res.correlators.k23,
            "k13": res.correlators.k13,
            "k_minus": res.k_minus,
            "k_plus": res.k_plus,
            "mc_k12": mc.k12,
            "mc_k23": mc.k23,
            "mc_k13": mc.k13,
        })
    return rows


def fmt(value: float) -> str:
    return format(float(value), ".17g")


def _write_csv(path, header, rows) -> Path:
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(header)
            for row in rows:
                writer.writerow([fmt(v) for v in row])
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc
    return path


def emit_csv(rows: list[SweepRow], path) -> Path:
    if not rows:
        raise InvalidArgumentError("no sweep rows to write")
    return _write_csv(path, SWEEP_COLUMNS, (r.values() for r in rows))


def emit_tilt_csv(scan, which: str, path) -> Path:
    return _write_csv(path, ("tilt_phase", f"k_{which}"), scan)


def emit_classical_csv(rows: list[dict], path) -> Path:
    header = tuple(rows[0])
    return _write_csv(path, header, ([r[k] for k in header] for r in rows))


def read_sweep_csv(path) -> list[SweepRow]:
    with Path(path).open(newline="") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != SWEEP_COLUMNS:
            raise InvalidArgumentError(f"unexpected columns in {path}: {reader.fieldnames}")
        return [SweepRow(*(float(rec[c]) for c in SWEEP_COLUMNS)) for rec in reader]
