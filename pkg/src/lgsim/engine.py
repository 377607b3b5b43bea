"""Two-time correlators, the Wigner-type Leggett-Garg combinations and the
quantum-to-classical transition threshold.

Both inequalities read ``K13 - K12 - K23 >= -1`` (minus form) and
``K13 + K12 + K23 >= -1`` (plus form).  The system starts in ``|Hbar>`` so
``Q(t1) = +1`` and ``K12`` reduces to ``<Q(t2)>``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .dephasing import (
    CONSTANTS,
    DephasingStage,
    SpectralProfile,
    apply_stage_on_system,
    decay_factor,
    dephase_channel,
    stage_delay,
)
from .errors import BracketFailureError, DegenerateCollapseError, InvalidArgumentError
from .quantum import (
    ancilla_ground,
    apply_cnot,
    collapse_diag,
    joint_diag_path_probabilities,
    make_plus_state,
    measure_diag_basis,
    tensor,
)

VIOLATION_TOL = 1e-9
CLASSICAL_BOUND = -1.0
QUANTUM_BOUND = -1.5
TWO_PI = 2 * math.pi

DEFAULT_TILT_SAMPLES = 3600
THRESHOLD_BRACKET = (0.0, 200.0)

# eigenvalue products for the joint readout order of joint_diag_path_probabilities;
# path 0 (transmitted, "path 1") records Q(t2) = +1
_Q3 = np.array([+1, +1, -1, -1])
_Q2 = np.array([+1, -1, +1, -1])


@dataclass(frozen=True)
class ExperimentConfig:
    """One retardation/tilt pair shared by both stages, so U = U' by construction."""

    spec: SpectralProfile
    retardation_waves: float = 0.0
    tilt_phase: float = 0.0

    @property
    def stage(self) -> DephasingStage:
        return DephasingStage(self.retardation_waves, self.tilt_phase)


@dataclass(frozen=True)
class CorrelatorSet:
    k12: float
    k23: float
    k13: float

    def __post_init__(self):
        for name in ("k12", "k23", "k13"):
            v = getattr(self, name)
            if not (-1 - VIOLATION_TOL <= v <= 1 + VIOLATION_TOL):
                raise InvalidArgumentError(f"{name}={v!r} outside [-1, 1]")


@dataclass(frozen=True)
class LGResult:
    correlators: CorrelatorSet
    k_minus: float
    k_plus: float
    violates_minus: bool
    violates_plus: bool

    @classmethod
    def from_correlators(cls, c: CorrelatorSet) -> "LGResult":
        k_minus = c.k13 - c.k12 - c.k23
        k_plus = c.k13 + c.k12 + c.k23
        return cls(
            correlators=c,
            k_minus=k_minus,
            k_plus=k_plus,
            violates_minus=k_minus < CLASSICAL_BOUND - VIOLATION_TOL,
            violates_plus=k_plus < CLASSICAL_BOUND - VIOLATION_TOL,
        )


def _q_expectation(state) -> float:
    p_h, p_v = measure_diag_basis(state)
    return p_h - p_v


def correlator_12(cfg: ExperimentConfig) -> float:
    return _q_expectation(dephase_channel(make_plus_state(), cfg.stage, cfg.spec))


def correlator_13(cfg: ExperimentConfig) -> float:
    """K(t1, t3) with both stages acting on the same photon frequency.

    The phase ``2 * w * d`` is accumulated before the spectral average, which is
    a single stage of doubled delay and tilt: envelope ``decay(d)**4``.
    """
    return _q_expectation(dephase_channel(make_plus_state(), cfg.stage.doubled(), cfg.spec))


def correlator_13_independent(cfg: ExperimentConfig) -> float:
    """K(t1, t3) for two statistically independent environments (envelope ``decay(d)**2``).

    Kept for contrast only; the experiment's stages share one spectrum.
    """
    rho = dephase_channel(make_plus_state(), cfg.stage, cfg.spec)
    return _q_expectation(dephase_channel(rho, cfg.stage, cfg.spec))


def correlator_23_cnot(cfg: ExperimentConfig) -> float:
    """K(t2, t3) with Q(t2) copied onto the path by a CNOT, then read out at t3."""
    state = tensor(make_plus_state(), ancilla_ground())
    state = apply_stage_on_system(state, cfg.stage, cfg.spec)
    state = apply_cnot(state)
    state = apply_stage_on_system(state, cfg.stage, cfg.spec)
    probs = joint_diag_path_probabilities(state)
    return float(np.sum(_Q2 * _Q3 * probs))


def correlator_23_stepwise(cfg: ExperimentConfig) -> float:
    """K(t2, t3) by explicit branch bookkeeping: measure, collapse, evolve, measure."""
    rho2 = dephase_channel(make_plus_state(), cfg.stage, cfg.spec)
    weights = dict(zip((+1, -1), measure_diag_basis(rho2)))
    total = 0.0
    for q2, weight in weights.items():
        try:
            branch = collapse_diag(rho2, q2)
        except DegenerateCollapseError:
            continue
        total += weight * q2 * _q_expectation(dephase_channel(branch, cfg.stage, cfg.spec))
    return total


def evaluate_lg(cfg: ExperimentConfig) -> LGResult:
    c = CorrelatorSet(k12=correlator_12(cfg), k23=correlator_23_cnot(cfg), k13=correlator_13(cfg))
    return LGResult.from_correlators(c)


def closed_form_k_minus(delta):
    return np.cos(2 * delta) - 2 * np.cos(delta)


def closed_form_k_plus(delta):
    return np.cos(2 * delta) + 2 * np.cos(delta)


def _total_phase(retardation, delta, spec: SpectralProfile):
    d = stage_delay(DephasingStage(retardation), spec)
    return d, spec.omega0 * d + delta


def closed_form_decohered(retardation: float, delta, spec: SpectralProfile):
    """Dephased ``(K_minus, K_plus)`` at tilt ``delta``; vectorized in ``delta``."""
    d, phi = _total_phase(retardation, delta, spec)
    x = decay_factor(d, spec)
    two_stage = np.cos(2 * phi) * x**4
    one_stage = 2 * np.cos(phi) * x
    return two_stage - one_stage, two_stage + one_stage


def _select(which: str) -> int:
    if which not in ("minus", "plus"):
        raise InvalidArgumentError(f"which must be 'minus' or 'plus', got {which!r}")
    return 0 if which == "minus" else 1


def envelope_extrema(retardation: float, spec: SpectralProfile, which: str = "minus",
                     samples: int = DEFAULT_TILT_SAMPLES) -> tuple[float, float, float]:
    """Extrema of K over the tilt phase: ``(min, max, argmin_tilt)``.

    Dense grid on ``[0, 2pi)`` followed by bounded Brent refinement around the
    best grid node on each side.
    """
    idx = _select(which)
    if samples < 360:
        raise InvalidArgumentError(f"samples must be >= 360, got {samples}")
    grid = np.linspace(0.0, TWO_PI, samples, endpoint=False)
    values = closed_form_decohered(retardation, grid, spec)[idx]
    h = grid[1]

    def refine(sign):
        i = int(np.argmin(sign * values))
        res = optimize.minimize_scalar(
            lambda t: sign * closed_form_decohered(retardation, t, spec)[idx],
            bounds=(grid[i] - h, grid[i] + h), method="bounded",
            options={"xatol": 1e-10},
        )
        if sign * res.fun < sign * values[i]:
            return float(sign * res.fun), float(res.x) % TWO_PI
        return float(values[i]), float(grid[i])

    k_min, arg_min = refine(+1)
    k_max, _ = refine(-1)
    return k_min, k_max, arg_min


def find_transition(spec: SpectralProfile, which: str = "minus",
                    samples: int = DEFAULT_TILT_SAMPLES) -> float:
    """Smallest retardation (waves) where the envelope minimum reaches the classical bound."""
    _select(which)

    def g(r):
        return envelope_extrema(r, spec, which, samples)[0] - CLASSICAL_BOUND

    lo, hi = THRESHOLD_BRACKET
    g_lo, g_hi = g(lo), g(hi)
    if not (g_lo < 0 < g_hi):
        raise BracketFailureError(
            f"no sign change on [{lo}, {hi}] waves: g={g_lo:.3e}, {g_hi:.3e}"
        )
    r_star = optimize.bisect(g, lo, hi, xtol=1e-11, rtol=4 * np.finfo(float).eps, maxiter=200)
    if abs(g(r_star)) > 1e-9:
        raise BracketFailureError(f"bisection stalled at R={r_star!r} with g={g(r_star):.3e}")
    return float(r_star)


def analytic_transition(spec: SpectralProfile) -> float:
    """Independent check of find_transition.

    At the crossing the minimizing phase sits at the branch endpoint, where
    ``x**4 - 2x = -1``; the nontrivial root solves ``x**3 + x**2 + x = 1``.
    """
    roots = np.roots([1.0, 1.0, 1.0, -1.0])
    x = float(next(r.real for r in roots if abs(r.imag) < 1e-12 and 0 < r.real < 1))
    x = optimize.newton(lambda v: v**3 + v**2 + v - 1, x, fprime=lambda v: 3 * v**2 + 2 * v + 1)
    return 4 * math.sqrt(-math.log(x)) * CONSTANTS.c / (spec.sigma * spec.lambda0)
