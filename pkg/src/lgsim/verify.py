"""Self-check of every model invariant, used by ``lgsim verify``.

Each check returns its measured residual and the tolerance it is held to.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
import numpy as np

from . import quantum as qc
from .classical import FlipModel, classical_correlators, classical_lg, monte_carlo_classical
from .dephasing import (
    DephasingStage,
    SpectralProfile,
    apply_stage_on_system,
    decay_factor,
    dephase_channel,
    dephase_channel_quadrature,
    stage_delay,
)
from .engine import (
    ExperimentConfig,
    analytic_transition,
    closed_form_decohered,
    closed_form_k_minus,
    closed_form_k_plus,
    correlator_12,
    correlator_23_cnot,
    correlator_23_stepwise,
    envelope_extrema,
    evaluate_lg,
    find_transition,
)
from .sweep import SweepConfig, run_envelope_sweep


@dataclass
class CheckResult:
    name: str
    residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(self.residual <= self.tolerance)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name:<44s} residual={self.residual:.3e}  tol={self.tolerance:.1e}"


def random_qubit_state(rng) -> qc.QubitState:
    a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    m = a @ a.conj().T
    return qc.QubitState(m / np.trace(m).real)


def density_residual(m: np.ndarray) -> float:
    """Worst violation of Hermiticity, unit trace and positivity."""
    herm = np.max(np.abs(m - m.conj().T))
    tr = abs(np.trace(m) - 1)
    neg = max(0.0, -float(np.linalg.eigvalsh(0.5 * (m + m.conj().T)).min()))
    return float(max(herm, tr, neg))


def _quantum_checks(rng):
    worst_density = worst_add = worst_inv = worst_record = worst_collapse = 0.0
    anc = qc.ancilla_ground()
    for _ in range(200):
        rho = random_qubit_state(rng)
        a, b = rng.uniform(-10, 10, size=2)
        ra = qc.birefringent_phase(rho, a)
        joint = qc.tensor(rho, anc)
        cn = qc.apply_cnot(joint)
        for m in (ra.matrix, cn.matrix, qc.apply_on_system(joint, b).matrix):
            worst_density = max(worst_density, density_residual(m))
        two = qc.birefringent_phase(ra, b)
        worst_add = max(worst_add, np.max(np.abs(two.matrix - qc.birefringent_phase(rho, a + b).matrix)))
        worst_inv = max(worst_inv, np.max(np.abs(qc.apply_cnot(cn).matrix - joint.matrix)))
        probs = qc.joint_diag_path_probabilities(cn)
        p_h, p_v = qc.measure_diag_basis(rho)
        worst_record = max(worst_record, abs(probs[0] + probs[2] - p_h), abs(probs[1] + probs[3] - p_v))
        ph2, pv2 = qc.measure_diag_basis(qc.collapse_diag(rho, +1))
        worst_collapse = max(worst_collapse, abs(ph2 - 1), abs(pv2))
    return [
        CheckResult("quantum: density invariants preserved", worst_density, 1e-10),
        CheckResult("quantum: phase additivity", worst_add, 1e-12),
        CheckResult("quantum: CNOT involution", worst_inv, 1e-12),
        CheckResult("quantum: ancilla records Q(t2)", worst_record, 1e-12),
        CheckResult("quantum: collapse then measure", worst_collapse, 1e-12),
    ]


def _dephasing_checks(rng, spec):
    worst_cptp = worst_comp = worst_coh = worst_quad = worst_mono = worst_lift = 0.0
    anc = qc.ancilla_ground()
    for _ in range(100):
        rho = random_qubit_state(rng)
        r, tilt = rng.uniform(0, 60), rng.uniform(0, 2 * math.pi)
        st = DephasingStage(r, tilt)
        out = dephase_channel(rho, st, spec)
        worst_cptp = max(worst_cptp, density_residual(out.matrix))
        x = decay_factor(stage_delay(st, spec), spec)
        two = dephase_channel(out, st, spec)
        expect = rho.matrix[1, 0] * x**2 * np.exp(2j * (spec.omega0 * stage_delay(st, spec) + tilt))
        worst_comp = max(worst_comp, abs(two.matrix[1, 0] - expect))
        # the carrier phase omega0 * d survives the limit; only the envelope goes to 1
        tiny = DephasingStage(rng.uniform(0, 1e-6), tilt)
        carrier = spec.omega0 * stage_delay(tiny, spec)
        worst_coh = max(worst_coh, np.max(np.abs(
            dephase_channel(rho, tiny, spec).matrix
            - qc.birefringent_phase(rho, carrier + tilt).matrix)))
        lifted = qc.partial_trace_path(apply_stage_on_system(qc.tensor(rho, anc), st, spec))
        worst_lift = max(worst_lift, np.max(np.abs(lifted.matrix - out.matrix)))
        quad = dephase_channel_quadrature(rho, st, spec, 2048)
        worst_quad = max(worst_quad, np.max(np.abs(quad.matrix - out.matrix)))
    rho = random_qubit_state(rng)
    mags = [abs(dephase_channel(rho, DephasingStage(r), spec).matrix[1, 0]) for r in np.linspace(0, 60, 200)]
    worst_mono = max(0.0, float(np.max(np.diff(mags))))
    return [
        CheckResult("dephasing: output is a valid state", worst_cptp, 1e-10),
        CheckResult("dephasing: two stages contract by decay^2", worst_comp, 1e-12),
        CheckResult("dephasing: coherent limit", worst_coh, 1e-9),
        CheckResult("dephasing: bipartite lift traces back", worst_lift, 1e-12),
        CheckResult("dephasing: quadrature oracle agreement", worst_quad, 1e-6),
        CheckResult("dephasing: coherence monotone in retardation", worst_mono, 0.0),
    ]


def _engine_checks(rng, spec):
    worst_stat = worst_tri = worst_cf = worst_bound = 0.0
    for _ in range(300):
        cfg = ExperimentConfig(spec, rng.uniform(0, 60), rng.uniform(0, 2 * math.pi))
        k12, k23 = correlator_12(cfg), correlator_23_cnot(cfg)
        worst_stat = max(worst_stat, abs(k23 - k12))
        worst_tri = max(worst_tri, abs(k23 - correlator_23_stepwise(cfg)))
        res = evaluate_lg(cfg)
        worst_bound = max(worst_bound, -1.5 - res.k_minus, -1.5 - res.k_plus)
        cf = closed_form_decohered(cfg.retardation_waves, cfg.tilt_phase, spec)
        worst_cf = max(worst_cf, abs(res.k_minus - cf[0]), abs(res.k_plus - cf[1]))
        coh = evaluate_lg(ExperimentConfig(spec, 0.0, cfg.tilt_phase))
        worst_cf = max(worst_cf, abs(coh.k_minus - closed_form_k_minus(cfg.tilt_phase)),
                       abs(coh.k_plus - closed_form_k_plus(cfg.tilt_phase)))
    deltas = rng.uniform(-10, 10, size=1000)
    mirror = float(np.max(np.abs(closed_form_k_plus(deltas) - closed_form_k_minus(math.pi - deltas))))
    mins = [envelope_extrema(r, spec, "minus")[0] for r in np.linspace(0, 60, 200)]
    mono = max(0.0, -float(np.min(np.diff(mins))))
    r_star = find_transition(spec)
    oracle = abs(r_star - analytic_transition(spec))
    return [
        CheckResult("engine: stationarity K23 == K12", worst_stat, 1e-12),
        CheckResult("engine: CNOT vs stepwise K23", worst_tri, 1e-12),
        CheckResult("engine: protocol vs closed forms", worst_cf, 1e-12),
        CheckResult("engine: quantum bound -1.5", max(worst_bound, 0.0), 1e-9),
        CheckResult("engine: envelope monotone in R", mono, 1e-12),
        CheckResult("engine: mirror symmetry", mirror, 1e-12),
        CheckResult("engine: threshold vs analytic root", oracle, 1e-6),
    ]


def _classical_checks(rng):
    ps = np.linspace(0, 1, 10_000)
    ident = viol = stat = 0.0
    for p in ps:
        res = classical_lg(FlipModel(float(p)))
        ident = max(ident, abs(res.k_minus + 1 - 4 * p * p), abs(res.k_plus + 1 - 4 * (p - 1) ** 2))
        viol = max(viol, -1 - res.k_minus, -1 - res.k_plus)
        stat = max(stat, abs(res.correlators.k12 - res.correlators.k23))
    n = 100_000
    worst_mc = 0.0
    for p in np.arange(1, 10) / 10:
        exact = classical_correlators(FlipModel(float(p)))
        mc = monte_carlo_classical(FlipModel(float(p)), n, int(rng.integers(2**31)))
        dev = max(abs(mc.k12 - exact.k12), abs(mc.k23 - exact.k23), abs(mc.k13 - exact.k13))
        worst_mc = max(worst_mc, dev * math.sqrt(n))
    return [
        CheckResult("classical: quadratic identities", ident, 1e-15),
        CheckResult("classical: never violates", max(viol, 0.0), 0.0),
        CheckResult("classical: stationarity", stat, 0.0),
        CheckResult("classical: Monte Carlo within 4 std errors", worst_mc, 4.0),
    ]


def _sweep_checks(spec):
    rows = run_envelope_sweep(SweepConfig(spec=spec, r_min=0, r_max=200, r_step=0.5))
    mins = np.array([r.env_min_minus for r in rows]) + 1
    crossings = int(np.sum(np.diff(np.sign(mins)) != 0))
    envelope_order = max(0.0, max(r.env_min_minus - r.env_max_minus for r in rows))
    scaling = []
    base = find_transition(spec)
    for f in (0.5, 2.0):
        other = SpectralProfile.from_wavelength(spec.lambda0, spec.sigma * f)
        scaling.append(abs(find_transition(other) * f / base - 1))
    return [
        CheckResult("sweep: single crossing of -1 on [0, 200]", abs(crossings - 1), 0),
        CheckResult("sweep: env_min <= env_max", envelope_order, 0.0),
        CheckResult("sweep: R_star scales as 1/sigma", max(scaling), 0.01),
    ]


def run_all_checks(spec: SpectralProfile | None = None, seed: int = 0) -> list[CheckResult]:
    spec = spec or SpectralProfile.from_wavelength()
    rng = np.random.default_rng(seed)
    return [
        *_quantum_checks(rng),
        *_dephasing_checks(rng, spec),
        *_engine_checks(rng, spec),
        *_classical_checks(rng),
        *_sweep_checks(spec),
    ]
