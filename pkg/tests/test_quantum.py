import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lgsim import quantum as qc
from lgsim.errors import DegenerateCollapseError, InvalidArgumentError, NumericalConsistencyError
from conftest import random_state

HBAR = qc.make_plus_state()
VBAR = qc.QubitState.from_ket(qc.KET_VBAR)
ANC0 = qc.ancilla_ground()
ANC1 = qc.QubitState.from_ket([0, 1])
MIXED = qc.maximally_mixed()

phases = st.floats(-50, 50, allow_nan=False)


def test_plus_state_matrix():
    assert np.allclose(HBAR.matrix, [[0.5, 0.5], [0.5, 0.5]], atol=1e-15)
    assert np.trace(HBAR.matrix).real == pytest.approx(1.0, abs=1e-15)
    assert HBAR.purity() == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("bad", [
    np.array([[1, 0], [0, 1]]),            # trace 2
    np.array([[0.5, 1], [0, 0.5]]),        # not Hermitian
    np.array([[1.5, 0], [0, -0.5]]),       # negative eigenvalue
    np.eye(3) / 3,
])
def test_invalid_density_matrices_rejected(bad):
    with pytest.raises(InvalidArgumentError):
        qc.QubitState(bad)


def test_state_matrix_is_read_only():
    with pytest.raises(ValueError):
        HBAR.matrix[0, 0] = 1.0


def test_outcome_values():
    assert qc.ObservableOutcome(-1).value == -1
    with pytest.raises(InvalidArgumentError):
        qc.ObservableOutcome(0)


def test_birefringent_phase_examples():
    assert qc.birefringent_phase(HBAR, 0.0).allclose(HBAR)
    flipped = qc.birefringent_phase(HBAR, math.pi)
    assert np.allclose(flipped.matrix, [[0.5, -0.5], [-0.5, 0.5]], atol=1e-15)
    # |(1 + e^{i pi/3}) / 2|^2 by hand, against the matrix route
    amp = (1 + complex(math.cos(math.pi / 3), math.sin(math.pi / 3))) / 2
    p_h, _ = qc.measure_diag_basis(qc.birefringent_phase(HBAR, math.pi / 3))
    assert p_h == pytest.approx(abs(amp) ** 2, abs=1e-15)
    assert p_h == pytest.approx(0.75, abs=1e-15)


@pytest.mark.parametrize("phase", [math.nan, math.inf, -math.inf])
def test_birefringent_phase_rejects_non_finite(phase):
    with pytest.raises(InvalidArgumentError):
        qc.birefringent_phase(HBAR, phase)
    with pytest.raises(InvalidArgumentError):
        qc.apply_on_system(qc.tensor(HBAR, ANC0), phase)


def test_measure_diag_basis_examples():
    assert qc.measure_diag_basis(HBAR) == pytest.approx((1.0, 0.0), abs=1e-15)
    assert qc.measure_diag_basis(MIXED) == pytest.approx((0.5, 0.5), abs=1e-15)
    quarter_wave = qc.birefringent_phase(HBAR, math.pi / 2)
    assert qc.measure_diag_basis(quarter_wave) == pytest.approx((0.5, 0.5), abs=1e-15)


def test_probability_clamp_limits():
    assert qc._clamp_probability(-1e-13) == 0.0
    assert qc._clamp_probability(1 + 1e-13) == 1.0
    with pytest.raises(NumericalConsistencyError):
        qc._clamp_probability(1 + 1e-6)


def test_collapse_examples():
    assert qc.collapse_diag(MIXED, +1).allclose(HBAR)
    assert qc.collapse_diag(MIXED, qc.ObservableOutcome(-1)).allclose(VBAR)
    with pytest.raises(DegenerateCollapseError):
        qc.collapse_diag(HBAR, -1)
    rotated = qc.birefringent_phase(HBAR, math.pi / 3)
    assert qc.collapse_diag(rotated, +1).allclose(HBAR)


def test_tensor_and_partial_trace():
    joint = qc.tensor(MIXED, ANC0)
    expected = np.diag([0.5, 0, 0.5, 0])
    assert np.allclose(joint.matrix, expected)
    assert np.trace(joint.matrix).real == pytest.approx(1.0)
    assert qc.partial_trace_path(qc.tensor(HBAR, ANC0)).allclose(HBAR)
    assert qc.partial_trace_polarization(qc.tensor(HBAR, ANC1)).allclose(ANC1)
    assert qc.tensor(HBAR, ANC0).purity() == pytest.approx(1.0, abs=1e-12)


def test_cnot_examples():
    start = qc.tensor(HBAR, ANC0)
    assert qc.apply_cnot(start).allclose(start)
    assert qc.apply_cnot(qc.tensor(VBAR, ANC0)).allclose(qc.tensor(VBAR, ANC1))


def test_cnot_unitary():
    u = qc.CNOT_DIAG
    assert np.allclose(u @ u.conj().T, np.eye(4), atol=1e-15)
    assert np.allclose(u @ u, np.eye(4), atol=1e-15)


def test_apply_on_system_examples(rng):
    start = qc.tensor(HBAR, ANC0)
    assert qc.apply_on_system(start, 0.0).allclose(start)
    assert qc.apply_on_system(start, math.pi).allclose(qc.tensor(VBAR, ANC0))
    for _ in range(20):
        rho, sigma = random_state(rng), random_state(rng)
        phi = rng.uniform(-10, 10)
        lifted = qc.partial_trace_path(qc.apply_on_system(qc.tensor(rho, sigma), phi))
        assert lifted.allclose(qc.birefringent_phase(rho, phi))


def test_joint_probabilities_examples():
    assert qc.joint_diag_path_probabilities(qc.tensor(HBAR, ANC0)) == pytest.approx([1, 0, 0, 0], abs=1e-15)
    uniform = qc.BipartiteState(np.eye(4) / 4)
    assert qc.joint_diag_path_probabilities(uniform) == pytest.approx([0.25] * 4, abs=1e-15)
    rotated = qc.birefringent_phase(HBAR, math.pi / 3)
    probs = qc.joint_diag_path_probabilities(qc.apply_cnot(qc.tensor(rotated, ANC0)))
    assert probs[1] + probs[3] == pytest.approx(math.sin(math.pi / 6) ** 2, abs=1e-12)


@settings(max_examples=60, deadline=None)
@given(a=phases, b=phases, seed=st.integers(0, 2**32 - 1))
def test_phase_additivity(a, b, seed):
    rho = random_state(np.random.default_rng(seed))
    twice = qc.birefringent_phase(qc.birefringent_phase(rho, a), b)
    assert twice.allclose(qc.birefringent_phase(rho, a + b), atol=1e-12)


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), phi=phases)
def test_operations_keep_valid_states(seed, phi):
    rng = np.random.default_rng(seed)
    rho = random_state(rng)
    joint = qc.tensor(rho, random_state(rng))
    for out in (qc.apply_cnot(joint), qc.apply_on_system(joint, phi)):
        m = out.matrix
        assert np.max(np.abs(m - m.conj().T)) <= 1e-12
        assert abs(np.trace(m) - 1) <= 1e-12
        assert np.linalg.eigvalsh(m).min() >= -1e-10
    # CNOT is an involution
    assert qc.apply_cnot(qc.apply_cnot(joint)).allclose(joint, atol=1e-12)


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_ancilla_records_q_faithfully(seed):
    rho = random_state(np.random.default_rng(seed))
    probs = qc.joint_diag_path_probabilities(qc.apply_cnot(qc.tensor(rho, ANC0)))
    p_h, p_v = qc.measure_diag_basis(rho)
    assert probs[0] + probs[2] == pytest.approx(p_h, abs=1e-12)
    assert probs[1] + probs[3] == pytest.approx(p_v, abs=1e-12)
    # the ancilla copy is perfectly correlated with the polarization outcome
    assert probs[1] + probs[2] == pytest.approx(0.0, abs=1e-12)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_collapse_then_measure(seed):
    rho = random_state(np.random.default_rng(seed))
    assert qc.measure_diag_basis(qc.collapse_diag(rho, +1)) == pytest.approx((1.0, 0.0), abs=1e-12)


def test_collapse_matches_projection_formula(rng):
    for _ in range(20):
        rho = random_state(rng)
        for q, proj in ((+1, qc.PROJ_HBAR), (-1, qc.PROJ_VBAR)):
            direct = proj @ rho.matrix @ proj
            direct = direct / np.trace(direct).real
            assert np.allclose(qc.collapse_diag(rho, q).matrix, direct, atol=1e-12)
