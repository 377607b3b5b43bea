import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from lgsim import quantum as qc
from lgsim.dephasing import (
    DephasingStage,
    SpectralProfile,
    apply_stage_on_system,
    decay_factor,
    dephase_channel,
    dephase_channel_quadrature,
    stage_delay,
)
from lgsim.errors import InvalidArgumentError
from conftest import random_state

C = 2.99792458e8
HBAR = qc.make_plus_state()
# frozen from 33 * 0.78e-6 / 2.99792458e8 and exp(-(d * 3.56e13)**2 / 16)
DELAY_33 = 8.585939810400434e-14
DECAY_33 = 0.5577061050614746


def test_spectral_profile_validation():
    s = SpectralProfile.from_wavelength(0.78e-6, 3.56e13)
    assert s.omega0 == pytest.approx(2 * math.pi * C / 0.78e-6, rel=1e-12)
    with pytest.raises(InvalidArgumentError):
        SpectralProfile.from_wavelength(0.78e-6, 0.0)
    with pytest.raises(InvalidArgumentError):
        SpectralProfile(omega0=1e15, sigma=1e13, lambda0=0.78e-6)


def test_stage_validation():
    with pytest.raises(InvalidArgumentError):
        DephasingStage(-1.0)
    with pytest.raises(InvalidArgumentError):
        DephasingStage(1.0, math.nan)
    stage = DephasingStage.from_thickness(33 * 0.78e-6 / 0.00891)
    assert stage.retardation_waves == pytest.approx(33.0, rel=1e-12)


def test_stage_delay_examples(spec):
    assert stage_delay(DephasingStage(0), spec) == 0.0
    assert stage_delay(DephasingStage(33), spec) == pytest.approx(DELAY_33, rel=1e-12)
    assert stage_delay(DephasingStage(1), spec) == pytest.approx(2.602e-15, rel=1e-3)


def test_decay_factor_examples(spec):
    assert decay_factor(0.0, spec) == 1.0
    assert decay_factor(DELAY_33, spec) == pytest.approx(DECAY_33, rel=1e-12)
    assert round(DECAY_33, 3) == 0.558
    for d in (1e-15, 3e-14, 1e-13):
        assert decay_factor(2 * d, spec) == pytest.approx(decay_factor(d, spec) ** 4, rel=1e-12)
    with pytest.raises(InvalidArgumentError):
        decay_factor(-1e-15, spec)


def test_decay_strictly_decreasing(spec):
    vals = [decay_factor(d, spec) for d in np.linspace(0, 3e-13, 200)]
    assert np.all(np.diff(vals) < 0)


def test_dephase_channel_examples(spec, rng):
    rho = random_state(rng)
    assert dephase_channel(rho, DephasingStage(0.0, 0.0), spec).allclose(rho)
    assert dephase_channel(rho, DephasingStage(0.0, 0.7), spec).allclose(qc.birefringent_phase(rho, 0.7))
    out = dephase_channel(HBAR, DephasingStage(33, 0.0), spec)  # 2*pi*33 carrier phase
    p_h, _ = qc.measure_diag_basis(out)
    assert p_h == pytest.approx((1 + DECAY_33) / 2, abs=1e-12)
    assert round(p_h, 3) == 0.779
    assert np.allclose(np.diag(out.matrix), np.diag(HBAR.matrix))


def test_quadrature_calibration_independent(spec):
    """scipy.integrate.quad over a Gaussian power spectrum of std sigma/(2 sqrt 2)
    reproduces the exp(-d^2 sigma^2 / 16) contraction."""
    s = spec.sigma / (2 * math.sqrt(2))
    d = DELAY_33

    def density(w):
        return math.exp(-0.5 * (w / s) ** 2) / (s * math.sqrt(2 * math.pi))

    re, _ = integrate.quad(lambda w: density(w) * math.cos(w * d), -12 * s, 12 * s, limit=200)
    im, _ = integrate.quad(lambda w: density(w) * math.sin(w * d), -12 * s, 12 * s, limit=200)
    assert re == pytest.approx(DECAY_33, abs=1e-10)
    assert abs(im) < 1e-12


def test_quadrature_examples(spec, rng):
    rho = random_state(rng)
    assert np.array_equal(dephase_channel_quadrature(rho, DephasingStage(0.0), spec).matrix, rho.matrix)
    quad = dephase_channel_quadrature(rho, DephasingStage(33, 0.3), spec, 2048)
    assert abs(quad.matrix[1, 0]) == pytest.approx(DECAY_33 * abs(rho.matrix[1, 0]), abs=1e-6)
    with pytest.raises(InvalidArgumentError):
        dephase_channel_quadrature(rho, DephasingStage(1.0), spec, 63)


def test_quadrature_matches_analytic_with_1024_points(spec, rng):
    for _ in range(25):
        rho = random_state(rng)
        st_ = DephasingStage(rng.uniform(0, 60), rng.uniform(0, 2 * math.pi))
        quad = dephase_channel_quadrature(rho, st_, spec, 1024)
        assert np.max(np.abs(quad.matrix - dephase_channel(rho, st_, spec).matrix)) <= 1e-6


def test_two_stage_composition_is_not_a_double_plate(spec, rng):
    rho = random_state(rng)
    st_ = DephasingStage(21.3, 0.4)
    d = stage_delay(st_, spec)
    x = decay_factor(d, spec)
    twice = dephase_channel(dephase_channel(rho, st_, spec), st_, spec)
    expected = rho.matrix[1, 0] * x**2 * np.exp(2j * (spec.omega0 * d + 0.4))
    assert twice.matrix[1, 0] == pytest.approx(expected, abs=1e-12)
    double = dephase_channel(rho, st_.doubled(), spec)
    assert abs(double.matrix[1, 0]) == pytest.approx(abs(rho.matrix[1, 0]) * x**4, abs=1e-12)


def test_coherent_limit(spec, rng):
    # the carrier phase omega0 * d remains; the envelope is 1 to within 1e-9
    rho = random_state(rng)
    st_ = DephasingStage(1e-6, 1.2)
    carrier = spec.omega0 * stage_delay(st_, spec)
    assert dephase_channel(rho, st_, spec).allclose(qc.birefringent_phase(rho, carrier + 1.2), atol=1e-9)


def test_apply_stage_on_system(spec, rng):
    anc = qc.ancilla_ground()
    joint = qc.tensor(random_state(rng), anc)
    assert apply_stage_on_system(joint, DephasingStage(0, 0), spec).allclose(joint)
    rho = random_state(rng)
    st_ = DephasingStage(12.7, 2.2)
    lifted = qc.partial_trace_path(apply_stage_on_system(qc.tensor(rho, anc), st_, spec))
    assert lifted.allclose(dephase_channel(rho, st_, spec))


def test_post_cnot_stage_matches_stepwise(spec):
    st_ = DephasingStage(17.4, 0.9)
    rho2 = dephase_channel(HBAR, st_, spec)
    joint = qc.apply_cnot(qc.tensor(rho2, qc.ancilla_ground()))
    probs = qc.joint_diag_path_probabilities(apply_stage_on_system(joint, st_, spec))
    p_h, p_v = qc.measure_diag_basis(rho2)
    from_h = qc.measure_diag_basis(dephase_channel(qc.collapse_diag(rho2, +1), st_, spec))
    from_v = qc.measure_diag_basis(dephase_channel(qc.collapse_diag(rho2, -1), st_, spec))
    # readout order: (+1, path0), (+1, path1), (-1, path0), (-1, path1)
    expected = [p_h * from_h[0], p_v * from_v[0], p_h * from_h[1], p_v * from_v[1]]
    assert probs == pytest.approx(expected, abs=1e-12)


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), r=st.floats(0, 200), tilt=st.floats(-20, 20))
def test_channel_output_valid(seed, r, tilt):
    spec = SpectralProfile.from_wavelength()
    rho = random_state(np.random.default_rng(seed))
    m = dephase_channel(rho, DephasingStage(r, tilt), spec).matrix
    assert np.max(np.abs(m - m.conj().T)) <= 1e-12
    assert abs(np.trace(m) - 1) <= 1e-12
    assert np.linalg.eigvalsh(m).min() >= -1e-10


def test_coherence_monotone_in_retardation(spec, rng):
    rho = random_state(rng)
    mags = [abs(dephase_channel(rho, DephasingStage(r, 0.5), spec).matrix[0, 1])
            for r in np.linspace(0, 60, 300)]
    assert np.all(np.diff(mags) <= 0)
