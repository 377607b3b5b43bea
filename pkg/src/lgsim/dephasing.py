"""Quartz-plate environment: frequency-averaged birefringent dephasing.

A plate of retardation ``R`` waves (optical path difference ``L * dn = R * lambda0``)
delays the extraordinary ray by ``d = R * lambda0 / c`` seconds, so a photon of
angular frequency ``w`` picks up the relative phase ``w * d``.  Averaging over a
Gaussian spectrum contracts the H/V coherence by ``exp(-d**2 * sigma**2 / 16)``.
"""
from __future__ import annotations

import math
from functools import lru_cache
from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError
from .quantum import BipartiteState, QubitState, birefringent_phase

SPEED_OF_LIGHT = 2.99792458e8  # m/s, exact
DEFAULT_LAMBDA0 = 0.78e-6  # m
DEFAULT_SIGMA = 3.56e13  # rad/s
QUARTZ_BIREFRINGENCE = 0.00891  # crystal quartz near 780 nm

QUADRATURE_SPAN = 8.0  # half-width of the node range, in power-spectrum std
DEFAULT_QUADRATURE_POINTS = 2048
MIN_QUADRATURE_POINTS = 64


@dataclass(frozen=True)
class PhysicalConstants:
    c: float = SPEED_OF_LIGHT


CONSTANTS = PhysicalConstants()


@dataclass(frozen=True)
class SpectralProfile:
    """Gaussian photon spectrum.

    ``sigma`` is the spread (rad/s) entering the closed-form envelopes; the power
    spectrum itself has standard deviation ``sigma / (2 * sqrt(2))``.
    """

    omega0: float
    sigma: float
    lambda0: float

    def __post_init__(self):
        for name in ("omega0", "sigma", "lambda0"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise InvalidArgumentError(f"{name} must be finite and > 0, got {value!r}")
        expected = 2 * math.pi * CONSTANTS.c / self.lambda0
        if abs(self.omega0 - expected) > 1e-9 * expected:
            raise InvalidArgumentError("omega0 is inconsistent with lambda0")

    @classmethod
    def from_wavelength(cls, lambda0: float = DEFAULT_LAMBDA0, sigma: float = DEFAULT_SIGMA):
        if not (math.isfinite(lambda0) and lambda0 > 0):
            raise InvalidArgumentError(f"lambda0 must be finite and > 0, got {lambda0!r}")
        return cls(omega0=2 * math.pi * CONSTANTS.c / lambda0, sigma=sigma, lambda0=lambda0)

    @property
    def power_std(self) -> float:
        return self.sigma / (2 * math.sqrt(2))


@dataclass(frozen=True)
class DephasingStage:
    """One pass through a quartz set: fixed plate retardation plus tilt phase."""

    retardation_waves: float
    tilt_phase: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.retardation_waves) and self.retardation_waves >= 0):
            raise InvalidArgumentError(
                f"retardation_waves must be finite and >= 0, got {self.retardation_waves!r}"
            )
        if not math.isfinite(self.tilt_phase):
            raise InvalidArgumentError(f"tilt_phase must be finite, got {self.tilt_phase!r}")

    @classmethod
    def from_thickness(cls, thickness, lambda0=DEFAULT_LAMBDA0, tilt_phase=0.0,
                       delta_n=QUARTZ_BIREFRINGENCE):
        """Build a stage from a physical plate thickness in meters."""
        return cls(thickness * delta_n / lambda0, tilt_phase)

    def doubled(self) -> "DephasingStage":
        """Two identical passes seen by the same photon: phases and delays add."""
        return DephasingStage(2 * self.retardation_waves, 2 * self.tilt_phase)


def stage_delay(stage: DephasingStage, spec: SpectralProfile) -> float:
    """Group delay in seconds between the ordinary and extraordinary rays."""
    return stage.retardation_waves * spec.lambda0 / CONSTANTS.c


def decay_factor(delay: float, spec: SpectralProfile) -> float:
    if delay < 0:
        raise InvalidArgumentError(f"delay must be >= 0, got {delay!r}")
    return math.exp(-(delay * spec.sigma) ** 2 / 16)


def coherence_factor(stage: DephasingStage, spec: SpectralProfile) -> complex:
    """Complex multiplier applied to the ``|V><H|`` element by one stage."""
    d = stage_delay(stage, spec)
    return decay_factor(d, spec) * np.exp(1j * (spec.omega0 * d + stage.tilt_phase))


def _contract(matrix: np.ndarray, factor: complex) -> np.ndarray:
    out = np.array(matrix, dtype=complex)
    out[1, 0] *= factor
    out[0, 1] *= np.conj(factor)
    return out


def dephase_channel(state: QubitState, stage: DephasingStage, spec: SpectralProfile) -> QubitState:
    return QubitState(_contract(state.matrix, coherence_factor(stage, spec)))


@lru_cache(maxsize=8)
def _legendre(n_points: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(n_points)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def quadrature_nodes(spec: SpectralProfile, n_points: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes over ``omega0 +/- 8`` power-spectrum deviations,
    with weights carrying the normalized Gaussian density."""
    if n_points < MIN_QUADRATURE_POINTS:
        raise InvalidArgumentError(f"n_points must be >= {MIN_QUADRATURE_POINTS}, got {n_points}")
    s = spec.power_std
    x, w = _legendre(n_points)
    offsets = QUADRATURE_SPAN * s * x
    density = np.exp(-0.5 * (offsets / s) ** 2)
    weights = w * density
    return spec.omega0 + offsets, weights / weights.sum()


def dephase_channel_quadrature(state: QubitState, stage: DephasingStage, spec: SpectralProfile,
                               n_points: int = DEFAULT_QUADRATURE_POINTS) -> QubitState:
    """Numerically average ``birefringent_phase(state, w * d + tilt)`` over the spectrum."""
    omegas, weights = quadrature_nodes(spec, n_points)
    d = stage_delay(stage, spec)
    if d == 0.0:
        return birefringent_phase(state, stage.tilt_phase)
    phases = omegas * d + stage.tilt_phase
    u = np.zeros((len(phases), 2, 2), dtype=complex)
    u[:, 0, 0] = 1.0
    u[:, 1, 1] = np.exp(1j * phases)
    rotated = u @ state.matrix @ np.conj(np.transpose(u, (0, 2, 1)))
    averaged = np.tensordot(weights, rotated, axes=1)
    return QubitState(0.5 * (averaged + averaged.conj().T))


def apply_stage_on_system(state: BipartiteState, stage: DephasingStage,
                          spec: SpectralProfile) -> BipartiteState:
    """Dephase the polarization factor of a polarization (x) path state."""
    factor = coherence_factor(stage, spec)
    m = np.array(state.matrix, dtype=complex).reshape(2, 2, 2, 2)
    m[1, :, 0, :] *= factor
    m[0, :, 1, :] *= np.conj(factor)
    return BipartiteState(m.reshape(4, 4))
