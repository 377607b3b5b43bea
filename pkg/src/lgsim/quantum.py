"""Density-matrix algebra for the polarization qubit and its path ancilla.

Basis conventions, shared by every other module:

* polarization: index 0 is ``|H>``, index 1 is ``|V>``
* path (ancilla): index 0 is ``|0>_a`` (path 1), index 1 is ``|1>_a`` (path 2)
* bipartite states are ordered polarization (x) path

The observable Q is diagonal in the +/-45 degree basis
``|Hbar> = (|H> + |V>)/sqrt(2)`` (Q = +1) and ``|Vbar> = (|H> - |V>)/sqrt(2)`` (Q = -1).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateCollapseError, InvalidArgumentError, NumericalConsistencyError

ATOL = 1e-12
PSD_ATOL = 1e-10
CLAMP_LIMIT = 1e-9

_S = 1.0 / math.sqrt(2.0)
KET_H = np.array([1.0, 0.0], dtype=complex)
KET_V = np.array([0.0, 1.0], dtype=complex)
KET_HBAR = np.array([_S, _S], dtype=complex)
KET_VBAR = np.array([_S, -_S], dtype=complex)

PROJ_HBAR = np.outer(KET_HBAR, KET_HBAR.conj())
PROJ_VBAR = np.outer(KET_VBAR, KET_VBAR.conj())
_DIAG_PROJECTORS = {+1: PROJ_HBAR, -1: PROJ_VBAR}

# Hadamard maps the H/V basis onto the diagonal basis.
_HAD = np.array([[_S, _S], [_S, -_S]], dtype=complex)
_CNOT_COMPUTATIONAL = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
)
# Control in the diagonal basis: |Hbar>|a> -> |Hbar>|a>, |Vbar>|a> -> |Vbar>|a xor 1>.
CNOT_DIAG = np.kron(_HAD, np.eye(2)) @ _CNOT_COMPUTATIONAL @ np.kron(_HAD, np.eye(2))


def _check_density(m: np.ndarray, dim: int, atol: float = ATOL) -> np.ndarray:
    m = np.array(m, dtype=complex)
    if m.shape != (dim, dim):
        raise InvalidArgumentError(f"expected a {dim}x{dim} matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise InvalidArgumentError("density matrix has non-finite entries")
    if np.max(np.abs(m - m.conj().T)) > atol:
        raise InvalidArgumentError("density matrix is not Hermitian")
    if abs(np.trace(m) - 1.0) > atol:
        raise InvalidArgumentError(f"density matrix trace {np.trace(m).real!r} != 1")
    if np.linalg.eigvalsh(m).min() < -PSD_ATOL:
        raise InvalidArgumentError("density matrix is not positive semidefinite")
    m.setflags(write=False)
    return m


@dataclass(frozen=True, eq=False)
class QubitState:
    """2x2 polarization density matrix in the H/V basis."""

    matrix: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "matrix", _check_density(self.matrix, 2))

    @classmethod
    def from_ket(cls, ket) -> "QubitState":
        ket = np.asarray(ket, dtype=complex)
        ket = ket / np.linalg.norm(ket)
        return cls(np.outer(ket, ket.conj()))

    def purity(self) -> float:
        return float(np.trace(self.matrix @ self.matrix).real)

    def allclose(self, other: "QubitState", atol: float = ATOL) -> bool:
        return bool(np.allclose(self.matrix, other.matrix, rtol=0.0, atol=atol))


@dataclass(frozen=True, eq=False)
class BipartiteState:
    """4x4 density matrix, polarization (x) path."""

    matrix: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "matrix", _check_density(self.matrix, 4))

    def purity(self) -> float:
        return float(np.trace(self.matrix @ self.matrix).real)

    def allclose(self, other: "BipartiteState", atol: float = ATOL) -> bool:
        return bool(np.allclose(self.matrix, other.matrix, rtol=0.0, atol=atol))


@dataclass(frozen=True)
class ObservableOutcome:
    """Eigenvalue of Q: +1 for ``|Hbar>``, -1 for ``|Vbar>``."""

    value: int

    def __post_init__(self):
        if self.value not in (1, -1):
            raise InvalidArgumentError(f"outcome must be +1 or -1, got {self.value!r}")


def _outcome_value(outcome) -> int:
    if isinstance(outcome, ObservableOutcome):
        return outcome.value
    return ObservableOutcome(int(outcome)).value


def _clamp_probability(p: float) -> float:
    if p < -CLAMP_LIMIT or p > 1.0 + CLAMP_LIMIT:
        raise NumericalConsistencyError(f"probability {p!r} outside [0, 1] beyond rounding")
    return min(max(p, 0.0), 1.0)


def _require_finite(phase: float) -> float:
    phase = float(phase)
    if not math.isfinite(phase):
        raise InvalidArgumentError(f"phase must be finite, got {phase!r}")
    return phase


def make_plus_state() -> QubitState:
    return QubitState(PROJ_HBAR.copy())


def ancilla_ground() -> QubitState:
    return QubitState.from_ket(KET_H)


def maximally_mixed() -> QubitState:
    return QubitState(np.eye(2) / 2)


def phase_unitary(phase: float) -> np.ndarray:
    return np.diag([1.0, np.exp(1j * phase)])


def birefringent_phase(state: QubitState, phase: float) -> QubitState:
    """Apply the relative phase ``diag(1, e^{i phase})`` between H and V."""
    u = phase_unitary(_require_finite(phase))
    return QubitState(u @ state.matrix @ u.conj().T)


def measure_diag_basis(state: QubitState) -> tuple[float, float]:
    """Return ``(P(Hbar), P(Vbar))`` for a projective Q measurement."""
    rho = state.matrix
    p_h = _clamp_probability(float(np.real(KET_HBAR.conj() @ rho @ KET_HBAR)))
    p_v = _clamp_probability(float(np.real(KET_VBAR.conj() @ rho @ KET_VBAR)))
    return p_h, p_v


def collapse_diag(state: QubitState, outcome) -> QubitState:
    """Post-measurement state for the given Q outcome (Lueders rule).

    The projectors are rank one, so ``P rho P / tr(P rho P)`` is ``P`` itself;
    returning it directly avoids dividing rounding noise by a tiny probability.
    """
    value = _outcome_value(outcome)
    ket = KET_HBAR if value == 1 else KET_VBAR
    prob = float(np.real(ket.conj() @ state.matrix @ ket))
    if prob <= ATOL:
        raise DegenerateCollapseError(f"outcome {outcome!r} has probability {prob:.3e}")
    return QubitState(_DIAG_PROJECTORS[value].copy())


def tensor(sys: QubitState, anc: QubitState) -> BipartiteState:
    return BipartiteState(np.kron(sys.matrix, anc.matrix))


def partial_trace_path(state: BipartiteState) -> QubitState:
    """Trace out the path ancilla, leaving the polarization state."""
    m = state.matrix.reshape(2, 2, 2, 2)
    return QubitState(np.einsum("ajbj->ab", m))


def partial_trace_polarization(state: BipartiteState) -> QubitState:
    m = state.matrix.reshape(2, 2, 2, 2)
    return QubitState(np.einsum("jajb->ab", m))


def apply_cnot(state: BipartiteState) -> BipartiteState:
    """CNOT with the polarization (diagonal basis) as control and the path as target."""
    return BipartiteState(CNOT_DIAG @ state.matrix @ CNOT_DIAG.conj().T)


def apply_on_system(state: BipartiteState, phase: float) -> BipartiteState:
    u = np.kron(phase_unitary(_require_finite(phase)), np.eye(2))
    return BipartiteState(u @ state.matrix @ u.conj().T)


def joint_diag_path_probabilities(state: BipartiteState) -> np.ndarray:
    """Joint readout probabilities ordered
    ``[(Q=+1, path 0), (Q=+1, path 1), (Q=-1, path 0), (Q=-1, path 1)]``.
    """
    basis = np.kron(_HAD, np.eye(2))  # columns: |Hbar,0>, |Hbar,1>, |Vbar,0>, |Vbar,1>
    rotated = basis.conj().T @ state.matrix @ basis
    probs = np.array([_clamp_probability(float(v)) for v in np.real(np.diag(rotated))])
    total = probs.sum()
    if abs(total - 1.0) > CLAMP_LIMIT:
        raise NumericalConsistencyError(f"joint probabilities sum to {total!r}")
    return probs
