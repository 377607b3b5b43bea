"""Leggett-Garg inequality simulator for a dephasing polarization qubit."""
from .classical import FlipModel, classical_correlators, classical_lg, fit_flip_probability, monte_carlo_classical
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
    CorrelatorSet,
    ExperimentConfig,
    LGResult,
    analytic_transition,
    closed_form_decohered,
    closed_form_k_minus,
    closed_form_k_plus,
    correlator_12,
    correlator_13,
    correlator_13_independent,
    correlator_23_cnot,
    correlator_23_stepwise,
    envelope_extrema,
    evaluate_lg,
    find_transition,
)
from .errors import (
    BracketFailureError,
    DegenerateCollapseError,
    InvalidArgumentError,
    LGSimError,
    NumericalConsistencyError,
)

__version__ = "0.1.0"
