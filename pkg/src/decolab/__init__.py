"""decolab: a two-qubit decoherence laboratory.

Computes the relative entropy of coherence and Wootters' concurrence for
Werner states evolving under five local noise channels, with a sweep
engine, critical-point extraction, and a CSV/JSON command-line pipeline.
"""

from .qmat import (
    ConvergenceError,
    DimensionError,
    NotHermitianError,
    NotPSDError,
    Pauli,
    hermitian_eigenvalues,
    hermitian_eigh,
    identity,
    kron,
    psd_sqrt,
)
from .states import (
    DensityMatrix,
    is_x_state,
    maximally_mixed,
    singlet,
    werner,
)
from .channels import (
    CHANNEL_KINDS,
    ChannelError,
    ChannelKind,
    KrausChannel,
    amplitude_damping,
    apply_local,
    evolve_matrix,
    flip_channel,
    is_trace_preserving,
    make_channel,
    phase_damping,
    time_to_p,
)
from .measures import (
    NotXStateError,
    concurrence,
    concurrence_general,
    concurrence_x,
    dephase,
    relative_entropy,
    reqc,
    variational_reqc_check,
    von_neumann_entropy,
)
from .sweep import (
    CriticalPoints,
    GridSpec,
    SweepConfig,
    SweepRecord,
    critical_points,
    find_crossover,
    find_death_intervals,
    find_reqc_zeros,
    find_reqc_plateaus,
    measures_at,
    sweep_p,
    sweep_r,
)

__version__ = "0.1.0"

__all__ = [
    "CHANNEL_KINDS",
    "ChannelError",
    "ChannelKind",
    "ConvergenceError",
    "CriticalPoints",
    "DensityMatrix",
    "DimensionError",
    "GridSpec",
    "KrausChannel",
    "NotHermitianError",
    "NotPSDError",
    "NotXStateError",
    "Pauli",
    "SweepConfig",
    "SweepRecord",
    "amplitude_damping",
    "apply_local",
    "concurrence",
    "concurrence_general",
    "concurrence_x",
    "critical_points",
    "dephase",
    "evolve_matrix",
    "find_crossover",
    "find_death_intervals",
    "find_reqc_plateaus",
    "find_reqc_zeros",
    "flip_channel",
    "hermitian_eigenvalues",
    "hermitian_eigh",
    "identity",
    "is_trace_preserving",
    "is_x_state",
    "kron",
    "make_channel",
    "maximally_mixed",
    "measures_at",
    "phase_damping",
    "psd_sqrt",
    "relative_entropy",
    "reqc",
    "singlet",
    "sweep_p",
    "sweep_r",
    "time_to_p",
    "variational_reqc_check",
    "von_neumann_entropy",
    "werner",
]
