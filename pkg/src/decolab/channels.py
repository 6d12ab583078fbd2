"""Single-qubit noise channels in Kraus form and their two-qubit action.

Five channels are supported, addressable by stable string identifiers:

    bit-flip           K0 = sqrt(1-p) I      K1 = sqrt(p) sigma_x
    bit-phase-flip     K0 = sqrt(1-p) I      K1 = sqrt(p) sigma_y
    phase-flip         K0 = sqrt(1-p) I      K1 = sqrt(p) sigma_z
    phase-damping      K0 = diag(1, sqrt(1-p))   K1 = diag(0, sqrt(p))
    amplitude-damping  K0 = diag(1, sqrt(1-p))   K1 = [[0, sqrt(p)], [0, 0]]

A two-qubit state evolves by the literal operator sum

    rho' = sum_ij (K_i^A (x) K_j^B) rho (K_i^A (x) K_j^B)^dag

with an independent channel on each qubit.  No renormalisation is ever
applied: trace preservation is a checked property, so a completeness bug
cannot hide behind a division.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .qmat import Pauli, as_square, identity, kron
from .states import DensityMatrix

COMPLETENESS_TOL = 1e-12


class ChannelError(ValueError):
    """Unknown channel identifier or completeness violation."""


class ChannelKind(str, enum.Enum):
    """Stable channel identifiers used by the CLI and CSV metadata."""

    BIT_FLIP = "bit-flip"
    BIT_PHASE_FLIP = "bit-phase-flip"
    PHASE_FLIP = "phase-flip"
    PHASE_DAMPING = "phase-damping"
    AMPLITUDE_DAMPING = "amplitude-damping"


CHANNEL_KINDS = tuple(kind.value for kind in ChannelKind)

_FLIP_KIND = {
    Pauli.X: ChannelKind.BIT_FLIP,
    Pauli.Y: ChannelKind.BIT_PHASE_FLIP,
    Pauli.Z: ChannelKind.PHASE_FLIP,
}


def completeness_defect(operators) -> float:
    """Max-entry deviation of sum_k K_k^dag K_k from the 2x2 identity."""
    total = np.zeros((2, 2), dtype=complex)
    for k in operators:
        k = as_square(k, dim=2)
        total += k.conj().T @ k
    return float(np.abs(total - np.eye(2)).max())


def is_trace_preserving(channel_or_operators, tol: float = COMPLETENESS_TOL) -> bool:
    """True iff the Kraus operators satisfy the completeness relation within tol."""
    operators = getattr(channel_or_operators, "operators", channel_or_operators)
    return completeness_defect(operators) <= tol


@dataclass(frozen=True, eq=False)
class KrausChannel:
    """A single-qubit channel: a kind, its noise probability, and Kraus operators."""

    kind: ChannelKind
    p: float
    operators: tuple[np.ndarray, ...]

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"decoherence parameter p must lie in [0, 1], got {self.p!r}")
        ops = tuple(as_square(k, dim=2) for k in self.operators)
        defect = completeness_defect(ops)
        if defect > COMPLETENESS_TOL:
            raise ChannelError(
                f"Kraus operators are not trace preserving: defect {defect:.3e}"
            )
        for k in ops:
            k.setflags(write=False)
        object.__setattr__(self, "operators", ops)
        object.__setattr__(self, "p", float(self.p))


def flip_channel(axis: Pauli, p: float) -> KrausChannel:
    """Pauli flip channel: identity with probability 1-p, sigma_axis with probability p."""
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"decoherence parameter p must lie in [0, 1], got {p!r}")
    k0 = math.sqrt(1.0 - p) * identity(2)
    k1 = math.sqrt(p) * axis.matrix()
    return KrausChannel(_FLIP_KIND[axis], p, (k0, k1))


def phase_damping(p: float) -> KrausChannel:
    """Pure dephasing: off-diagonal decay without any population transfer."""
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"decoherence parameter p must lie in [0, 1], got {p!r}")
    k0 = np.array([[1.0, 0.0], [0.0, math.sqrt(1.0 - p)]], dtype=complex)
    k1 = np.array([[0.0, 0.0], [0.0, math.sqrt(p)]], dtype=complex)
    return KrausChannel(ChannelKind.PHASE_DAMPING, p, (k0, k1))


def amplitude_damping(p: float) -> KrausChannel:
    """Dissipative decay of |1> toward the ground state |0>."""
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"decoherence parameter p must lie in [0, 1], got {p!r}")
    k0 = np.array([[1.0, 0.0], [0.0, math.sqrt(1.0 - p)]], dtype=complex)
    k1 = np.array([[0.0, math.sqrt(p)], [0.0, 0.0]], dtype=complex)
    return KrausChannel(ChannelKind.AMPLITUDE_DAMPING, p, (k0, k1))


def make_channel(kind: ChannelKind | str, p: float) -> KrausChannel:
    """Build a channel from its string identifier (see CHANNEL_KINDS)."""
    try:
        kind = ChannelKind(kind)
    except ValueError:
        raise ChannelError(
            f"unknown channel {kind!r}; expected one of {', '.join(CHANNEL_KINDS)}"
        ) from None
    if kind is ChannelKind.PHASE_DAMPING:
        return phase_damping(p)
    if kind is ChannelKind.AMPLITUDE_DAMPING:
        return amplitude_damping(p)
    axis = {v: k for k, v in _FLIP_KIND.items()}[kind]
    return flip_channel(axis, p)


def time_to_p(gamma: float, t: float) -> float:
    """Convert a decay rate and elapsed time to the noise parameter 1 - exp(-gamma*t)."""
    if gamma < 0.0 or t < 0.0:
        raise ValueError(f"gamma and t must be nonnegative, got gamma={gamma!r}, t={t!r}")
    return 1.0 - math.exp(-gamma * t)


def evolve_matrix(
    ch_a: KrausChannel | None, ch_b: KrausChannel | None, m: np.ndarray
) -> np.ndarray:
    """Raw two-sided Kraus sum on a bare 4x4 matrix (no validation).

    ``None`` on either side means that qubit is left untouched.  This is the
    fast path used by dense parameter scans; ordinary code should go through
    :func:`apply_local`.
    """
    ops_a = ch_a.operators if ch_a is not None else (identity(2),)
    ops_b = ch_b.operators if ch_b is not None else (identity(2),)
    out = np.zeros((4, 4), dtype=complex)
    for ka in ops_a:
        for kb in ops_b:
            big = kron(ka, kb)
            out += big @ m @ big.conj().T
    return out


def apply_local(
    ch_a: KrausChannel | None, ch_b: KrausChannel | None, rho: DensityMatrix
) -> DensityMatrix:
    """Evolve a state with an independent channel on each qubit.

    Pass the same channel twice for symmetric both-qubit noise, or ``None``
    on one side for the one-sided variant.  Raises ChannelError if either
    channel fails the completeness relation.
    """
    for ch in (ch_a, ch_b):
        if ch is not None and not is_trace_preserving(ch):
            raise ChannelError(
                f"channel {ch.kind.value} violates the completeness relation"
            )
    return DensityMatrix.unchecked(evolve_matrix(ch_a, ch_b, rho.matrix))
