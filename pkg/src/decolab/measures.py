"""Coherence and entanglement measures for two-qubit states.

All entropies use log base 2, so results are in bits.  The coherence
measure is the relative entropy of coherence

    C_re(rho) = S(rho_d) - S(rho)

with rho_d the dephased (diagonal) state; this closed form equals the
minimum relative entropy from rho to any incoherent state, and
:func:`variational_reqc_check` probes that minimisation directly by
sampling the probability simplex.

Entanglement is Wootters' concurrence.  The general route diagonalises
the Hermitian matrix

    M = sqrt(rho) (sy (x) sy) conj(rho) (sy (x) sy) sqrt(rho)

whose spectrum coincides with that of the usual non-Hermitian product
rho * spin-flipped(rho), so the Jacobi solver suffices.  For X-structured
states the closed form from the matrix entries is used as a cross-check
and fast path.
"""

from __future__ import annotations

import math

import numpy as np

from .qmat import (
    Pauli,
    TAU_PSD_REJECT,
    NotPSDError,
    hermitian_eigh,
    hermitian_eigenvalues,
    kron,
    psd_sqrt,
)
from .states import X_STATE_TOL, DensityMatrix, dephase_matrix, is_x_state

REQC_CLAMP = 1e-12        # results within this of zero snap to exactly 0
SUPPORT_TOL = 1e-12       # eigenvalue/weight level treated as "no support"
EIG_REL_FLOOR = 1e-12     # concurrence eigenvalues below floor*max are noise

_SIGMA_YY = kron(Pauli.Y.matrix(), Pauli.Y.matrix()).real  # real anti-diagonal


class NotXStateError(ValueError):
    """State lacks the X structure required by the closed-form concurrence."""


def dephase(rho: DensityMatrix) -> DensityMatrix:
    """Project onto the incoherent (diagonal) part: same populations, no coherences."""
    return DensityMatrix(dephase_matrix(rho.matrix))


def _entropy_of_eigenvalues(w: np.ndarray) -> float:
    if w.min() < -TAU_PSD_REJECT:
        raise NotPSDError(f"eigenvalue {w.min():.3e} below -{TAU_PSD_REJECT:.1e}")
    w = np.clip(w, 0.0, None)
    positive = w[w > 0.0]
    s = float(-(positive * np.log2(positive)).sum())
    return 0.0 if s == 0.0 else s


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """S(rho) = -Tr rho log2 rho, in bits; lies in [0, 2] for two qubits."""
    return _entropy_of_eigenvalues(hermitian_eigenvalues(rho.matrix))


def relative_entropy(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """Quantum relative entropy S(rho || sigma) = Tr(rho log2 rho - rho log2 sigma).

    Returns ``math.inf`` when rho has weight outside the support of sigma
    (test with ``math.isinf``).  Nonnegative by Klein's inequality; values
    within REQC_CLAMP of zero are snapped to 0.
    """
    w, v = hermitian_eigh(sigma.matrix)
    weights = np.einsum("ki,kl,li->i", v.conj(), rho.matrix, v).real
    cross = 0.0
    for s_k, w_k in zip(w, weights):
        if s_k <= SUPPORT_TOL:
            if w_k > SUPPORT_TOL:
                return math.inf
        elif w_k > 0.0:
            cross -= w_k * math.log2(s_k)
    value = cross - von_neumann_entropy(rho)
    return 0.0 if -REQC_CLAMP <= value < 0.0 else value


def reqc(rho: DensityMatrix) -> float:
    """Relative entropy of coherence S(rho_d) - S(rho), in bits; range [0, 2]."""
    value = von_neumann_entropy(dephase(rho)) - von_neumann_entropy(rho)
    return 0.0 if -REQC_CLAMP <= value < 0.0 else value


def concurrence_general(rho: DensityMatrix) -> float:
    """Concurrence from the spectrum of the spin-flipped product; range [0, 1].

    Eigenvalues below EIG_REL_FLOOR times the largest one are structural
    zeros blurred by roundoff and are snapped to zero before the square
    root, which would otherwise turn 1e-16 noise into 1e-8 error.
    """
    m = rho.matrix
    root = psd_sqrt(m)
    flipped = _SIGMA_YY @ m.conj() @ _SIGMA_YY
    w = hermitian_eigenvalues(root @ flipped @ root)
    if w.min() < -TAU_PSD_REJECT:
        raise NotPSDError(f"eigenvalue {w.min():.3e} below -{TAU_PSD_REJECT:.1e}")
    if w[0] <= 0.0:
        return 0.0
    lam = np.sqrt(np.where(w < EIG_REL_FLOOR * w[0], 0.0, w))
    return max(0.0, float(lam[0] - lam[1] - lam[2] - lam[3]))


def concurrence_x(rho: DensityMatrix, tol: float = X_STATE_TOL) -> float:
    """Closed-form concurrence for an X-structured state.

    C = 2 max{0, |rho_23| - sqrt(rho_11 rho_44), |rho_14| - sqrt(rho_22 rho_33)}
    in 1-based entry labels.  Raises NotXStateError for non-X input.
    """
    if not is_x_state(rho, tol):
        raise NotXStateError("state has entries off the main and anti diagonal")
    m = rho.matrix
    d = np.clip(np.diag(m).real, 0.0, None)
    inner = abs(m[1, 2]) - math.sqrt(d[0] * d[3])
    outer = abs(m[0, 3]) - math.sqrt(d[1] * d[2])
    return 2.0 * max(0.0, inner, outer)


def concurrence(rho: DensityMatrix) -> float:
    """Concurrence via the closed form when the state is X-structured, else general."""
    if is_x_state(rho):
        return concurrence_x(rho)
    return concurrence_general(rho)


def sample_incoherent(rng: np.random.Generator, n: int) -> np.ndarray:
    """Draw n probability vectors uniformly from the 4-simplex (exponential spacings)."""
    draws = rng.exponential(size=(n, 4))
    return draws / draws.sum(axis=1, keepdims=True)


def variational_reqc_check(
    rho: DensityMatrix, n_samples: int, seed: int
) -> tuple[float, float]:
    """Probe the variational coherence definition by sampling incoherent states.

    Evaluates S(rho || sigma) for ``n_samples`` random diagonal states sigma
    plus the dephased state itself, and returns ``(min_sampled, closed_form)``.
    The closed form is the true minimum, so ``min_sampled`` can only match it
    (attained at rho_d) or overshoot.
    """
    if n_samples < 1:
        raise ValueError(f"n_samples must be positive, got {n_samples!r}")
    rng = np.random.default_rng(seed)
    candidates = np.vstack([rho.diagonal(), sample_incoherent(rng, n_samples)])
    weights = rho.diagonal()
    s_rho = von_neumann_entropy(rho)
    # S(rho || diag(sigma)) = -S(rho) - sum_i rho_ii log2 sigma_ii, with the
    # convention that zero-weight terms contribute nothing.
    with np.errstate(divide="ignore", invalid="ignore"):
        logs = np.log2(candidates)
        terms = np.where(weights[None, :] > SUPPORT_TOL, weights[None, :] * logs, 0.0)
    values = -s_rho - terms.sum(axis=1)
    return float(values.min()), reqc(rho)
