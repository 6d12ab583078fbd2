"""Two-qubit state constructors: singlet, maximally mixed, Werner family.

A DensityMatrix wraps a validated 4x4 complex matrix: Hermitian within
TAU_HERM, unit trace within TRACE_TOL, positive semidefinite within
TAU_PSD_CLAMP.  Construction through the class always validates; channel
evolution uses :meth:`DensityMatrix.unchecked`, which re-validates via an
``assert`` so the check is active in test/debug runs and free under
``python -O``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .qmat import (
    TAU_HERM,
    TAU_PSD_CLAMP,
    as_square,
    herm_defect,
    hermitian_eigenvalues,
)

TRACE_TOL = 1e-10
X_STATE_TOL = 1e-10  # default tolerance for X-structure detection


def _density_defect(m: np.ndarray) -> str | None:
    """Return a description of the first violated density-matrix invariant."""
    if m.shape != (4, 4):
        return f"expected a 4x4 matrix, got shape {m.shape}"
    if not np.isfinite(m).all():
        return "matrix entries must be finite"
    defect = herm_defect(m)
    if defect > TAU_HERM:
        return f"not Hermitian: defect {defect:.3e}"
    trace = m.trace().real
    if abs(trace - 1.0) > TRACE_TOL:
        return f"trace {trace!r} is not 1"
    # Gershgorin bound settles positivity for almost every state we build;
    # only near-singular cases fall through to the eigensolver.
    diag = np.diag(m).real
    radii = np.abs(m).sum(axis=1) - np.abs(diag)
    if (diag - radii).min() >= -TAU_PSD_CLAMP:
        return None
    w_min = hermitian_eigenvalues(m).min()
    if w_min < -TAU_PSD_CLAMP:
        return f"not positive semidefinite: min eigenvalue {w_min:.3e}"
    return None


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A validated two-qubit density matrix (Hermitian, unit trace, PSD)."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        defect = _density_defect(m)
        if defect is not None:
            raise ValueError(f"invalid density matrix: {defect}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def unchecked(cls, matrix: np.ndarray) -> "DensityMatrix":
        """Wrap a matrix that is valid by construction (e.g. Kraus evolution).

        Under ``__debug__`` the invariants are still asserted.
        """
        m = np.array(matrix, dtype=complex)
        assert _density_defect(m) is None, _density_defect(m)
        m.setflags(write=False)
        obj = cls.__new__(cls)
        object.__setattr__(obj, "matrix", m)
        return obj

    def diagonal(self) -> np.ndarray:
        """Real diagonal (populations in the computational basis)."""
        return np.diag(self.matrix).real.copy()


def singlet() -> DensityMatrix:
    """Projector onto (|01> - |10>)/sqrt(2), the maximally entangled singlet."""
    m = np.zeros((4, 4), dtype=complex)
    m[1, 1] = m[2, 2] = 0.5
    m[1, 2] = m[2, 1] = -0.5
    return DensityMatrix(m)


def maximally_mixed() -> DensityMatrix:
    """The maximally mixed two-qubit state I/4."""
    return DensityMatrix(np.eye(4, dtype=complex) / 4.0)


def werner(r: float) -> DensityMatrix:
    """Werner state r*|psi-><psi-| + (1-r)/4 * I, for r in [0, 1].

    Entrywise: diagonal ((1-r)/4, (1+r)/4, (1+r)/4, (1-r)/4) and
    rho[1,2] = rho[2,1] = -r/2.  Separable exactly for r <= 1/3.
    """
    r = float(r)
    if not 0.0 <= r <= 1.0:
        raise ValueError(f"Werner parameter r must lie in [0, 1], got {r!r}")
    m = np.zeros((4, 4), dtype=complex)
    m[0, 0] = m[3, 3] = (1.0 - r) / 4.0
    m[1, 1] = m[2, 2] = (1.0 + r) / 4.0
    m[1, 2] = m[2, 1] = -r / 2.0
    return DensityMatrix(m)


def dephase_matrix(m: np.ndarray) -> np.ndarray:
    """Diagonal part of a 4x4 matrix (dephasing in the computational basis)."""
    return np.diag(np.diag(np.asarray(m)).real).astype(complex)


def is_x_state(rho: DensityMatrix | np.ndarray, tol: float = X_STATE_TOL) -> bool:
    """True iff every entry off the main and anti diagonal has magnitude <= tol."""
    m = rho.matrix if isinstance(rho, DensityMatrix) else as_square(rho, dim=4)
    mask = np.ones((4, 4), dtype=bool)
    for i in range(4):
        mask[i, i] = False
        mask[i, 3 - i] = False
    return bool((np.abs(m[mask]) <= tol).all())
