"""Dense complex linear algebra for 2x2 and 4x4 matrices.

Everything downstream (states, channels, measures) works with plain
``numpy.ndarray`` values of dtype complex128 in the fixed computational
basis |00>, |01>, |10>, |11> (qubit A is the left tensor factor).
Matrices are treated as immutable values: no function mutates its input.

The eigensolver is a cyclic Jacobi iteration specialised for Hermitian
matrices.  At dimension 4 this is simple, robust and accurate enough to
hit the tolerances used throughout the package.
"""

from __future__ import annotations

import enum
import math

import numpy as np

# Central numerical tolerances, referenced by the test suite.
TAU_HERM = 1e-10        # max |m - m^dag| entry allowed for "Hermitian"
TAU_PSD_CLAMP = 1e-10   # eigenvalues in [-TAU_PSD_CLAMP, 0) count as zero
TAU_PSD_REJECT = 1e-8   # eigenvalues below -TAU_PSD_REJECT are an error
JACOBI_OFF_TOL = 1e-12  # off-diagonal Frobenius norm at convergence
JACOBI_MAX_SWEEPS = 100


class DimensionError(ValueError):
    """Matrix has the wrong shape for the requested operation."""


class NotHermitianError(ValueError):
    """Matrix is not Hermitian within TAU_HERM."""


class NotPSDError(ValueError):
    """Matrix has an eigenvalue below -TAU_PSD_REJECT."""


class ConvergenceError(RuntimeError):
    """Jacobi iteration failed to converge within JACOBI_MAX_SWEEPS."""


class Pauli(enum.Enum):
    """The three Pauli axes; each converts to a 2x2 unitary Hermitian matrix."""

    X = "x"
    Y = "y"
    Z = "z"

    def matrix(self) -> np.ndarray:
        return _PAULI[self].copy()


_PAULI = {
    Pauli.X: np.array([[0, 1], [1, 0]], dtype=complex),
    Pauli.Y: np.array([[0, -1j], [1j, 0]], dtype=complex),
    Pauli.Z: np.array([[1, 0], [0, -1]], dtype=complex),
}


def identity(dim: int) -> np.ndarray:
    """Identity matrix of dimension 2 or 4."""
    if dim not in (2, 4):
        raise DimensionError(f"only dimensions 2 and 4 are supported, got {dim}")
    return np.eye(dim, dtype=complex)


def as_square(m, dim: int | None = None) -> np.ndarray:
    """Coerce to a complex square matrix of dimension 2 or 4, with finite entries."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] not in (2, 4):
        raise DimensionError(f"expected a 2x2 or 4x4 matrix, got shape {a.shape}")
    if dim is not None and a.shape[0] != dim:
        raise DimensionError(f"expected a {dim}x{dim} matrix, got shape {a.shape}")
    if not np.isfinite(a).all():
        raise ValueError("matrix entries must be finite")
    return a


def dagger(m: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return np.asarray(m).conj().T


def herm_defect(m: np.ndarray) -> float:
    """Largest entrywise deviation of m from its conjugate transpose."""
    a = np.asarray(m)
    return float(np.abs(a - a.conj().T).max())


def kron(a, b) -> np.ndarray:
    """Kronecker product of two 2x2 matrices, giving the 4x4 two-qubit operator.

    The left factor acts on qubit A: (kron(a, b))[2i+k, 2j+l] = a[i, j] * b[k, l].
    """
    a = as_square(a, dim=2)
    b = as_square(b, dim=2)
    return np.kron(a, b)


def _off_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.sqrt((np.abs(off) ** 2).sum()))


def hermitian_eigh(m) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (descending) and eigenvectors of a Hermitian matrix.

    Uses cyclic Jacobi rotations.  Each rotation first strips the phase of
    the pivot entry and then applies the classic symmetric 2x2 rotation, so
    complex Hermitian input needs no special casing elsewhere.  Returns
    ``(w, v)`` with ``m == v @ diag(w) @ v^dag`` up to roundoff and the
    columns of ``v`` orthonormal.

    Raises NotHermitianError if the input is not Hermitian within TAU_HERM
    and ConvergenceError if JACOBI_MAX_SWEEPS sweeps do not reach
    JACOBI_OFF_TOL (does not happen for sanely scaled input).
    """
    a = as_square(m)
    if herm_defect(a) > TAU_HERM:
        raise NotHermitianError(
            f"matrix is not Hermitian: defect {herm_defect(a):.3e} > {TAU_HERM:.1e}"
        )
    a = (a + a.conj().T) / 2.0  # kill roundoff-level asymmetry, diag becomes real
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    pairs = [(p, q) for p in range(n - 1) for q in range(p + 1, n)]
    for _ in range(JACOBI_MAX_SWEEPS):
        if _off_norm(a) < JACOBI_OFF_TOL:
            break
        for p, q in pairs:
            apq = a[p, q]
            if abs(apq) == 0.0:
                continue
            phase = apq / abs(apq)
            tau = (a[q, q].real - a[p, p].real) / (2.0 * abs(apq))
            t = math.copysign(1.0, tau) / (abs(tau) + math.hypot(1.0, tau))
            c = 1.0 / math.sqrt(1.0 + t * t)
            s = t * c
            # Unitary J = identity except J[p,p]=c, J[p,q]=s,
            # J[q,p]=-s*conj(phase), J[q,q]=c*conj(phase); a <- J^dag a J.
            cp, cq = a[:, p].copy(), a[:, q].copy()
            a[:, p] = c * cp - s * np.conj(phase) * cq
            a[:, q] = s * cp + c * np.conj(phase) * cq
            rp, rq = a[p, :].copy(), a[q, :].copy()
            a[p, :] = c * rp - s * phase * rq
            a[q, :] = s * rp + c * phase * rq
            a[p, p] = a[p, p].real
            a[q, q] = a[q, q].real
            a[p, q] = 0.0
            a[q, p] = 0.0
            vp, vq = v[:, p].copy(), v[:, q].copy()
            v[:, p] = c * vp - s * np.conj(phase) * vq
            v[:, q] = s * vp + c * np.conj(phase) * vq
    else:
        raise ConvergenceError(
            f"Jacobi iteration did not converge in {JACOBI_MAX_SWEEPS} sweeps"
        )
    w = np.diag(a).real
    order = np.argsort(w)[::-1]
    return w[order].copy(), v[:, order].copy()


def hermitian_eigenvalues(m) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix, sorted descending."""
    w, _ = hermitian_eigh(m)
    return w


def psd_sqrt(m) -> np.ndarray:
    """Hermitian square root of a positive-semidefinite Hermitian matrix.

    Eigenvalues in [-TAU_PSD_REJECT, 0) are clamped to zero; anything more
    negative raises NotPSDError.  The result s is Hermitian PSD with
    s @ s == m up to roundoff.
    """
    w, v = hermitian_eigh(m)
    if w.min() < -TAU_PSD_REJECT:
        raise NotPSDError(
            f"matrix has eigenvalue {w.min():.3e} below -{TAU_PSD_REJECT:.1e}"
        )
    s = (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T
    return (s + s.conj().T) / 2.0
