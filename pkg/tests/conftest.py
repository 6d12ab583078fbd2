"""Shared helpers for the test suite."""

import numpy as np

from decolab import DensityMatrix


def random_density(rng: np.random.Generator) -> DensityMatrix:
    """Random full-rank two-qubit density matrix (Ginibre construction)."""
    g = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    m = g @ g.conj().T
    return DensityMatrix(m / m.trace().real)


def random_unitary(rng: np.random.Generator, dim: int = 2) -> np.ndarray:
    """Haar-ish random unitary via QR with phase fixing."""
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(g)
    d = np.diag(r)
    return q @ np.diag(d / np.abs(d))
