"""Dense complex operator algebra on the composite space.

Thin, contract-checked layer over numpy: Kronecker products, Fock ladder
operators, single-atom transition operators embedded in the full space,
expectation values, and a Hermitian eigensolver.  Matrices are plain
``numpy.ndarray`` of complex128 in row-major order and are treated as
immutable values.
"""

from __future__ import annotations

import numpy as np

from .hilbert import AtomLevel, SpaceConfig

#: Hermiticity tolerance accepted by :func:`hermitian_eigen`.
HERMITICITY_TOL = 1e-12


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product A (x) B."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def dagger(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return np.asarray(a).conj().T


def annihilation(n_max: int) -> np.ndarray:
    """Fock-space annihilation operator on |0>..|n_max>.

    <n-1|a|n> = sqrt(n); the truncated commutator [a, a'] equals the
    identity except for a -n_max entry in the last diagonal slot.
    """
    if n_max < 1:
        raise ValueError("fock cutoff must be >= 1")
    return np.diag(np.sqrt(np.arange(1, n_max + 1)), 1).astype(complex)


def creation(n_max: int) -> np.ndarray:
    """Fock-space creation operator, adjoint of :func:`annihilation`."""
    return dagger(annihilation(n_max))


def cavity_annihilation(cfg: SpaceConfig) -> np.ndarray:
    """Annihilation operator embedded in the full composite space."""
    return kron(np.eye(9), annihilation(cfg.fock_cutoff))


def atomic_transition(
    atom: int, top: AtomLevel, bot: AtomLevel, cfg: SpaceConfig
) -> np.ndarray:
    """|top><bot| on the given atom (1 or 2), identity elsewhere."""
    if atom not in (1, 2):
        raise ValueError(f"atom index must be 1 or 2, got {atom}")
    m = np.zeros((3, 3), dtype=complex)
    m[int(top), int(bot)] = 1.0
    eye3 = np.eye(3)
    eye_f = np.eye(cfg.fock_cutoff + 1)
    if atom == 1:
        return kron(kron(m, eye3), eye_f)
    return kron(kron(eye3, m), eye_f)


def expectation(op: np.ndarray, rho: np.ndarray) -> complex:
    """trace(op . rho)."""
    if op.shape != rho.shape or op.shape[0] != op.shape[1]:
        raise ValueError(
            f"dimension mismatch: operator {op.shape} vs state {rho.shape}"
        )
    # trace(A B) without forming the product
    return complex(np.sum(op * rho.T))


def hermitian_eigen(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix.

    Returns eigenvalues in ascending order and the matching orthonormal
    eigenvectors as columns.  Input asymmetric beyond ``HERMITICITY_TOL``
    (relative to the largest entry) is rejected.
    """
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    scale = max(1.0, float(np.abs(a).max()))
    asym = float(np.abs(a - a.conj().T).max())
    if asym > HERMITICITY_TOL * scale:
        raise ValueError(
            f"matrix is not Hermitian: max |A - A^dag| = {asym:.3e}"
        )
    w, v = np.linalg.eigh(a)
    return w, v
