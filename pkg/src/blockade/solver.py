"""Liouvillian assembly, steady-state solve, and time-evolution cross-check.

The master equation drho/dt = -i[H, rho] + sum_k r_k D[C_k] rho is turned
into a dense superoperator with column-stacking vectorization, so that
vec(A X B) = (B^T (x) A) vec(X):

    L = -i (I (x) H - H^T (x) I)
        + sum_k r_k [ conj(C_k) (x) C_k
                      - 1/2 I (x) (C_k' C_k) - 1/2 (C_k' C_k)^T (x) I ]

The steady state is the nullspace of L, computed by replacing one scalar
equation with the trace constraint and solving the resulting system by LU
with partial pivoting.  :func:`evolve` integrates the same master equation
directly from H and the jump operators with classical fourth-order
Runge-Kutta; it shares no code path with the Liouvillian and serves as an
independent oracle for :func:`steady_state`.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .model import CollapseOperator


class SingularLiouvillianError(RuntimeError):
    """Raised when the steady state is not unique (degenerate nullspace)."""

    def __init__(self, message: str, condition_estimate: float):
        super().__init__(f"{message} (condition estimate {condition_estimate:.3e})")
        self.condition_estimate = condition_estimate


class StepSizeError(RuntimeError):
    """Raised when time evolution produces non-finite values."""


def vectorize(rho: np.ndarray) -> np.ndarray:
    """Column-stacking vec: stacks the columns of rho into one vector."""
    return np.asarray(rho).reshape(-1, order="F")


def unvectorize(x: np.ndarray, dim: int) -> np.ndarray:
    """Inverse of :func:`vectorize`."""
    return np.asarray(x).reshape(dim, dim, order="F")


def build_liouvillian(h: np.ndarray, collapse_ops: list[CollapseOperator]) -> np.ndarray:
    """Dense superoperator generating drho/dt = L[rho]."""
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError(f"Hamiltonian must be square, got {h.shape}")
    if np.abs(h - h.conj().T).max() > 1e-12 * max(1.0, np.abs(h).max()):
        raise ValueError("Hamiltonian must be Hermitian")
    dim = h.shape[0]
    eye = np.eye(dim, dtype=complex)
    lv = -1j * (np.kron(eye, h) - np.kron(h.T, eye))
    for c in collapse_ops:
        op = np.asarray(c.op, dtype=complex)
        if op.shape != h.shape:
            raise ValueError(
                f"dimension mismatch: collapse operator {op.shape} vs "
                f"Hamiltonian {h.shape}"
            )
        cdc = op.conj().T @ op
        lv += c.rate * (
            np.kron(op.conj(), op)
            - 0.5 * np.kron(eye, cdc)
            - 0.5 * np.kron(cdc.T, eye)
        )
    return lv


@dataclass(frozen=True)
class SteadyStateResult:
    """Steady state with solve diagnostics.

    residual is ||L vec(rho)||_2, checked against 1e-9 * ||L||_F.
    min_eigenvalue below -1e-8 sets ``negativity_warning`` (flagged, not
    fatal; tiny negative tails are a finite-precision artifact).
    """

    rho: np.ndarray = field(repr=False)
    residual: float
    residual_bound: float
    min_eigenvalue: float
    negativity_warning: bool
    rcond: float
    replaced_row: int


#: Residual acceptance factor relative to ||L||_F.
RESIDUAL_FACTOR = 1e-9
#: Eigenvalues of rho above this are considered non-negative.
NEGATIVITY_TOL = -1e-8


def steady_state(lv: np.ndarray) -> SteadyStateResult:
    """Solve L[rho] = 0 with trace(rho) = 1.

    The scalar equation with the smallest diagonal magnitude of L is
    replaced by the trace row (ties broken by lowest index), the system is
    solved by dense LU with partial pivoting, and the result is Hermitized.
    A reciprocal condition estimate near machine epsilon, or a residual
    beyond the acceptance bound, raises :class:`SingularLiouvillianError`.
    """
    lv = np.asarray(lv, dtype=complex)
    size = lv.shape[0]
    dim = int(round(np.sqrt(size)))
    if dim * dim != size:
        raise ValueError(f"Liouvillian size {size} is not a perfect square")

    row = int(np.argmin(np.abs(np.diag(lv))))
    a = lv.copy()
    a[row, :] = 0.0
    a[row, np.arange(dim) * (dim + 1)] = 1.0
    b = np.zeros(size, dtype=complex)
    b[row] = 1.0

    with warnings.catch_warnings():
        # exact singularity is handled via the rcond check below
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(a, check_finite=False)
    gecon = scipy.linalg.get_lapack_funcs("gecon", (a,))
    rcond, _ = gecon(lu, np.linalg.norm(a, 1))
    if not np.isfinite(rcond) or rcond < 1e3 * np.finfo(float).eps / size:
        raise SingularLiouvillianError(
            "degenerate nullspace: steady state is not unique",
            condition_estimate=1.0 / max(rcond, np.finfo(float).tiny),
        )
    x = scipy.linalg.lu_solve((lu, piv), b, check_finite=False)

    rho = unvectorize(x, dim)
    rho = 0.5 * (rho + rho.conj().T)

    residual = float(np.linalg.norm(lv @ vectorize(rho)))
    bound = RESIDUAL_FACTOR * float(np.linalg.norm(lv))
    if residual > bound:
        raise SingularLiouvillianError(
            f"steady-state residual {residual:.3e} exceeds bound {bound:.3e}",
            condition_estimate=1.0 / max(rcond, np.finfo(float).tiny),
        )
    min_eig = float(np.linalg.eigvalsh(rho)[0])
    return SteadyStateResult(
        rho=rho,
        residual=residual,
        residual_bound=bound,
        min_eigenvalue=min_eig,
        negativity_warning=min_eig < NEGATIVITY_TOL,
        rcond=float(rcond),
        replaced_row=row,
    )


def evolve(
    h: np.ndarray,
    collapse_ops: list[CollapseOperator],
    rho0: np.ndarray,
    dt: float = 1e-3,
    t_max: float = 50.0,
) -> np.ndarray:
    """Integrate the master equation with classical RK4.

    Works directly from H and the jump operators (no superoperator), so it
    is an independent check on the Liouvillian route.  dt and t_max are in
    units of 1/kappa; the default step is stable for the detunings and
    couplings used here (halving it moves the result at the 1e-8 level).
    """
    if dt <= 0 or t_max < 0:
        raise ValueError("dt must be > 0 and t_max >= 0")
    dim = h.shape[0]
    k_eff = -1j * np.asarray(h, dtype=complex)
    jumps = np.empty((len(collapse_ops), dim, dim), dtype=complex)
    for i, c in enumerate(collapse_ops):
        jumps[i] = np.sqrt(c.rate) * c.op
        k_eff -= 0.5 * (jumps[i].conj().T @ jumps[i])
    jumps_dag = jumps.conj().transpose(0, 2, 1).copy()
    k_dag = k_eff.conj().T.copy()

    # preallocated work buffers for the RK4 stages
    prod = np.empty((dim, dim), dtype=complex)
    batch = np.empty_like(jumps)
    batch2 = np.empty_like(jumps)

    def rhs(rho: np.ndarray, out: np.ndarray) -> None:
        np.matmul(k_eff, rho, out=out)
        np.matmul(rho, k_dag, out=prod)
        out += prod
        np.matmul(jumps, rho, out=batch)
        np.matmul(batch, jumps_dag, out=batch2)
        out += batch2.sum(axis=0)

    n_steps = max(1, int(round(t_max / dt)))
    step = t_max / n_steps if t_max > 0 else 0.0
    rho = np.array(rho0, dtype=complex)
    if t_max == 0:
        return rho
    k1 = np.empty_like(rho)
    k2 = np.empty_like(rho)
    k3 = np.empty_like(rho)
    k4 = np.empty_like(rho)
    # divergence shows up as inf/nan and is caught below; keep it silent
    with np.errstate(over="ignore", invalid="ignore"):
        for i in range(n_steps):
            rhs(rho, k1)
            rhs(rho + (0.5 * step) * k1, k2)
            rhs(rho + (0.5 * step) * k2, k3)
            rhs(rho + step * k3, k4)
            rho += (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            if i % 500 == 0 and not np.isfinite(rho.trace()):
                raise StepSizeError(
                    f"non-finite state at step {i}; reduce dt (dt={dt})"
                )
    if not np.all(np.isfinite(rho)):
        raise StepSizeError(f"non-finite state at t_max; reduce dt (dt={dt})")
    return rho


def trace_distance(rho1: np.ndarray, rho2: np.ndarray) -> float:
    """Half the trace norm of rho1 - rho2."""
    diff = np.asarray(rho1) - np.asarray(rho2)
    diff = 0.5 * (diff + diff.conj().T)
    return 0.5 * float(np.abs(np.linalg.eigvalsh(diff)).sum())


def nullspace_gap(lv: np.ndarray) -> tuple[float, float]:
    """Two smallest singular values of L.

    The first should be numerically zero; a positive second value certifies
    a unique steady state.  Full SVD: use on desk-scale problems only.
    """
    s = np.linalg.svd(np.asarray(lv), compute_uv=False)
    return float(s[-1]), float(s[-2])
