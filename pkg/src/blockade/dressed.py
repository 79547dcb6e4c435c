"""Collective-basis excitation manifolds and their closed-form spectra.

Without the pump, the Hamiltonian conserves the total excitation number and
block-diagonalizes over manifolds spanned by the collective states of
:mod:`blockade.hilbert`.  This module builds the 5x5 one-photon and 9x9
two-photon manifold matrices, evaluates their closed-form eigenvalues for
symmetric placement (phi_z = 0), gives the analytic emission-peak
detunings, and provides a projection of the full Hamiltonian as an
independent oracle for every matrix element.

The one-photon basis order is (|gg,1>, |+1,0>, |-1,0>, |+2,0>, |-2,0>);
the two-photon order is (|gg,2>, |+1,1>, |-1,1>, |+2,1>, |-2,1>, |+3,0>,
|-3,0>, |ss,0>, |ee,0>).

Two variants of the two-photon matrix exist.  The physical one, validated
entrywise against the projection oracle, carries the collective factor
sqrt(2)*Omega_d on the drive couplings of |+3,0> to |ss,0> and |ee,0>.
The fit-reference variant carries plain Omega_d there; the fitted
closed-form constants for the outer eigenvalue pairs reproduce that
variant's spectrum (to about 2 percent), not the physical one, and the two
variants coincide as Omega_d -> 0.  Exact closed-form rows agree with the
physical matrix in all cases.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .hilbert import CollectiveStateKind as K
from .hilbert import SpaceConfig, collective_state
from .model import SystemParams, build_hamiltonian
from .operators import hermitian_eigen

_SQRT2 = math.sqrt(2.0)

#: Entrywise tolerance for the projection oracle.
PROJECTION_TOL = 1e-12


@dataclass(frozen=True)
class DressedParams:
    """Parameters entering the excitation-manifold matrices."""

    g: float = 20.0
    phi_z: float = 0.0
    J: float = 0.0
    omega_d: float = 0.0
    omega_c: float = 0.0

    def couplings(self) -> tuple[float, float]:
        """(g_plus, g_minus) = g * (1 +/- cos(phi_z))."""
        c = math.cos(self.phi_z)
        return self.g * (1 + c), self.g * (1 - c)


@dataclass(frozen=True)
class DressedSpectrum:
    """Numerical eigendecomposition with closed forms where defined."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray = field(repr=False)
    closed_form: np.ndarray | None


def one_photon_matrix(p: DressedParams) -> np.ndarray:
    """5x5 single-excitation manifold Hamiltonian."""
    gp, gm = p.couplings()
    w, j, od = p.omega_c, p.J, p.omega_d
    return np.array(
        [
            [w, gp / _SQRT2, gm / _SQRT2, 0, 0],
            [gp / _SQRT2, w + j, 0, od, 0],
            [gm / _SQRT2, 0, w - j, 0, od],
            [0, od, 0, w, 0],
            [0, 0, od, 0, w],
        ],
        dtype=complex,
    )


def two_photon_matrix(p: DressedParams) -> np.ndarray:
    """9x9 two-excitation manifold Hamiltonian (projection-validated)."""
    return _two_photon(p, drive_enhancement=_SQRT2)


def two_photon_fit_reference_matrix(p: DressedParams) -> np.ndarray:
    """Variant without the collective sqrt(2) on the |+3,0> drive couplings.

    This is the matrix the fitted closed-form constants describe; it is not
    the projection of the full Hamiltonian.  Kept for validating
    :func:`two_photon_closed_form` at nonzero drive.
    """
    return _two_photon(p, drive_enhancement=1.0)


def _two_photon(p: DressedParams, drive_enhancement: float) -> np.ndarray:
    gp, gm = p.couplings()
    w, j, od = 2 * p.omega_c, p.J, p.omega_d
    ode = drive_enhancement * od
    return np.array(
        [
            [w, gp, gm, 0, 0, 0, 0, 0, 0],
            [gp, w + j, 0, od, 0, 0, 0, 0, gp / _SQRT2],
            [gm, 0, w - j, 0, od, 0, 0, 0, -gm / _SQRT2],
            [0, od, 0, w, 0, gp / 2, gm / 2, 0, 0],
            [0, 0, od, 0, w, -gm / 2, -gp / 2, 0, 0],
            [0, 0, 0, gp / 2, -gm / 2, w + j, 0, ode, ode],
            [0, 0, 0, gm / 2, -gp / 2, 0, w - j, 0, 0],
            [0, 0, 0, 0, 0, ode, 0, w, 0],
            [0, gp / _SQRT2, -gm / _SQRT2, 0, 0, ode, 0, 0, w],
        ],
        dtype=complex,
    )


def _require_symmetric_placement(p: DressedParams, what: str) -> None:
    if p.phi_z != 0.0:
        raise ValueError(
            f"{what} hold only for symmetric placement (phiZ = 0), "
            f"got phiZ = {p.phi_z}"
        )


@dataclass(frozen=True)
class OnePhotonClosedForm:
    """Closed-form one-photon eigenvalues (phi_z = 0).

    cavity_line       omega_c
    exchange +/-      omega_c - J/2 +/- sqrt(J^2/4 + Omega_d^2)
    polariton +/-     omega_c + J/2 +/- sqrt(J^2/4 + Omega_d^2 + 2 g^2)
    """

    cavity_line: float
    exchange_upper: float
    exchange_lower: float
    polariton_upper: float
    polariton_lower: float

    def sorted_values(self) -> np.ndarray:
        return np.sort(
            [
                self.cavity_line,
                self.exchange_upper,
                self.exchange_lower,
                self.polariton_upper,
                self.polariton_lower,
            ]
        )


@dataclass(frozen=True)
class TwoPhotonClosedForm:
    """Closed-form two-photon eigenvalues (phi_z = 0).

    The degenerate line (multiplicity 2), the exchange pair, and the
    exchange-shifted line are exact.  The inner/outer fitted pairs use the
    rounded fit constants

        A = 0.07 J^2 + 0.43 Omega_d^2 + g^2
        B = 0.714 sqrt(0.04 Omega_d^4 + 0.53 Omega_d^2 g^2 + g^4)

    as 2*omega_c + J/2 +/- 1.87 sqrt(A -/+ B); see the module docstring for
    which matrix variant they describe.
    """

    degenerate_line: float
    exchange_upper: float
    exchange_lower: float
    fitted_inner_upper: float
    fitted_inner_lower: float
    fitted_outer_upper: float
    fitted_outer_lower: float
    exchange_shifted: float

    def exact_rows(self) -> list[tuple[float, int]]:
        """(value, multiplicity) pairs that are exact, not fitted."""
        return [
            (self.degenerate_line, 2),
            (self.exchange_upper, 1),
            (self.exchange_lower, 1),
            (self.exchange_shifted, 1),
        ]

    def fitted_rows(self) -> list[float]:
        return [
            self.fitted_inner_upper,
            self.fitted_inner_lower,
            self.fitted_outer_upper,
            self.fitted_outer_lower,
        ]

    def sorted_values(self) -> np.ndarray:
        values = [self.degenerate_line] * 2 + [
            self.exchange_upper,
            self.exchange_lower,
            self.fitted_inner_upper,
            self.fitted_inner_lower,
            self.fitted_outer_upper,
            self.fitted_outer_lower,
            self.exchange_shifted,
        ]
        return np.sort(values)


def one_photon_closed_form(p: DressedParams) -> OnePhotonClosedForm:
    """Closed-form one-photon spectrum; requires phi_z = 0."""
    _require_symmetric_placement(p, "one-photon closed forms")
    w, j, od, g = p.omega_c, p.J, p.omega_d, p.g
    r_x = math.sqrt(j * j / 4 + od * od)
    r_p = math.sqrt(j * j / 4 + od * od + 2 * g * g)
    return OnePhotonClosedForm(
        cavity_line=w,
        exchange_upper=w - j / 2 + r_x,
        exchange_lower=w - j / 2 - r_x,
        polariton_upper=w + j / 2 + r_p,
        polariton_lower=w + j / 2 - r_p,
    )


def one_photon_energies(p: DressedParams) -> np.ndarray:
    """Closed-form one-photon eigenvalues, ascending; requires phi_z = 0."""
    return one_photon_closed_form(p).sorted_values()


def two_photon_closed_form(p: DressedParams) -> TwoPhotonClosedForm:
    """Closed-form two-photon spectrum; requires phi_z = 0."""
    _require_symmetric_placement(p, "two-photon closed forms")
    w, j, od, g = 2 * p.omega_c, p.J, p.omega_d, p.g
    r_x = math.sqrt(j * j / 4 + od * od + g * g)
    a = 0.07 * j * j + 0.43 * od * od + g * g
    b = 0.714 * math.sqrt(0.04 * od**4 + 0.53 * od * od * g * g + g**4)
    inner = 1.87 * math.sqrt(max(a - b, 0.0))
    outer = 1.87 * math.sqrt(a + b)
    return TwoPhotonClosedForm(
        degenerate_line=w,
        exchange_upper=w - j / 2 + r_x,
        exchange_lower=w - j / 2 - r_x,
        fitted_inner_upper=w + j / 2 + inner,
        fitted_inner_lower=w + j / 2 - inner,
        fitted_outer_upper=w + j / 2 + outer,
        fitted_outer_lower=w + j / 2 - outer,
        exchange_shifted=w - j,
    )


def two_photon_energies(p: DressedParams) -> np.ndarray:
    """Closed-form two-photon eigenvalues, ascending; requires phi_z = 0."""
    return two_photon_closed_form(p).sorted_values()


def peak_detunings(p: DressedParams) -> tuple[float, float]:
    """Analytic emission-peak detunings for symmetric placement.

    (Delta_plus, Delta_minus) = (J +/- sqrt(J^2 + 4 Omega_d^2 + 8 g^2))/2,
    the dressed polariton energies measured from the cavity line.
    """
    _require_symmetric_placement(p, "analytic peak detunings")
    r = math.sqrt(p.J**2 + 4 * p.omega_d**2 + 8 * p.g**2)
    return (p.J + r) / 2, (p.J - r) / 2


# collective basis content of each manifold: (kind, photon number)
_MANIFOLD_BASIS = {
    1: ((K.GG, 1), (K.PLUS1, 0), (K.MINUS1, 0), (K.PLUS2, 0), (K.MINUS2, 0)),
    2: (
        (K.GG, 2),
        (K.PLUS1, 1),
        (K.MINUS1, 1),
        (K.PLUS2, 1),
        (K.MINUS2, 1),
        (K.PLUS3, 0),
        (K.MINUS3, 0),
        (K.SS, 0),
        (K.EE, 0),
    ),
}


def project_full_hamiltonian(p: DressedParams, n_photons: int) -> np.ndarray:
    """Full Hamiltonian projected onto a manifold's collective basis.

    Builds the pump-free Hamiltonian whose diagonal charges omega_c per
    excitation (cavity or atomic), assembles the manifold basis as vectors
    in the full space, and returns V' H V.  This is the oracle that pins
    down :func:`one_photon_matrix` and :func:`two_photon_matrix`.
    """
    if n_photons not in _MANIFOLD_BASIS:
        raise ValueError(f"manifold must be 1 or 2, got {n_photons}")
    params = SystemParams(
        delta=-p.omega_c,
        g=p.g,
        phi_z=p.phi_z,
        J=p.J,
        omega_p=0.0,
        omega_d=p.omega_d,
        fock_cutoff=max(2, n_photons),
    )
    cfg = SpaceConfig(params.fock_cutoff)
    h = build_hamiltonian(params)
    basis = np.column_stack(
        [collective_state(kind, n, cfg) for kind, n in _MANIFOLD_BASIS[n_photons]]
    )
    gram = basis.conj().T @ basis
    if np.abs(gram - np.eye(basis.shape[1])).max() > 1e-12:
        raise AssertionError("collective basis lost orthonormality")
    return basis.conj().T @ h @ basis


def dressed_spectrum(p: DressedParams, n_photons: int) -> DressedSpectrum:
    """Numerical manifold spectrum plus closed forms where defined."""
    matrix = one_photon_matrix(p) if n_photons == 1 else two_photon_matrix(p)
    w, v = hermitian_eigen(matrix)
    closed: np.ndarray | None = None
    if p.phi_z == 0.0:
        closed = (
            one_photon_energies(p) if n_photons == 1 else two_photon_energies(p)
        )
    return DressedSpectrum(eigenvalues=w, eigenvectors=v, closed_form=closed)
