"""Steady-state photon statistics of a driven cavity coupled to two
dipole-dipole interacting three-level atoms.

The package solves the Lindblad master equation of the model for its
steady state, extracts mean photon number and equal-time second- and
third-order correlation functions, and cross-checks the numerics against
closed-form excitation-manifold spectra and analytic emission-peak
positions.
"""

from .hilbert import (
    AtomLevel,
    CollectiveStateKind,
    SpaceConfig,
    basis_state,
    collective_state,
    flatten,
    unflatten,
)
from .operators import (
    annihilation,
    atomic_transition,
    cavity_annihilation,
    creation,
    dagger,
    expectation,
    hermitian_eigen,
    kron,
)
from .model import (
    CollapseOperator,
    SystemParams,
    build_hamiltonian,
    collapse_operators,
    coupling_strengths,
    excitation_number_operator,
)
from .solver import (
    SingularLiouvillianError,
    SteadyStateResult,
    StepSizeError,
    build_liouvillian,
    evolve,
    nullspace_gap,
    steady_state,
    trace_distance,
    unvectorize,
    vectorize,
)
from .observables import (
    LOW_SIGNAL_THRESHOLD,
    LowSignalError,
    PointResult,
    g2,
    g3,
    mean_photon_number,
    photon_moments,
    point_result,
    single_photon_blockade,
    suppression_band,
    two_photon_blockade,
)
from .dressed import (
    DressedParams,
    DressedSpectrum,
    dressed_spectrum,
    one_photon_closed_form,
    one_photon_energies,
    one_photon_matrix,
    peak_detunings,
    project_full_hamiltonian,
    two_photon_closed_form,
    two_photon_energies,
    two_photon_fit_reference_matrix,
    two_photon_matrix,
)
from .sweep import (
    FIGURE_IDS,
    DressedScan,
    SweepAxis,
    SweepSpec,
    SweepTable,
    figure_preset,
    find_peaks,
    run_dressed_scan,
    run_sweep,
    solve_point,
)

__version__ = "0.1.0"
