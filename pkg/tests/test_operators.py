import numpy as np
import pytest

from blockade.hilbert import AtomLevel, SpaceConfig, basis_state
from blockade.operators import (
    annihilation,
    atomic_transition,
    cavity_annihilation,
    creation,
    dagger,
    expectation,
    hermitian_eigen,
    kron,
)

CFG = SpaceConfig(3)
RNG = np.random.default_rng(42)


def random_complex(shape):
    return RNG.normal(size=shape) + 1j * RNG.normal(size=shape)


# ---------------------------------------------------------------- kron

def test_kron_identity():
    np.testing.assert_array_equal(kron(np.eye(2), np.eye(3)), np.eye(6))


def test_kron_associative():
    a, b, c = (random_complex((2, 2)) for _ in range(3))
    np.testing.assert_allclose(kron(kron(a, b), c), kron(a, kron(b, c)))


def test_kron_diagonal():
    out = kron(np.diag([1.0, 2.0]), np.diag([3.0, 4.0]))
    np.testing.assert_array_equal(out, np.diag([3.0, 4.0, 6.0, 8.0]))


def test_kron_definition_entrywise():
    a = random_complex((2, 3))
    b = random_complex((3, 2))
    out = kron(a, b)
    for i in range(2):
        for j in range(3):
            np.testing.assert_allclose(
                out[i * 3 : (i + 1) * 3, j * 2 : (j + 1) * 2], a[i, j] * b
            )


# ---------------------------------------------------------------- ladder

def test_annihilation_n1():
    np.testing.assert_array_equal(annihilation(1), [[0, 1], [0, 0]])


def test_number_operator_diagonal():
    n = 5
    a = annihilation(n)
    np.testing.assert_allclose(dagger(a) @ a, np.diag(np.arange(n + 1.0)))


def test_truncated_commutator():
    n = 5
    a = annihilation(n)
    comm = a @ dagger(a) - dagger(a) @ a
    expected = np.eye(n + 1)
    expected[n, n] = -n
    np.testing.assert_allclose(comm, expected, atol=1e-14)


def test_creation_is_adjoint():
    np.testing.assert_array_equal(creation(4), dagger(annihilation(4)))


# ---------------------------------------------------------------- atomic ops

def test_completeness_on_atom1():
    total = sum(
        atomic_transition(1, level, level, CFG) for level in AtomLevel
    )
    np.testing.assert_allclose(total, np.eye(CFG.dim))


def test_raising_action():
    sig = atomic_transition(1, AtomLevel.E, AtomLevel.G, CFG)
    ground = basis_state(AtomLevel.G, AtomLevel.G, 0, CFG)
    raised = basis_state(AtomLevel.E, AtomLevel.G, 0, CFG)
    np.testing.assert_allclose(sig @ ground, raised)


def test_distinct_atoms_commute():
    a = atomic_transition(1, AtomLevel.E, AtomLevel.G, CFG)
    b = atomic_transition(2, AtomLevel.G, AtomLevel.E, CFG)
    np.testing.assert_allclose(a @ b - b @ a, 0, atol=1e-15)


def test_bad_atom_index():
    with pytest.raises(ValueError):
        atomic_transition(3, AtomLevel.E, AtomLevel.G, CFG)


# ---------------------------------------------------------------- dagger

def test_dagger_involution_and_product_rule():
    a = random_complex((6, 6))
    b = random_complex((6, 6))
    np.testing.assert_array_equal(dagger(dagger(a)), a)
    np.testing.assert_allclose(dagger(a @ b), dagger(b) @ dagger(a))


# ---------------------------------------------------------------- expectation

def test_expectation_unit_trace():
    rho = random_complex((5, 5))
    rho = rho @ dagger(rho)
    rho /= np.trace(rho).real
    assert expectation(np.eye(5), rho) == pytest.approx(1.0)


def test_expectation_number_states():
    a = cavity_annihilation(CFG)
    num = dagger(a) @ a
    vac = basis_state(AtomLevel.G, AtomLevel.G, 0, CFG)
    two = basis_state(AtomLevel.G, AtomLevel.G, 2, CFG)
    assert expectation(num, np.outer(vac, vac.conj())) == pytest.approx(0.0)
    assert expectation(num, np.outer(two, two.conj())) == pytest.approx(2.0)


def test_expectation_matches_trace_of_product():
    op = random_complex((7, 7))
    rho = random_complex((7, 7))
    assert expectation(op, rho) == pytest.approx(np.trace(op @ rho))


def test_expectation_real_for_hermitian_pair():
    op = random_complex((6, 6))
    op = op + dagger(op)
    rho = random_complex((6, 6))
    rho = rho @ dagger(rho)
    rho /= np.trace(rho).real
    assert abs(expectation(op, rho).imag) <= 1e-10


def test_expectation_dimension_mismatch():
    with pytest.raises(ValueError):
        expectation(np.eye(3), np.eye(4))


# ---------------------------------------------------------------- eigensolver

def test_eigen_diagonal():
    w, _ = hermitian_eigen(np.diag([3.0, 1.0, 2.0]))
    np.testing.assert_allclose(w, [1.0, 2.0, 3.0])


def test_eigen_two_by_two():
    g = 7.3
    w, _ = hermitian_eigen(np.array([[0.0, g], [g, 0.0]]))
    np.testing.assert_allclose(w, [-g, g])


def test_eigen_residual_and_orthonormality():
    a = random_complex((12, 12))
    a = a + dagger(a)
    w, v = hermitian_eigen(a)
    norm = np.abs(w).max()
    residual = np.abs(a @ v - v @ np.diag(w)).max()
    assert residual <= 1e-10 * norm
    off = np.abs(dagger(v) @ v - np.eye(12)).max()
    assert off <= 1e-10
    assert np.all(np.diff(w) >= 0)


def test_eigen_rejects_non_hermitian():
    with pytest.raises(ValueError):
        hermitian_eigen(np.array([[0.0, 1.0], [0.0, 0.0]]))
