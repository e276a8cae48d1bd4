import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from lorentz_aut import linalg
from lorentz_aut.errors import (ConeError, DimensionError, NotIsometryError, SignatureError,
                                ZeroVectorError)
from lorentz_aut.halphen import HalphenModel, classieux_matrix, e
from lorentz_aut.lattice import Isometry, Lattice, diagonal_lattice, is_isometry, signature
from oracles import float_inertia
from strategies import int_matrices, unimodular

L3 = diagonal_lattice(3)
L10 = diagonal_lattice(10)
KX = [-3] + [1] * 9


def test_pairing_examples():
    assert L3.pairing(L3.vector([1, 1, 0]), L3.vector([1, -1, 0])) == 2
    assert L3.square(L3.vector([1, 0, 0])) == 1
    assert L10.square(L10.vector(KX)) == 0


def test_pairing_dimension_mismatch():
    with pytest.raises(DimensionError):
        L3.pairing([1, 0], [1, 0, 0])
    with pytest.raises(DimensionError):
        L3.vector([1, 0])


def test_signature_examples():
    assert signature(np.diag([1, -1, -1])) == (1, 2, 0)
    assert signature(np.diag([1] + [-1] * 9)) == (1, 9, 0)
    # restricted to an integer basis of K^perp: semidefinite with radical Z K
    basis = linalg.int_matrix([list(v) for v in L10.orthogonal_complement([L10.vector(KX)])]).T
    restricted = basis.T @ L10.gram @ basis
    assert signature(restricted) == (0, 8, 1)
    rad = linalg.nullspace(restricted)
    assert len(rad) == 1
    assert linalg.mat_equal(L10.primitivize(basis @ rad[0]), [3] + [-1] * 9)


def test_signature_hyperbolic_plane_needs_off_diagonal_pivot():
    assert signature([[0, 1], [1, 0]]) == (1, 1, 0)
    assert signature([[0, 0], [0, 0]]) == (0, 0, 2)
    assert signature([[0, 2, 0], [2, 0, 0], [0, 0, -3]]) == (1, 2, 0)


def test_signature_rejects_asymmetric():
    with pytest.raises(SignatureError):
        signature([[1, 2], [0, 1]])


@given(st.integers(1, 5).flatmap(lambda n: int_matrices(n, n)))
def test_signature_matches_float_eigenvalues(a):
    sym = a + a.T
    assert signature(sym) == float_inertia(sym)


@given(unimodular(4))
def test_signature_basis_invariant(p):
    g = linalg.int_matrix(np.diag([1, -1, -1, -1]))
    assert signature(p.T @ g @ p) == (1, 3, 0)


def test_lattice_validation():
    with pytest.raises(SignatureError):
        Lattice([[1, 0], [0, 1]])
    with pytest.raises(SignatureError):
        Lattice([[1, 1], [0, -1]])
    with pytest.raises(ConeError):
        Lattice([[-1, 0], [0, 1]])
    lat = Lattice([[-1, 0], [0, 1]], cone_ref=[0, 1])
    assert lat.in_positive_cone([1, 1])
    with pytest.raises(ConeError):
        Lattice([[1, 0], [0, -1]], cone_ref=[0, 1])


def test_lattice_is_immutable():
    with pytest.raises(ValueError):
        L3.gram[0, 0] = 5


def test_is_isometry_examples():
    assert is_isometry(linalg.identity(3), L3) == (True, None)
    swap = [[1, 0, 0], [0, 0, 1], [0, 1, 0]]
    assert is_isometry(swap, L3)[0]
    ok, bad = is_isometry([[2, 0, 0], [0, 1, 0], [0, 0, 1]], L3)
    assert not ok and bad == (0, 0)
    lam = classieux_matrix(HalphenModel(1), e(1) - e(2)).matrix
    assert is_isometry(lam.matrix, L10)[0]


def test_in_positive_cone_examples():
    assert L3.in_positive_cone(L3.cone_ref)
    assert L3.in_positive_cone([1, 1, 0])
    assert not L3.in_positive_cone([-1, 1, 0])
    assert not L3.in_positive_cone([0, 1, 0])  # negative square
    with pytest.raises(ZeroVectorError):
        L3.in_positive_cone([0, 0, 0])


def test_primitivize_examples():
    assert L3.primitivize([2, 2, 0]).tolist() == [1, 1, 0]
    assert L3.primitivize([-3, -3, 0]).tolist() == [1, 1, 0]
    assert L3.primitivize([0, 4, -6]).tolist() == [0, 2, -3]
    assert L3.primitivize([0, -4, 6]).tolist() == [0, 2, -3]
    with pytest.raises(ZeroVectorError):
        L3.primitivize([0, 0, 0])


@given(st.lists(st.integers(-5, 5), min_size=3, max_size=3))
def test_cone_components_are_exclusive(x):
    x = L3.vector(x)
    assume(not linalg.is_zero(x) and L3.square(x) >= 0)
    assert L3.in_positive_cone(x) != L3.in_positive_cone(-x)


def test_isometry_rejects_bad_input():
    with pytest.raises(NotIsometryError):
        Isometry([[1, 1, 0], [0, 1, 0], [0, 0, 1]], L3)
    with pytest.raises(ConeError):
        Isometry(-linalg.identity(3), L3)


def random_word(rng, gens, length):
    out = Isometry.identity(L10)
    for _ in range(length):
        g = gens[rng.integers(len(gens))]
        out = out @ (g if rng.integers(2) else g.inverse())
    return out


def test_isometries_preserve_pairing_and_invert():
    rng = np.random.default_rng(7)
    m = HalphenModel(1)
    gens = [L10.reflection(e(1) - e(2)), L10.reflection(e(0) - e(1) - e(2) - e(3)),
            classieux_matrix(m, e(3) - e(4)).matrix, L10.reflection(e(5))]
    for _ in range(20):
        u = random_word(rng, gens, 5)
        assert is_isometry(u.matrix, L10)[0]
        assert (u @ u.inverse()).is_identity()
        assert abs(linalg.det(u.matrix)) == 1
        x = L10.vector(rng.integers(-5, 6, 10).tolist())
        y = L10.vector(rng.integers(-5, 6, 10).tolist())
        assert L10.pairing(u.apply(x), u.apply(y)) == L10.pairing(x, y)


def test_composition_convention():
    a = L10.reflection(e(1) - e(2))
    b = L10.reflection(e(2) - e(3))
    x = L10.vector(list(range(10)))
    assert linalg.mat_equal((a @ b).apply(x), a.apply(b.apply(x)))
    assert ((a @ b) ** -1 @ (a @ b)).is_identity()
    assert (b ** 2).is_identity()


def test_reflection_requires_integrality():
    with pytest.raises(NotIsometryError):
        diagonal_lattice(3).reflection([1, 2, 0])
