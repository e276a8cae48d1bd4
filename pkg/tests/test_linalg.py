from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, strategies as st

from lorentz_aut import linalg
from oracles import sympy_charpoly, sympy_invariants, sympy_rank
from strategies import int_matrices, small


shapes = st.tuples(st.integers(1, 5), st.integers(1, 5))


@given(shapes.flatmap(lambda s: int_matrices(*s)))
def test_snf_matches_sympy_and_transforms(a):
    u, d, v = linalg.smith_normal_form(a)
    assert linalg.mat_equal(u @ a @ v, d)
    assert abs(linalg.det(u)) == 1 and abs(linalg.det(v)) == 1
    diag = [d[i, i] for i in range(min(d.shape))]
    off = [d[i, j] for i in range(d.shape[0]) for j in range(d.shape[1]) if i != j]
    assert all(x == 0 for x in off)
    nz = [x for x in diag if x != 0]
    assert all(x > 0 for x in nz)
    assert all(nz[i + 1] % nz[i] == 0 for i in range(len(nz) - 1))
    assert nz == sympy_invariants(a)


@given(shapes.flatmap(lambda s: int_matrices(*s)))
def test_rank_and_kernels(a):
    r = linalg.rank(a)
    assert r == sympy_rank(a)
    ker = linalg.nullspace(a)
    assert len(ker) == a.shape[1] - r
    for v in ker:
        assert linalg.is_zero(a @ v)
    zk = linalg.integer_kernel(a)
    assert len(zk) == len(ker)
    for v in zk:
        assert linalg.is_zero(a @ v)


@given(int_matrices(4, 4))
def test_charpoly_and_det_match_sympy(a):
    cp = linalg.charpoly(a)
    assert cp == [int(c) for c in sympy_charpoly(a)]
    assert linalg.det(a) == sympy.Matrix(a.tolist()).det()
    assert cp[-1] == (-1) ** 4 * linalg.det(a)


def test_charpoly_rational_entries():
    a = linalg.normalize(np.array([[Fraction(1, 2), 1], [0, Fraction(3, 2)]], dtype=object))
    assert linalg.charpoly(a) == [1, -2, Fraction(3, 4)]


@given(int_matrices(3, 3), st.lists(small, min_size=3, max_size=3))
def test_solve_integer_consistency(a, x):
    x = linalg.int_vector(x)
    b = a @ x
    sol = linalg.solve_integer(a, b)
    assert sol is not None
    assert linalg.mat_equal(a @ sol, b)


def test_solve_integer_detects_no_solution():
    a = linalg.int_matrix([[2, 0], [0, 2]])
    assert linalg.solve_integer(a, [1, 0]) is None
    assert linalg.solve([[1, 1], [1, 1]], [0, 1]) is None


@given(st.lists(st.integers(-6, 6), min_size=2, max_size=5).filter(lambda v: any(v)))
def test_extend_to_basis(v):
    c = linalg.primitive_part(v)
    m = linalg.extend_to_basis(c)
    assert linalg.mat_equal(m[:, 0], c)
    assert abs(linalg.det(m)) == 1


def test_extend_to_basis_rejects_imprimitive():
    with pytest.raises(ValueError):
        linalg.extend_to_basis([2, 4])


def test_inverse_and_powers():
    a = linalg.int_matrix([[2, 1], [1, 1]])
    assert linalg.mat_equal(linalg.int_inverse(a), [[1, -1], [-1, 2]])
    assert linalg.mat_equal(linalg.mat_pow(a, 5), np.array(sympy.Matrix([[2, 1], [1, 1]]) ** 5, dtype=object))
    with pytest.raises(ZeroDivisionError):
        linalg.inverse([[1, 2], [2, 4]])


def test_coercions():
    assert linalg.to_int("12") == 12
    assert linalg.to_int(Fraction(4, 2)) == 2
    with pytest.raises(ValueError):
        linalg.to_int(Fraction(1, 2))
    with pytest.raises(TypeError):
        linalg.to_int(True)
    with pytest.raises(TypeError):
        linalg.to_int(1.0)
    assert linalg.primitive_part([Fraction(1, 2), Fraction(-1, 3)]).tolist() == [3, -2]
