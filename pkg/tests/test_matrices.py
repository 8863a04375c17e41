#!/usr/bin/env python3
"""
Test chain_complexes.matrices
Smith normal form, integer solving, exact ranks and homology of finite complexes
"""
import os
import sys

import numpy as np
from hypothesis import given, settings as hsettings
from hypothesis import strategies as st

# Add src to path so we can import our modules
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from chain_complexes import (  # noqa: E402
    ChainComplex,
    determinant,
    homology,
    int_matrix,
    invariant_factors,
    kuhn_complex,
    rank,
    smith_normal_form,
    solve_integer_system,
    sparse_invariant_factors,
)
from chain_complexes.matrices import REAL_PROJECTIVE_PLANE  # noqa: E402
from group_core import parse_group  # noqa: E402


@st.composite
def small_matrices(draw):
    m = draw(st.integers(1, 8))
    n = draw(st.integers(1, 8))
    rows = draw(st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=m, max_size=m))
    return rows


@given(small_matrices())
@hsettings(max_examples=60, deadline=None)
def test_smith_normal_form_properties(rows):
    """U·A·V = D, D diagonal with d_i | d_(i+1), U and V unimodular"""
    A = int_matrix(rows)
    U, D, V = smith_normal_form(A)
    assert (U.dot(A).dot(V) == D).all()
    m, n = D.shape
    for i in range(m):
        for j in range(n):
            if i != j:
                assert D[i, j] == 0
    diagonal = [int(D[i, i]) for i in range(min(m, n))]
    nonzero = [d for d in diagonal if d]
    assert all(d > 0 for d in nonzero)
    assert diagonal[:len(nonzero)] == nonzero
    for a, b in zip(nonzero, nonzero[1:]):
        assert b % a == 0
    assert abs(determinant(U)) == 1
    assert abs(determinant(V)) == 1


@given(small_matrices())
@hsettings(max_examples=60, deadline=None)
def test_sparse_invariant_factors_match_dense(rows):
    """Unit-pivot elimination plus SNF of the rest gives the dense invariant factors"""
    sparse = [{j: v for j, v in enumerate(row) if v} for row in rows]
    assert sparse_invariant_factors(sparse) == invariant_factors(rows)
    assert len(sparse_invariant_factors(sparse)) == rank(int_matrix(rows))


def test_sparse_invariant_factors_keep_torsion():
    """Z^2 / <(2, 0), (1, 3)> has a single factor 6 after the unit pivot"""
    assert sparse_invariant_factors([{0: 2}, {0: 1, 1: 3}]) == [1, 6]
    assert sparse_invariant_factors([{0: 2, 1: 4}]) == [2]
    assert sparse_invariant_factors([]) == []


def test_known_invariant_factors():
    """Textbook example with factors 2, 6, 12"""
    assert invariant_factors([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == [2, 6, 12]
    assert invariant_factors([[0, 0], [0, 0]]) == []


def test_determinant_exact():
    """Bareiss elimination on small integer matrices"""
    assert determinant([[2, 0], [0, 3]]) == 6
    assert determinant([[0, 1], [1, 0]]) == -1
    assert determinant([[1, 2], [2, 4]]) == 0
    assert determinant([[10**20, 1], [1, 10**20]]) == 10**40 - 1


def test_solve_integer_system():
    """Integer solutions when they exist, None otherwise"""
    x = solve_integer_system([[2, 0], [0, 3]], [4, 9])
    assert x == [2, 3]
    assert solve_integer_system([[2]], [3]) is None
    A = [[1, 1, 0], [0, 1, 1]]
    x = solve_integer_system(A, [5, 7])
    assert (np.array(A, dtype=object).dot(np.array(x, dtype=object)) == np.array([5, 7], dtype=object)).all()


def test_real_projective_plane_homology():
    """The 6-vertex RP^2 has H = Z, Z/2, 0"""
    groups = homology(ChainComplex.from_simplices(REAL_PROJECTIVE_PLANE))
    assert [g.betti for g in groups] == [1, 0, 0]
    assert groups[1].torsion == (2,)
    assert str(groups[1]) == "Z/2"


def test_torus_quotient_homology():
    """The Kuhn complex of R^2 modulo Z^2 is the torus"""
    quotient = kuhn_complex(parse_group("Z^2")).quotient_complex()
    groups = homology(quotient)
    assert [g.betti for g in groups] == [1, 2, 1]
    assert all(not g.torsion for g in groups)


def test_circle_from_simplices():
    """Boundary of a triangle is a circle"""
    groups = homology(ChainComplex.from_simplices([(0, 1), (1, 2), (0, 2)]))
    assert [g.betti for g in groups] == [1, 1]
