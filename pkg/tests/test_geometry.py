#!/usr/bin/env python3
"""
Test lipschitz_slant.geometry
Staircase triangulations, the Stokes formula, the support cocycle ω and generic points
"""
import os
import random
import re
import sys
from fractions import Fraction
from math import comb

import pytest

# Add src to path so we can import our modules
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from errors import GenericityViolation, ValidationError  # noqa: E402
from lipschitz_slant import (  # noqa: E402
    GenericPointStream,
    SupportCocycle,
    chain_boundary,
    omega_eval,
    staircase,
    staircase_chain,
    triangulate_product,
)

STANDARD = [(0, 0), (1, 0), (0, 1)]


def _accumulate(target, chain, sign):
    for key, value in chain.items():
        target[key] = target.get(key, 0) + sign * value


def _clean(chain):
    return {k: v for k, v in chain.items() if v}


def test_staircase_one_by_one():
    """The square splits into two triangles of opposite sign"""
    assert staircase(1, 1) == (
        (((0, 0), (1, 0), (1, 1)), 1),
        (((0, 0), (0, 1), (1, 1)), -1),
    )


@pytest.mark.parametrize("k,ell", [(0, 0), (0, 3), (1, 2), (2, 2), (3, 1)])
def test_staircase_piece_count(k, ell):
    """C(k+ℓ, k) monotone paths, each from (0,0) to (k,ℓ)"""
    pieces = staircase(k, ell)
    assert len(pieces) == comb(k + ell, k)
    for path, sign in pieces:
        assert path[0] == (0, 0) and path[-1] == (k, ell)
        assert len(path) == k + ell + 1
        assert sign in (1, -1)


def test_staircase_rejects_negative():
    """Negative dimensions are invalid"""
    with pytest.raises(ValidationError):
        staircase(-1, 2)


def test_stokes_formula_random():
    """∂(L × R) = ∂L × R + (−1)^k L × ∂R on labelled simplices"""
    rng = random.Random(7)
    for _ in range(50):
        k = rng.randint(1, 3)
        ell = rng.randint(1, 3)
        left = tuple(f"a{i}" for i in rng.sample(range(10), k + 1))
        right = tuple(f"b{j}" for j in rng.sample(range(10), ell + 1))
        lhs = chain_boundary(staircase_chain(left, right))
        rhs = {}
        for i in range(k + 1):
            _accumulate(rhs, staircase_chain(left[:i] + left[i + 1:], right), (-1) ** i)
        for j in range(ell + 1):
            _accumulate(rhs, staircase_chain(left, right[:j] + right[j + 1:]), (-1) ** (k + j))
        assert lhs == _clean(rhs)


def test_boundary_squares_to_zero():
    """∂∂ of a staircase chain vanishes"""
    chain = staircase_chain(("x0", "x1", "x2"), ("y0", "y1"))
    assert chain_boundary(chain_boundary(chain)) == {}


def test_omega_inside_outside():
    """±1 by orientation inside the open simplex, 0 outside"""
    inner = SupportCocycle((Fraction(1, 4), Fraction(1, 4)))
    outer = SupportCocycle((Fraction(3, 4), Fraction(3, 4)))
    assert omega_eval(STANDARD, inner) == 1
    assert omega_eval([STANDARD[0], STANDARD[2], STANDARD[1]], inner) == -1
    assert omega_eval(STANDARD, outer) == 0
    assert omega_eval([(5, 5), (6, 5), (5, 6)], inner) == 0


def test_omega_orientation_flip():
    """ω with orientation −1 negates every value"""
    flipped = SupportCocycle((Fraction(1, 4), Fraction(1, 4)), orientation=-1)
    assert flipped.evaluate(STANDARD) == -1
    with pytest.raises(ValidationError):
        SupportCocycle((Fraction(1, 4),), orientation=2)


def test_omega_zero_dimensional():
    """On R^0 the single point is always hit"""
    assert omega_eval([()], SupportCocycle(())) == 1
    assert omega_eval([()], SupportCocycle((), orientation=-1)) == -1


def test_omega_face_hit_is_genericity_violation():
    """A point on a face hyperplane is rejected"""
    on_edge = SupportCocycle((Fraction(1, 2), Fraction(1, 2)))
    with pytest.raises(GenericityViolation):
        omega_eval(STANDARD, on_edge)


def test_omega_wrong_shape():
    """Vertex count and dimension must match R^n"""
    omega = SupportCocycle((Fraction(1, 4), Fraction(1, 4)))
    with pytest.raises(ValidationError):
        omega_eval(STANDARD[:2], omega)


def test_omega_is_a_cocycle():
    """Σ (−1)^i ω(∂_i σ) = 0 on random integer 3-simplices in R^2"""
    omega = GenericPointStream(20240601).support_cocycle(2)
    rng = random.Random(11)
    checked = 0
    for _ in range(100):
        simplex = [(rng.randint(-2, 3), rng.randint(-2, 3)) for _ in range(4)]
        try:
            total = sum((-1) ** i * omega_eval(simplex[:i] + simplex[i + 1:], omega) for i in range(4))
        except GenericityViolation:
            continue
        assert total == 0
        checked += 1
    assert checked > 90


def test_triangulated_square_has_degree_one():
    """The staircase triangulation of [0,1]^2 covers a generic point once, positively"""
    segment = [(0,), (1,)]
    pieces = triangulate_product([segment, segment])
    assert len(pieces) == 2
    omega = GenericPointStream(3).support_cocycle(2)
    assert sum(sign * omega_eval(vertices, omega) for vertices, sign in pieces) == 1


def test_product_cocycle():
    """ω × ω lives on the product with multiplied orientation"""
    a = SupportCocycle((Fraction(1, 3),), orientation=-1)
    b = SupportCocycle((Fraction(2, 5),))
    ab = a.product(b)
    assert ab.dimension == 2
    assert ab.point == (Fraction(1, 3), Fraction(2, 5))
    assert ab.orientation == -1


def test_point_stream_is_deterministic():
    """Same seed, same points; rendered as p/q strings"""
    first = GenericPointStream(42)
    second = GenericPointStream(42)
    assert first.next_point(3) == second.next_point(3)
    assert first.next_point(1) == second.next_point(1)
    rendered = first.rendered()
    assert len(rendered) == 2 and len(rendered[0]) == 3
    assert all(re.fullmatch(r"-?\d+/\d+", x) for p in rendered for x in p)
    first.begin_attempt()
    assert first.rendered() == []


def test_point_stream_near_centre():
    """Generic points stay inside the unit cube around (1/2, ..., 1/2)"""
    stream = GenericPointStream(5)
    for _ in range(20):
        point = stream.next_point(2)
        assert all(Fraction(3, 8) <= x <= Fraction(5, 8) for x in point)
        assert all(x != Fraction(1, 2) for x in point)
