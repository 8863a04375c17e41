"""
Exact geometry over the rationals: staircase triangulations of products of
simplices and the support cocycle ω, realized as the signed membership of a
generic rational point p in an affine simplex.
"""
from __future__ import annotations

import itertools
import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from errors import GenericityViolation, ValidationError

logger = logging.getLogger(__name__)

# Denominator of generic coordinates; prime, so hyperplanes through lattice points are rarely hit.
GENERIC_DENOMINATOR = 1_000_003


@lru_cache(maxsize=None)
def staircase(k, ell):
    """
    (k, ℓ)-shuffle paths through the grid of vertex pairs of Δ^k × Δ^ℓ.
    Each path is a tuple of k+ℓ+1 pairs (i, j); its sign is (−1)^(number of
    pairs of a b-step preceding an a-step).
    """
    if k < 0 or ell < 0:
        raise ValidationError(f"staircase needs nonnegative dimensions, got ({k}, {ell})")
    pieces = []
    for a_positions in itertools.combinations(range(k + ell), k):
        a_set = set(a_positions)
        i = j = 0
        path = [(0, 0)]
        inversions = 0
        b_seen = 0
        for step in range(k + ell):
            if step in a_set:
                i += 1
                inversions += b_seen
            else:
                j += 1
                b_seen += 1
            path.append((i, j))
        pieces.append((tuple(path), -1 if inversions % 2 else 1))
    return tuple(pieces)


def staircase_chain(left, right):
    """The staircase chain of left × right as {tuple of vertex pairs: sign}."""
    chain = {}
    for path, sign in staircase(len(left) - 1, len(right) - 1):
        key = tuple((left[i], right[j]) for i, j in path)
        chain[key] = chain.get(key, 0) + sign
    return chain


def chain_boundary(chain):
    out = {}
    for simplex, c in chain.items():
        for i in range(len(simplex)):
            face = simplex[:i] + simplex[i + 1:]
            out[face] = out.get(face, 0) + c * (-1) ** i
    return {k: v for k, v in out.items() if v}


def triangulate_product(factors):
    """
    Staircase triangulation of a product of simplices given by vertex coordinates.
    Returns [(vertices in concatenated coordinates, sign)].
    """
    pieces = [(tuple(factors[0]), 1)]
    for factor in factors[1:]:
        nxt = []
        for vertices, sign in pieces:
            for path, s in staircase(len(vertices) - 1, len(factor) - 1):
                nxt.append((tuple(tuple(vertices[i]) + tuple(factor[j]) for i, j in path), sign * s))
        pieces = nxt
    return pieces


def _eliminate(columns, rhs):
    """Solve M·μ = rhs with M given by columns; returns (det, μ or None)."""
    n = len(rhs)
    M = [[Fraction(columns[j][i]) for j in range(n)] + [Fraction(rhs[i])] for i in range(n)]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if M[r][col] != 0), None)
        if pivot is None:
            return Fraction(0), None
        if pivot != col:
            M[col], M[pivot] = M[pivot], M[col]
            det = -det
        det *= M[col][col]
        for r in range(col + 1, n):
            if M[r][col] != 0:
                factor = M[r][col] / M[col][col]
                M[r] = [a - factor * b for a, b in zip(M[r], M[col])]
    solution = [Fraction(0)] * n
    for r in range(n - 1, -1, -1):
        acc = M[r][n] - sum(M[r][c] * solution[c] for c in range(r + 1, n))
        solution[r] = acc / M[r][r]
    return det, solution


def _affine_rank(points):
    base = points[0]
    rows = [[Fraction(a) - Fraction(b) for a, b in zip(p, base)] for p in points[1:]]
    rank_ = 0
    width = len(base)
    for col in range(width):
        pivot = next((r for r in range(rank_, len(rows)) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[rank_], rows[pivot] = rows[pivot], rows[rank_]
        for r in range(len(rows)):
            if r != rank_ and rows[r][col] != 0:
                factor = rows[r][col] / rows[rank_][col]
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[rank_])]
        rank_ += 1
    return rank_


@dataclass(frozen=True)
class SupportCocycle:
    """ω on R^n: degree at the generic point ``point``, times ``orientation``."""

    point: tuple
    orientation: int = 1

    def __post_init__(self):
        object.__setattr__(self, "point", tuple(Fraction(x) for x in self.point))
        if self.orientation not in (1, -1):
            raise ValidationError("Orientation must be ±1")

    @property
    def dimension(self):
        return len(self.point)

    def evaluate(self, vertices):
        return omega_eval(vertices, self)

    def product(self, other):
        return SupportCocycle(self.point + other.point, self.orientation * other.orientation)

    def rendered_point(self):
        return [f"{x.numerator}/{x.denominator}" for x in self.point]


def omega_eval(vertices, omega):
    """
    +1/−1 (the orientation of the simplex, times ω's orientation) if p lies in
    the open simplex, 0 if p is outside its closed hull.
    """
    n = omega.dimension
    vertices = [tuple(Fraction(x) for x in v) for v in vertices]
    if len(vertices) != n + 1 or any(len(v) != n for v in vertices):
        raise ValidationError(f"omega_eval needs {n + 1} points in R^{n}")
    if n == 0:
        return omega.orientation
    p = omega.point
    for axis in range(n):
        coords = [v[axis] for v in vertices]
        if p[axis] < min(coords) or p[axis] > max(coords):
            return 0
    v0 = vertices[0]
    columns = [[a - b for a, b in zip(v, v0)] for v in vertices[1:]]
    det, mu = _eliminate(columns, [a - b for a, b in zip(p, v0)])
    if det == 0:
        if _affine_rank(vertices + [p]) == _affine_rank(vertices):
            raise GenericityViolation(f"Point {omega.rendered_point()} lies in the span of a degenerate simplex")
        return 0
    barycentric = [1 - sum(mu)] + list(mu)
    if any(t == 0 for t in barycentric):
        raise GenericityViolation(f"Point {omega.rendered_point()} lies on a face hyperplane")
    if all(t > 0 for t in barycentric):
        return omega.orientation * (1 if det > 0 else -1)
    return 0


@dataclass
class GenericPointStream:
    """Seeded stream of candidate generic points near (1/2, ..., 1/2)."""

    seed: int
    drawn: list = field(default_factory=list)

    def __post_init__(self):
        self._rng = random.Random(self.seed)

    def begin_attempt(self):
        self.drawn = []

    def next_point(self, n):
        spread = GENERIC_DENOMINATOR // 8
        point = tuple(
            Fraction(1, 2) + Fraction(self._rng.randint(-spread, spread) or 1, GENERIC_DENOMINATOR)
            for _ in range(n)
        )
        self.drawn.append(point)
        logger.debug("Drew generic point %s", [str(x) for x in point])
        return point

    def support_cocycle(self, n, orientation=1):
        return SupportCocycle(self.next_point(n), orientation)

    def rendered(self):
        return [[f"{x.numerator}/{x.denominator}" for x in p] for p in self.drawn]
