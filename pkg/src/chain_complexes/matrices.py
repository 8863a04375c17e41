"""
Exact integer linear algebra on numpy object arrays: Smith normal form,
integer solving and homology of finite chain complexes over Z.

Entries are Python ints, so nothing overflows.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field

import numpy as np

from errors import ValidationError

logger = logging.getLogger(__name__)


def int_matrix(rows, shape=None):
    """Copy ``rows`` into a 2-D object array of Python ints."""
    if shape is not None:
        m, n = shape
        out = np.zeros((m, n), dtype=object)
        if m and n:
            data = np.asarray(rows, dtype=object).tolist()
            for i in range(m):
                for j in range(n):
                    out[i, j] = int(data[i][j])
        return out
    data = np.asarray(rows, dtype=object).tolist() if isinstance(rows, np.ndarray) else rows
    converted = [[int(v) for v in row] for row in data]
    if not converted:
        raise ValidationError("Empty matrix needs an explicit shape")
    width = len(converted[0])
    if any(len(row) != width for row in converted):
        raise ValidationError("Ragged rows cannot form a matrix")
    return int_matrix(converted, (len(converted), width))


def identity(n):
    out = np.zeros((n, n), dtype=object)
    for i in range(n):
        out[i, i] = 1
    return out


def _nonzero(a):
    return np.asarray(a != 0, dtype=bool)


def _swap_rows(a, i, j):
    if a is not None and i != j:
        a[[i, j], :] = a[[j, i], :]


def _swap_cols(a, i, j):
    if a is not None and i != j:
        a[:, [i, j]] = a[:, [j, i]]


def _place_pivot(A, U, V, t):
    sub = A[t:, t:]
    positions = np.argwhere(_nonzero(sub))
    if positions.size == 0:
        return False
    i, j = min(positions.tolist(), key=lambda ij: (abs(sub[ij[0], ij[1]]), ij[0], ij[1]))
    _swap_rows(A, t, t + i)
    _swap_rows(U, t, t + i)
    _swap_cols(A, t, t + j)
    _swap_cols(V, t, t + j)
    return True


def _clear_cross(A, U, V, t):
    """Reduce row t and column t against the pivot; True if a smaller remainder remains."""
    p = A[t, t]
    rows = np.nonzero(_nonzero(A[t + 1:, t]))[0] + t + 1
    if rows.size:
        q = np.array([A[r, t] // p for r in rows], dtype=object)
        A[rows, :] = A[rows, :] - q[:, None] * A[t, :][None, :]
        if U is not None:
            U[rows, :] = U[rows, :] - q[:, None] * U[t, :][None, :]
    cols = np.nonzero(_nonzero(A[t, t + 1:]))[0] + t + 1
    if cols.size:
        q = np.array([A[t, c] // p for c in cols], dtype=object)
        A[:, cols] = A[:, cols] - A[:, t][:, None] * q[None, :]
        if V is not None:
            V[:, cols] = V[:, cols] - V[:, t][:, None] * q[None, :]
    candidates = [(abs(A[r, t]), r, t) for r in range(t + 1, A.shape[0]) if A[r, t] != 0]
    candidates += [(abs(A[t, c]), t, c) for c in range(t + 1, A.shape[1]) if A[t, c] != 0]
    if not candidates:
        return False
    _, r, c = min(candidates)
    _swap_rows(A, t, r)
    _swap_rows(U, t, r)
    _swap_cols(A, t, c)
    _swap_cols(V, t, c)
    return True


def _non_divisible_row(A, t):
    p = A[t, t]
    sub = A[t + 1:, t + 1:]
    if sub.size == 0:
        return None
    bad = np.argwhere(_nonzero(sub % p))
    if bad.size == 0:
        return None
    return int(bad[0][0]) + t + 1


def smith_normal_form(matrix, transforms=True):
    """
    Return (U, D, V) with U·A·V = D, D diagonal, d_i | d_{i+1}, d_i >= 0 and
    U, V unimodular. With ``transforms=False`` U and V are None.
    """
    A = int_matrix(matrix) if not isinstance(matrix, np.ndarray) else int_matrix(matrix, matrix.shape)
    m, n = A.shape
    U = identity(m) if transforms else None
    V = identity(n) if transforms else None
    for t in range(min(m, n)):
        if not _place_pivot(A, U, V, t):
            break
        while True:
            if _clear_cross(A, U, V, t):
                continue
            r = _non_divisible_row(A, t)
            if r is None:
                break
            A[t, :] = A[t, :] + A[r, :]
            if U is not None:
                U[t, :] = U[t, :] + U[r, :]
        if A[t, t] < 0:
            A[t, :] = -A[t, :]
            if U is not None:
                U[t, :] = -U[t, :]
    return U, A, V


def invariant_factors(matrix):
    _, D, _ = smith_normal_form(matrix, transforms=False)
    return [int(D[i, i]) for i in range(min(D.shape)) if D[i, i] != 0]


def rank(matrix):
    return len(invariant_factors(matrix))


def sparse_invariant_factors(rows):
    """
    Nonzero invariant factors of a sparse integer matrix given as rows
    {column: int}. Entries ±1 are used as pivots without densifying; the rows
    left over go through ``smith_normal_form``.
    """
    rows = [{c: int(v) for c, v in row.items() if v} for row in rows]
    by_column = {}
    for i, row in enumerate(rows):
        for c in row:
            by_column.setdefault(c, set()).add(i)
    alive = {i for i, row in enumerate(rows) if row}
    units = 0
    progress = True
    while progress:
        progress = False
        for i in sorted(alive):
            if i not in alive:
                continue
            pivot = rows[i]
            column = next((c for c in sorted(pivot) if abs(pivot[c]) == 1), None)
            if column is None:
                continue
            for j in sorted(by_column[column] - {i}):
                other = rows[j]
                factor = other[column] * pivot[column]
                for c, v in pivot.items():
                    updated = other.get(c, 0) - factor * v
                    if updated:
                        other[c] = updated
                        by_column.setdefault(c, set()).add(j)
                    else:
                        other.pop(c, None)
                        by_column[c].discard(j)
                if not other:
                    alive.discard(j)
            for c in pivot:
                by_column[c].discard(i)
            alive.discard(i)
            units += 1
            progress = True
    remaining = [rows[i] for i in sorted(alive)]
    factors = [1] * units
    if remaining:
        columns = sorted({c for row in remaining for c in row})
        position = {c: k for k, c in enumerate(columns)}
        dense = np.zeros((len(remaining), len(columns)), dtype=object)
        for r, row in enumerate(remaining):
            for c, v in row.items():
                dense[r, position[c]] = v
        logger.debug("Sparse SNF: %d unit pivots, %dx%d remainder", units, *dense.shape)
        factors.extend(invariant_factors(dense))
    return sorted(factors)


def determinant(matrix):
    """Exact determinant by fraction-free (Bareiss) elimination."""
    M = [[int(v) for v in row] for row in np.asarray(matrix, dtype=object).tolist()]
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValidationError("Determinant of a non-square matrix")
    if n == 0:
        return 1
    sign, previous = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // previous
        previous = M[k][k]
    return sign * M[n - 1][n - 1]


def solve_integer_system(matrix, rhs):
    """
    One integer solution x of A·x = b (free variables set to 0), or None if
    the system has no integer solution.
    """
    A = int_matrix(matrix, np.asarray(matrix, dtype=object).shape)
    m, n = A.shape
    b = [int(v) for v in rhs]
    if len(b) != m:
        raise ValidationError(f"Right-hand side has length {len(b)}, expected {m}")
    if n == 0:
        return [] if not any(b) else None
    U, D, V = smith_normal_form(A)
    c = U.dot(np.array(b, dtype=object)) if m else np.zeros(0, dtype=object)
    y = [0] * n
    for i in range(m):
        d = D[i, i] if i < n else 0
        if d == 0:
            if c[i] != 0:
                return None
            continue
        if c[i] % d:
            return None
        y[i] = c[i] // d
    x = V.dot(np.array(y, dtype=object))
    return [int(v) for v in x]


@dataclass(frozen=True)
class HomologyGroup:
    betti: int
    torsion: tuple = ()

    def __str__(self):
        parts = []
        if self.betti:
            parts.append("Z" if self.betti == 1 else f"Z^{self.betti}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " + ".join(parts) or "0"


@dataclass
class ChainComplex:
    """
    Finite chain complex of free abelian groups. ``boundaries[k]`` is the
    matrix of d_k: C_k -> C_{k-1}, of shape (ranks[k-1], ranks[k]).
    """

    ranks: tuple
    boundaries: dict = field(default_factory=dict)
    labels: dict = field(default_factory=dict)

    def boundary(self, k):
        top = len(self.ranks)
        rows = self.ranks[k - 1] if 1 <= k <= top else 0
        cols = self.ranks[k] if 0 <= k < top else 0
        if k in self.boundaries:
            return self.boundaries[k]
        return np.zeros((rows, cols), dtype=object)

    def validate(self):
        for k, d in self.boundaries.items():
            expected = (self.ranks[k - 1], self.ranks[k])
            if d.shape != expected:
                raise ValidationError(f"Boundary d_{k} has shape {d.shape}, expected {expected}")
        for k in range(2, len(self.ranks)):
            product = self.boundary(k - 1).dot(self.boundary(k))
            if np.any(_nonzero(product)):
                raise ValidationError(f"d_{k - 1}∘d_{k} is not zero: not a chain complex")

    @classmethod
    def from_simplices(cls, facets):
        """Simplicial chain complex of the closure of ``facets`` (vertex tuples)."""
        simplices = set()
        for facet in facets:
            vertices = tuple(sorted(facet))
            for size in range(1, len(vertices) + 1):
                simplices.update(itertools.combinations(vertices, size))
        top = max(len(s) for s in simplices) - 1
        by_degree = [sorted(s for s in simplices if len(s) == k + 1) for k in range(top + 1)]
        index = [{s: i for i, s in enumerate(level)} for level in by_degree]
        boundaries = {}
        for k in range(1, top + 1):
            d = np.zeros((len(by_degree[k - 1]), len(by_degree[k])), dtype=object)
            for j, simplex in enumerate(by_degree[k]):
                for i in range(k + 1):
                    face = simplex[:i] + simplex[i + 1:]
                    d[index[k - 1][face], j] += (-1) ** i
            boundaries[k] = d
        return cls(tuple(len(level) for level in by_degree), boundaries, {k: by_degree[k] for k in range(top + 1)})


def homology(complex_):
    """Betti numbers and torsion coefficients in every degree."""
    complex_.validate()
    groups = []
    factors = {k: invariant_factors(complex_.boundary(k)) for k in range(1, len(complex_.ranks) + 1)}
    for k, n in enumerate(complex_.ranks):
        rank_out = len(factors.get(k, [])) if k >= 1 else 0
        incoming = factors.get(k + 1, [])
        betti = n - rank_out - len(incoming)
        torsion = tuple(f for f in incoming if f > 1)
        groups.append(HomologyGroup(betti, torsion))
    logger.debug("Homology of complex with ranks %s: %s", complex_.ranks, [str(g) for g in groups])
    return groups


REAL_PROJECTIVE_PLANE = (
    (0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 5, 1),
    (1, 2, 4), (2, 3, 5), (3, 4, 1), (4, 5, 2), (5, 1, 3),
)
