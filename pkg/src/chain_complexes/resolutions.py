"""
Free ZΓ-resolutions of Z.

Every complex exposes its free generators per degree and the boundary of a
generator as a list of terms ``coefficient · translate · generator``. Three
kinds are provided: cellular resolutions given by ZΓ-matrices (torus and
wedge-of-circles models), the homogeneous bar resolution truncated to a ball,
and the tensor product of two resolutions with the diagonal action.
"""
from __future__ import annotations

import itertools
import logging
from abc import ABC, abstractmethod
from typing import Hashable, NamedTuple

from errors import ConfigurationError, ResourceLimitError, ScopeError, ValidationError
from config import settings
from group_core import GroupRingElement

logger = logging.getLogger(__name__)


class BoundaryTerm(NamedTuple):
    coefficient: int
    translate: object
    generator: Hashable


class FreeZGComplex(ABC):
    """A free ZΓ chain complex, augmented over Z in degree 0."""

    def __init__(self, spec, name):
        self.spec = spec
        self.name = name

    @abstractmethod
    def generators(self, degree):
        """Free generators of the given degree (finite, possibly truncated)."""

    @abstractmethod
    def boundary(self, degree, generator):
        """Tuple of BoundaryTerm describing ∂ of a free generator."""

    def augmentation(self, generator):
        raise ValidationError(f"{self.name} carries no augmentation data")

    def label(self, generator):
        return str(generator)

    def test_cycles(self, degree):
        raise ScopeError(f"{self.name} has no stored test cycles in degree {degree}")

    def collect(self, terms):
        """Group terms by generator into ZΓ coefficients."""
        out = {}
        for coefficient, translate, generator in terms:
            bucket = out.setdefault(generator, {})
            bucket[translate] = bucket.get(translate, 0) + coefficient
        collected = {gen: GroupRingElement(self.spec, b) for gen, b in out.items()}
        return {gen: x for gen, x in collected.items() if not x.is_zero}

    def square_zero(self, degree, generators=None):
        """Check ∂∘∂ = 0 exactly on the given generators of ``degree``."""
        if degree < 2:
            return True
        generators = self.generators(degree) if generators is None else generators
        for generator in generators:
            terms = []
            for n, g, face in self.boundary(degree, generator):
                for m, h, face2 in self.boundary(degree - 1, face):
                    terms.append(BoundaryTerm(n * m, g * h, face2))
            if self.collect(terms):
                logger.warning("∂∂ does not vanish on %s in %s", self.label(generator), self.name)
                return False
        return True

    def check_augmented(self):
        """ε∘∂ = 0 on degree-1 generators."""
        for generator in self.generators(1):
            total = sum(n * self.augmentation(face) for n, _, face in self.boundary(1, generator))
            if total:
                return False
        return True


class ResolutionChain:
    """A finite Z-chain of C ⊗_Γ Z: integer coefficients on free generators."""

    def __init__(self, complex_, degree, terms=None, label=""):
        self.complex = complex_
        self.degree = degree
        self.label = label
        cleaned = {}
        for generator, c in (terms or {}).items():
            cleaned[generator] = cleaned.get(generator, 0) + int(c)
        self.terms = {g: c for g, c in cleaned.items() if c}

    def boundary(self):
        if self.degree == 0:
            return ResolutionChain(self.complex, -1)
        out = {}
        for generator, c in self.terms.items():
            for n, _, face in self.complex.boundary(self.degree, generator):
                out[face] = out.get(face, 0) + c * n
        return ResolutionChain(self.complex, self.degree - 1, out)

    def is_cycle(self):
        return self.degree == 0 or not self.boundary().terms

    @property
    def is_zero(self):
        return not self.terms

    def _combine(self, other, sign):
        if other.degree != self.degree:
            raise ValidationError(f"Degree mismatch: {self.degree} vs {other.degree}")
        terms = dict(self.terms)
        for g, c in other.terms.items():
            terms[g] = terms.get(g, 0) + sign * c
        return ResolutionChain(self.complex, self.degree, terms, self.label)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return ResolutionChain(self.complex, self.degree, {g: -c for g, c in self.terms.items()})

    def __rmul__(self, n):
        return ResolutionChain(self.complex, self.degree, {g: n * c for g, c in self.terms.items()})

    def __repr__(self):
        inner = " + ".join(f"{c}·{self.complex.label(g)}" for g, c in self.terms.items())
        return f"ResolutionChain[{self.degree}]({inner or '0'})"


class CellularResolution(FreeZGComplex):
    """
    Resolution from the cells of a finite classifying complex. ``differentials[k]``
    is the ZΓ-matrix of ∂_k with shape (#cells[k-1], #cells[k]).
    """

    def __init__(self, spec, cells, differentials, name="cellular"):
        super().__init__(spec, name)
        self.cells = {k: tuple(v) for k, v in cells.items()}
        self.differentials = {k: [list(row) for row in d] for k, d in differentials.items()}
        self._index = {k: {c: i for i, c in enumerate(v)} for k, v in self.cells.items()}
        for k, d in self.differentials.items():
            rows, cols = len(self.cells.get(k - 1, ())), len(self.cells.get(k, ()))
            if len(d) != rows or any(len(row) != cols for row in d):
                raise ValidationError(f"Differential d_{k} of {name} has the wrong shape")
        self.top_degree = max(self.cells) if self.cells else 0

    def generators(self, degree):
        return self.cells.get(degree, ())

    def boundary(self, degree, generator):
        if degree == 0:
            return ()
        j = self._index[degree][generator]
        terms = []
        for i, row in enumerate(self.differentials.get(degree, [])):
            entry = row[j]
            for g, c in entry.items():
                terms.append(BoundaryTerm(c, g, self.cells[degree - 1][i]))
        return tuple(terms)

    def augmentation(self, generator):
        if generator not in self._index.get(0, {}):
            raise ValidationError(f"{generator!r} is not a degree-0 cell of {self.name}")
        return 1

    def test_cycles(self, degree):
        cycles = []
        for cell in self.generators(degree):
            chain = ResolutionChain(self, degree, {cell: 1}, label=cell)
            if chain.is_cycle():
                cycles.append(chain)
        return tuple(cycles)


def _cell_name(subset):
    return "e{" + ",".join(str(i + 1) for i in subset) + "}"


def torus_resolution(spec):
    """Koszul resolution of Z over Z[Z^d]: cells are subsets of the generators."""
    if not spec.is_abelian:
        raise ConfigurationError(f"The torus resolution needs a free abelian group, got {spec}")
    d = spec.rank
    subsets = {k: list(itertools.combinations(range(d), k)) for k in range(d + 1)}
    cells = {k: [_cell_name(s) for s in subsets[k]] for k in subsets}
    one = GroupRingElement.one(spec)
    differentials = {}
    for k in range(1, d + 1):
        index = {s: i for i, s in enumerate(subsets[k - 1])}
        matrix = [[GroupRingElement.zero(spec) for _ in subsets[k]] for _ in subsets[k - 1]]
        for j, subset in enumerate(subsets[k]):
            for position, generator_index in enumerate(subset):
                face = subset[:position] + subset[position + 1:]
                entry = GroupRingElement.of(spec.generator(generator_index)) - one
                matrix[index[face]][j] = matrix[index[face]][j] + entry * ((-1) ** position)
        differentials[k] = matrix
    return CellularResolution(spec, cells, differentials, name=f"torus({spec})")


def wedge_resolution(spec):
    """Resolution of the wedge of r circles: ∂e_i = (a_i − 1)e⁰."""
    if spec.is_abelian and spec.rank != 1:
        raise ConfigurationError(f"The wedge-of-circles resolution needs a free group, got {spec}")
    one = GroupRingElement.one(spec)
    cells = {0: ["e0"], 1: [f"e{name}" for name in spec.names]}
    row = [GroupRingElement.of(s) - one for s in spec.generators()]
    return CellularResolution(spec, cells, {1: [row]}, name=f"wedge({spec})")


def cellular_resolution(spec):
    return torus_resolution(spec) if spec.is_abelian else wedge_resolution(spec)


class BarResolution(FreeZGComplex):
    """
    Homogeneous bar resolution. The free generator (γ1, ..., γk) stands for the
    simplex [e, γ1, ..., γk]; generators are enumerated with vertices in ball(radius).
    """

    def __init__(self, spec, radius):
        super().__init__(spec, f"bar({spec}, R={radius})")
        if radius < 0:
            raise ValidationError(f"Resolution radius must be nonnegative, got {radius}")
        self.radius = radius

    def generators(self, degree):
        ball = self.spec.ball(self.radius)
        count = len(ball) ** degree
        cap = settings.ball_cap()
        if count > cap:
            raise ResourceLimitError(
                f"{count} bar generators in degree {degree} exceed the cap {cap}", cap=cap
            )
        return tuple(itertools.product(ball, repeat=degree))

    def simplex(self, generator):
        return (self.spec.identity(),) + tuple(generator)

    def normalize(self, simplex):
        """Write [γ0, ..., γk] as γ0·[e, γ0⁻¹γ1, ..., γ0⁻¹γk]."""
        g = simplex[0]
        inverse = g.inverse()
        return g, tuple(inverse * x for x in simplex[1:])

    def boundary(self, degree, generator):
        if degree == 0:
            return ()
        vertices = self.simplex(generator)
        terms = []
        for i in range(degree + 1):
            g, face = self.normalize(vertices[:i] + vertices[i + 1:])
            terms.append(BoundaryTerm((-1) ** i, g, face))
        return tuple(terms)

    def augmentation(self, generator):
        if generator != ():
            raise ValidationError("The augmentation is defined on degree 0 only")
        return 1

    def label(self, generator):
        return "[" + ", ".join(str(g) for g in self.simplex(generator)) + "]"

    def test_cycles(self, degree):
        return fundamental_cycles(self, degree)


def _permutation_sign(perm):
    sign = 1
    perm = list(perm)
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def fundamental_cycles(bar, degree):
    """
    Cycles of the bar resolution spanning H_k(Γ): for Z^d the antisymmetrized
    flags Σ sign(π)[e, t_π1, t_π1 t_π2, ...], for F_r the loops [e, a_i].
    """
    spec = bar.spec
    if degree == 0:
        return (ResolutionChain(bar, 0, {(): 1}, label="[e]"),)
    cycles = []
    if spec.is_abelian:
        for subset in itertools.combinations(range(spec.rank), degree):
            terms = {}
            for perm in itertools.permutations(subset):
                vertex = spec.identity()
                flag = []
                for index in perm:
                    vertex = vertex * spec.generator(index)
                    flag.append(vertex)
                key = tuple(flag)
                terms[key] = terms.get(key, 0) + _permutation_sign(perm)
            label = "∧".join(spec.names[i] for i in subset)
            cycles.append(ResolutionChain(bar, degree, terms, label=label))
    elif degree == 1:
        for name, s in zip(spec.names, spec.generators()):
            cycles.append(ResolutionChain(bar, 1, {(s,): 1}, label=name))
    return tuple(cycles)


class TensorComplex(FreeZGComplex):
    """
    C ⊗ D with the diagonal action, free on generators (i, c, g, d) standing for
    c ⊗ g·d with |c| = i. ∂(c⊗d) = ∂c⊗d + (−1)^|c| c⊗∂d.
    """

    def __init__(self, left, right, radius=None):
        if left.spec != right.spec:
            raise ConfigurationError(f"Group mismatch: {left.spec} vs {right.spec}")
        super().__init__(left.spec, f"{left.name} ⊗ {right.name}")
        self.left = left
        self.right = right
        self.radius = radius if radius is not None else getattr(left, "radius", 1)

    def generators(self, degree):
        ball = self.spec.ball(self.radius)
        out = []
        for i in range(degree + 1):
            for c in self.left.generators(i):
                for d in self.right.generators(degree - i):
                    for g in ball:
                        out.append((i, c, g, d))
        return tuple(out)

    def boundary(self, degree, generator):
        i, c, g, d = generator
        identity = self.spec.identity()
        terms = []
        if i > 0:
            for n, h, face in self.left.boundary(i, c):
                terms.append(BoundaryTerm(n, h, (i - 1, face, h.inverse() * g, d)))
        j = degree - i
        if j > 0:
            sign = -1 if i % 2 else 1
            for n, h, face in self.right.boundary(j, d):
                terms.append(BoundaryTerm(sign * n, identity, (i, c, g * h, face)))
        return tuple(terms)

    def augmentation(self, generator):
        i, c, _, d = generator
        if i != 0:
            raise ValidationError("The augmentation is defined on degree 0 only")
        return self.left.augmentation(c) * self.right.augmentation(d)

    def label(self, generator):
        i, c, g, d = generator
        return f"{self.left.label(c)} ⊗ {g}·{self.right.label(d)}"

    def test_cycles(self, degree):
        if self.left is self.right and isinstance(self.left, BarResolution):
            return tuple(diagonal_chain(self, w) for w in self.left.test_cycles(degree))
        raise ScopeError("Test cycles of a tensor complex need the diagonal of one bar resolution")


def diagonal_terms(bar, generator):
    """Alexander–Whitney: [γ0..γn] ↦ Σ_p [γ0..γp] ⊗ [γp..γn] as tensor generators."""
    vertices = bar.simplex(generator)
    n = len(generator)
    out = []
    for p in range(n + 1):
        front = tuple(vertices[1:p + 1])
        g, back = bar.normalize(vertices[p:])
        out.append((p, front, g, back))
    return out


def diagonal_chain(tensor, chain):
    """Image of a bar chain under the Alexander–Whitney diagonal."""
    terms = {}
    for generator, c in chain.terms.items():
        for key in diagonal_terms(chain.complex, generator):
            terms[key] = terms.get(key, 0) + c
    return ResolutionChain(tensor, chain.degree, terms, label=f"Δ({chain.label})")
