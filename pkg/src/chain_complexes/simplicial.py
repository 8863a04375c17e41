"""
Simplicial parameter spaces P with a Γ-action, stored by orbit representatives,
and Γ-invariant chains on them with local coefficients.

Face data of an orbit cell σ is a list of (orbit τ, translator g, sign s) saying
that the face is g·τ. Invariant chains store one coefficient λ_σ per orbit with
λ_{γσ} = γ·λ_σ; the boundary contribution of a face (τ, g, s) is s·g⁻¹λ_σ at τ.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from errors import ConfigurationError, ScopeError, ValidationError
from group_core import Character, CoefficientModule, GroupRingElement, TensorElement

from .matrices import ChainComplex
from .resolutions import CellularResolution

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Face:
    orbit: int
    translate: object
    sign: int


@dataclass(frozen=True)
class OrbitCell:
    name: str
    degree: int
    faces: tuple = ()
    vertices: Optional[tuple] = None


@dataclass(frozen=True)
class Stabilizer:
    """Common stabilizer of all cells: trivial, or the kernel of a character."""

    character: Optional[Character] = None

    @property
    def is_trivial(self):
        return self.character is None

    def contains(self, g):
        if self.character is None:
            return g.is_identity
        return self.character(g) == 0

    def coset_key(self, g):
        return g if self.character is None else self.character(g)

    def sample(self, spec, radius=2):
        return tuple(g for g in spec.ball(radius) if not g.is_identity and self.contains(g))


class SimplicialGammaComplex:
    """
    P given by orbit representatives. ``translation`` lists characters giving the
    coordinate shift τ(γ) of the action on vertex coordinates (empty for a
    complex without geometry); ``lattice_steps`` describe τ(Γ) coordinatewise.
    """

    def __init__(
        self,
        spec,
        cells,
        stabilizer=None,
        translation=None,
        lattice_steps=None,
        representative: Optional[Callable] = None,
        name="P",
    ):
        self.spec = spec
        self.name = name
        self.stabilizer = stabilizer or Stabilizer()
        self.translation = tuple(translation) if translation is not None else None
        self.lattice_steps = tuple(lattice_steps) if lattice_steps is not None else None
        self._representative = representative
        self._cells = {k: tuple(v) for k, v in cells.items()}
        self._index = {k: {c.name: i for i, c in enumerate(v)} for k, v in self._cells.items()}
        for k, level in self._cells.items():
            for cell in level:
                if cell.degree != k:
                    raise ValidationError(f"Cell {cell.name} filed under degree {k}")
                for face in cell.faces:
                    if not 0 <= face.orbit < len(self._cells.get(k - 1, ())):
                        raise ValidationError(f"Face of {cell.name} points to a missing orbit")
                    if face.translate.spec != spec:
                        raise ConfigurationError(f"Face translator of {cell.name} is over another group")

    @property
    def dimension(self):
        return max((k for k, v in self._cells.items() if v), default=0)

    @property
    def is_free(self):
        return self.stabilizer.is_trivial

    @property
    def has_geometry(self):
        return self.translation is not None and self.lattice_steps is not None

    def cells(self, degree):
        return self._cells.get(degree, ())

    def cell(self, degree, orbit):
        return self._cells[degree][orbit]

    def orbit_index(self, degree, name):
        try:
            return self._index[degree][name]
        except KeyError as exc:
            raise ValidationError(f"No orbit {name!r} in degree {degree} of {self.name}") from exc

    def shift(self, g):
        """Coordinate translation vector τ(g)."""
        if self.translation is None:
            raise ScopeError(f"{self.name} carries no vertex geometry")
        return tuple(chi(g) for chi in self.translation)

    def representative(self, vector):
        """Coset representative γ of minimal length with τ(γ) = vector."""
        if self._representative is None:
            raise ScopeError(f"{self.name} has no coset representatives")
        return self._representative(tuple(vector))

    def cell_vertices(self, degree, orbit, vector):
        cell = self._cells[degree][orbit]
        if cell.vertices is None:
            raise ScopeError(f"Cell {cell.name} carries no vertex coordinates")
        return tuple(tuple(a + b for a, b in zip(v, vector)) for v in cell.vertices)

    def square_zero(self):
        """Face-of-face consistency: ∂∂ = 0 on orbit chains, modulo the stabilizer."""
        for k in range(2, self.dimension + 1):
            for cell in self.cells(k):
                totals = {}
                for face in cell.faces:
                    sub = self._cells[k - 1][face.orbit]
                    for face2 in sub.faces:
                        key = (face2.orbit, self.stabilizer.coset_key(face.translate * face2.translate))
                        totals[key] = totals.get(key, 0) + face.sign * face2.sign
                if any(totals.values()):
                    return False
        return True

    def quotient_complex(self):
        """The finite chain complex of P/Γ."""
        ranks = tuple(len(self.cells(k)) for k in range(self.dimension + 1))
        boundaries = {}
        for k in range(1, self.dimension + 1):
            d = np.zeros((ranks[k - 1], ranks[k]), dtype=object)
            for j, cell in enumerate(self.cells(k)):
                for face in cell.faces:
                    d[face.orbit, j] += face.sign
            boundaries[k] = d
        labels = {k: [c.name for c in self.cells(k)] for k in range(self.dimension + 1)}
        return ChainComplex(ranks, boundaries, labels)

    def as_free_complex(self):
        """The cellular ZΓ-complex C_*(P), for free actions."""
        if not self.is_free:
            raise ScopeError(f"{self.name} is not a free Γ-complex")
        cells = {k: [c.name for c in self.cells(k)] for k in range(self.dimension + 1)}
        differentials = {}
        for k in range(1, self.dimension + 1):
            matrix = [
                [GroupRingElement.zero(self.spec) for _ in self.cells(k)]
                for _ in self.cells(k - 1)
            ]
            for j, cell in enumerate(self.cells(k)):
                for face in cell.faces:
                    entry = GroupRingElement.of(face.translate, face.sign)
                    matrix[face.orbit][j] = matrix[face.orbit][j] + entry
            differentials[k] = matrix
        return CellularResolution(self.spec, cells, differentials, name=f"C({self.name})")


def _indicator(d, blocks):
    vector = [0] * d
    for block in blocks:
        for i in block:
            vector[i] = 1
    return tuple(vector)


def _flags(d):
    """Ordered sequences of disjoint nonempty subsets of {0..d-1}."""
    subsets = [s for size in range(1, d + 1) for s in itertools.combinations(range(d), size)]
    out = []

    def extend(sequence, used):
        out.append(sequence)
        for s in subsets:
            if not used.intersection(s):
                extend(sequence + (s,), used | set(s))

    extend((), set())
    return out


def _flag_name(sequence):
    if not sequence:
        return "v"
    return "|".join("".join(str(i + 1) for i in block) for block in sequence)


def kuhn_complex(spec):
    """
    The Kuhn (staircase) triangulation of R^d with Z^d acting by translation.
    An orbit of ℓ-simplices is a sequence (B1, ..., Bℓ) of disjoint nonempty
    subsets; its vertices are 0, 1_B1, 1_B1 + 1_B2, ...
    """
    if not spec.is_abelian:
        raise ConfigurationError(f"The Kuhn triangulation needs Z^d, got {spec}")
    d = spec.rank
    by_degree = {}
    for sequence in _flags(d):
        by_degree.setdefault(len(sequence), []).append(sequence)
    for k in by_degree:
        by_degree[k].sort(key=lambda seq: (tuple(sorted(i for b in seq for i in b)), seq))
    index = {seq: i for k in by_degree for i, seq in enumerate(by_degree[k])}
    cells = {}
    for k, level in sorted(by_degree.items()):
        cells[k] = []
        for sequence in level:
            vertices = [tuple([0] * d)]
            for j in range(1, k + 1):
                vertices.append(_indicator(d, sequence[:j]))
            faces = []
            for i in range(k + 1 if k else 0):
                if i == 0:
                    translate = spec.element(_indicator(d, sequence[:1]))
                    rest = sequence[1:]
                elif i < k:
                    merged = tuple(sorted(sequence[i - 1] + sequence[i]))
                    rest = sequence[:i - 1] + (merged,) + sequence[i + 1:]
                    translate = spec.identity()
                else:
                    rest = sequence[:-1]
                    translate = spec.identity()
                faces.append(Face(index[rest], translate, (-1) ** i))
            cells[k].append(OrbitCell(_flag_name(sequence), k, tuple(faces), tuple(vertices)))
    return SimplicialGammaComplex(
        spec,
        cells,
        translation=[Character.coordinate(spec, i) for i in range(d)],
        lattice_steps=[1] * d,
        representative=spec.element,
        name=f"R^{d}",
    )


def line_complex(spec, character):
    """
    R with γ(x) = x + f(γ). With g = index of f the vertex orbits are 0..g−1;
    the last edge closes up through the translator t_f with f(t_f) = g.
    """
    g = character.index
    if g == 0:
        raise ScopeError("The zero character does not act properly on R")
    translator = character.translator()
    identity = spec.identity()
    vertices = [OrbitCell(f"v{j}", 0, (), ((j,),)) for j in range(g)]
    edges = []
    for j in range(g):
        upper = Face((j + 1) % g, translator if j + 1 == g else identity, 1)
        lower = Face(j, identity, -1)
        edges.append(OrbitCell(f"e{j}", 1, (upper, lower), ((j,), (j + 1,))))
    stabilizer = Stabilizer() if character.is_injective else Stabilizer(character)
    return SimplicialGammaComplex(
        spec,
        {0: vertices, 1: edges},
        stabilizer=stabilizer,
        translation=[character],
        lattice_steps=[g],
        representative=lambda vector: character.minimal_preimage(vector[0]),
        name=f"R_f{character}",
    )


def point_complex(spec):
    """A point with the trivial action: every element stabilizes it."""
    zero = Character(spec, (0,) * spec.rank)
    return SimplicialGammaComplex(
        spec,
        {0: [OrbitCell("pt", 0, (), ((),))]},
        stabilizer=Stabilizer(zero) if spec.rank else Stabilizer(),
        translation=[],
        lattice_steps=[],
        representative=lambda vector: spec.identity(),
        name="point",
    )


class InvariantChain:
    """Σ λ_σ σ over a Γ-complex, stored as one coefficient per orbit representative."""

    def __init__(self, complex_, degree, module, coefficients=None):
        self.complex = complex_
        self.degree = degree
        self.module = module
        spec = complex_.spec
        stored = {}
        for key, value in (coefficients or {}).items():
            orbit = key if isinstance(key, int) else complex_.orbit_index(degree, key)
            if not 0 <= orbit < len(complex_.cells(degree)):
                raise ValidationError(f"Orbit {key!r} missing in degree {degree}")
            if isinstance(value, int):
                value = TensorElement.scalar(spec, value)
            elif isinstance(value, GroupRingElement):
                value = TensorElement.from_ring(value)
            if not module.contains(value):
                raise ValidationError(f"Coefficient {value} of orbit {key!r} is not in {module}")
            if value.is_zero:
                continue
            stored[orbit] = stored[orbit] + value if orbit in stored else value
        if not complex_.is_free and module.order:
            for h in complex_.stabilizer.sample(spec, 2):
                for orbit, value in stored.items():
                    if value.act(h) != value:
                        raise ValidationError(
                            f"Coefficient of {complex_.cell(degree, orbit).name} is not "
                            f"invariant under the stabilizer element {h}"
                        )
        self.coefficients = {k: stored[k] for k in sorted(stored) if not stored[k].is_zero}

    @classmethod
    def zero(cls, complex_, degree, module):
        return cls(complex_, degree, module)

    @property
    def spec(self):
        return self.complex.spec

    @property
    def is_zero(self):
        return not self.coefficients

    def coefficient(self, orbit):
        return self.coefficients.get(orbit, self.module.zero(self.spec))

    def boundary(self):
        return invariant_boundary(self)

    def is_cycle(self):
        return self.degree == 0 or invariant_boundary(self).is_zero

    def map_coefficients(self, fn, module):
        return InvariantChain(
            self.complex, self.degree, module, {k: fn(v) for k, v in self.coefficients.items()}
        )

    def expand(self, radius):
        """Explicit coefficients on translates g·σ for coset representatives g in ball(radius)."""
        out = {}
        seen = set()
        for g in self.spec.ball(radius):
            key = self.complex.stabilizer.coset_key(g)
            if key in seen:
                continue
            seen.add(key)
            for orbit, value in self.coefficients.items():
                out[(orbit, g)] = value.act(g)
        return out

    @classmethod
    def regroup(cls, complex_, degree, module, expanded):
        """Inverse of ``expand``: recover orbit data, checking λ_{gσ} = g·λ_σ."""
        coefficients = {}
        for (orbit, g), value in expanded.items():
            candidate = value.act(g.inverse())
            if orbit in coefficients and coefficients[orbit] != candidate:
                raise ValidationError(f"Expanded chain is not invariant on orbit {orbit}")
            coefficients[orbit] = candidate
        return cls(complex_, degree, module, coefficients)

    def tensor_form(self):
        """The element Σ λ_σ ⊗ σ of L ⊗_Γ D, as (cell name, λ) pairs."""
        return tuple((self.complex.cell(self.degree, k).name, v) for k, v in self.coefficients.items())

    def _combine(self, other, sign):
        if other.degree != self.degree or other.module != self.module or other.complex is not self.complex:
            raise ValidationError("Invariant chains live in different groups")
        coefficients = dict(self.coefficients)
        for k, v in other.coefficients.items():
            coefficients[k] = coefficients[k] + v * sign if k in coefficients else v * sign
        return InvariantChain(self.complex, self.degree, self.module, coefficients)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self.map_coefficients(lambda v: -v, self.module)

    def __rmul__(self, n):
        return self.map_coefficients(lambda v: v * n, self.module)

    def __eq__(self, other):
        if not isinstance(other, InvariantChain):
            return NotImplemented
        return (
            self.complex is other.complex
            and self.degree == other.degree
            and self.module == other.module
            and self.coefficients == other.coefficients
        )

    def __hash__(self):
        return hash((id(self.complex), self.degree, self.module, tuple(self.coefficients.items())))

    def __repr__(self):
        inner = " + ".join(f"({v})·{name}" for name, v in self.tensor_form())
        return f"InvariantChain[{self.degree}, {self.module}]({inner or '0'})"


def invariant_boundary(z):
    if z.degree < 1:
        raise ValidationError("The boundary of a degree-0 invariant chain is not defined")
    out = {}
    for orbit, value in z.coefficients.items():
        cell = z.complex.cell(z.degree, orbit)
        for face in cell.faces:
            contribution = value.act(face.translate.inverse()) * face.sign
            out[face.orbit] = out[face.orbit] + contribution if face.orbit in out else contribution
    return InvariantChain(z.complex, z.degree - 1, z.module, out)


def coordinate_cycle(complex_, index, module=None):
    """The invariant 1-cycle of a Kuhn complex along the edges in direction ``index``."""
    name = str(index + 1)
    return InvariantChain(complex_, 1, module or CoefficientModule.integers(), {name: 1})


def fundamental_cycle(complex_):
    """Σ sign(π)·(π1|π2|...|πd): the standard orientation of R^d."""
    d = complex_.dimension
    coefficients = {}
    for perm in itertools.permutations(range(d)):
        sign = 1
        for i in range(d):
            for j in range(i + 1, d):
                if perm[i] > perm[j]:
                    sign = -sign
        coefficients[_flag_name(tuple((i,) for i in perm))] = sign
    return InvariantChain(complex_, d, CoefficientModule.integers(), coefficients)
