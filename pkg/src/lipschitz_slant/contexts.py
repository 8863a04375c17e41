"""
Slant contexts: an α family with its support cocycle and truncated resolution,
and the two derived contexts (product with a line, product of two contexts).

A context answers one question for the slant sum: which cells of P can meet
the support of ω for a given resolution simplex, and what φ(Δ ⊗ σ) = ω(ᾱ|Δ×σ)
is on each of them.
"""
from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction

from chain_complexes import BarResolution, TensorComplex
from errors import ConfigurationError, FamilyMisuseError, ScopeError, ValidationError

from .geometry import SupportCocycle, omega_eval, staircase, triangulate_product

logger = logging.getLogger(__name__)


def _norm(vector):
    return max((abs(Fraction(x)) for x in vector), default=Fraction(0))


def _in_box(vertices, point):
    for axis, p in enumerate(point):
        coords = [v[axis] for v in vertices]
        if p < min(coords) or p > max(coords):
            return False
    return True


def alpha_on_cell(source, simplex, cell_simplex, path):
    """
    Vertex images ᾱ(γ_i, x_j) of a staircase piece of Δ × σ. ``source`` is an
    AlphaMap or a context; the image is checked to be affine at the barycenter.
    """
    images = [source.alpha(simplex[i], cell_simplex[j]) for i, j in path]
    count = len(path)
    weights = [(simplex[i], Fraction(1, count)) for i, _ in path]
    width = len(cell_simplex[0])
    xbar = tuple(sum(Fraction(cell_simplex[j][a]) for _, j in path) / count for a in range(width))
    expected = source.alpha_bar(weights, xbar)
    average = tuple(sum(im[a] for im in images) / count for a in range(source.target_dimension))
    if expected != average:
        name = getattr(source, "name", None) or source.family.name
        raise FamilyMisuseError(f"{name} is not affine on the cell {cell_simplex}")
    return images


@dataclass(frozen=True)
class LineChain:
    """z ⊗ s with s = Σ_m [m, m+1] the fundamental cycle of the added line."""

    base: object

    @property
    def degree(self):
        return self.base.degree + 1

    @property
    def module(self):
        return self.base.module

    @property
    def is_zero(self):
        return self.base.is_zero

    def is_cycle(self):
        return self.base.is_cycle()


@dataclass(frozen=True)
class ProductChain:
    """z1 ⊗ z2 on P1 × P2."""

    left: object
    right: object

    @property
    def degree(self):
        return self.left.degree + self.right.degree

    @property
    def module(self):
        return self.left.module.tensor(self.right.module)

    @property
    def is_zero(self):
        return self.left.is_zero or self.right.is_zero

    def is_cycle(self):
        return self.left.is_cycle() and self.right.is_cycle()


class SlantContext:
    """An α family over P, the support cocycle ω on R^n and a bar resolution."""

    def __init__(self, family, omega, resolution):
        if omega.dimension != family.target_dimension:
            raise ValidationError(
                f"ω lives on R^{omega.dimension} but {family.name} maps to R^{family.target_dimension}"
            )
        if resolution.spec != family.spec:
            raise ConfigurationError(f"Group mismatch: {resolution.spec} vs {family.spec}")
        self.family = family
        self.omega = omega
        self.resolution = resolution
        self.spec = family.spec

    @classmethod
    def build(cls, family, stream, res_radius):
        omega = stream.support_cocycle(family.target_dimension, family.orientation)
        return cls(family, omega, BarResolution(family.spec, res_radius))

    @property
    def target_dimension(self):
        return self.family.target_dimension

    @property
    def points(self):
        return [self.omega.point]

    def argument(self, generator):
        return self.resolution.simplex(generator)

    def alpha(self, g, x):
        return self.family.alpha(g, x)

    def alpha_bar(self, weights, x):
        return self.family.alpha_bar(weights, x)

    def window(self, simplex, degree, orbit):
        """
        Translation vectors v (with coset representatives) whose translated cell
        can meet the support of ω, from the properness radius of the family.
        """
        complex_ = self.family.complex
        if not complex_.has_geometry:
            raise ScopeError(f"{complex_.name} has no geometry; no properness witness applies")
        width = len(complex_.translation)
        if width == 0:
            return [((), complex_.representative(()))]
        origin = tuple(Fraction(0) for _ in range(width))
        base = self.alpha(simplex[0], origin)
        spread = max(_norm([a - b for a, b in zip(self.alpha(g, origin), base)]) for g in simplex)
        reach = self.family.properness_radius(_norm(self.omega.point) + spread + 1)
        center = complex_.shift(simplex[0])
        vertices = complex_.cell(degree, orbit).vertices
        ranges = []
        for axis, step in enumerate(complex_.lattice_steps):
            coords = [v[axis] for v in vertices]
            lo = center[axis] - reach - max(coords)
            hi = center[axis] + reach - min(coords)
            first, last = math.ceil(lo / step), math.floor(hi / step)
            ranges.append([step * m for m in range(first, last + 1)])
        vectors = list(itertools.product(*ranges))
        logger.debug("Window for %s orbit %d: %d translates", complex_.name, orbit, len(vectors))
        return [(v, complex_.representative(v)) for v in vectors]

    def cells(self, simplex, z):
        """(list of simplex factors in P-coordinates, coefficient λ_{γσ}) near the support."""
        for orbit, value in z.coefficients.items():
            for vector, rep in self.window(simplex, z.degree, orbit):
                vertices = z.complex.cell_vertices(z.degree, orbit, vector)
                yield [vertices], value.act(rep)

    def image_simplices(self, simplex, factors):
        """Affine images of the staircase pieces of Δ × (cell), with signs."""
        k = len(simplex) - 1
        for cell_simplex, cell_sign in triangulate_product(factors):
            ell = len(cell_simplex) - 1
            for path, sign in staircase(k, ell):
                yield self.alpha_on_cell(simplex, cell_simplex, path), cell_sign * sign

    def alpha_on_cell(self, simplex, cell_simplex, path):
        return alpha_on_cell(self, simplex, cell_simplex, path)

    def phi(self, simplex, factors):
        return sum(sign * omega_eval(images, self.omega) for images, sign in self.image_simplices(simplex, factors))

    def contributions(self, simplex, z):
        for factors, coefficient in self.cells(simplex, z):
            weight = self.phi(simplex, factors)
            if weight:
                yield weight, coefficient


class LineContext(SlantContext):
    """P × R with α × 1 and ω ⊗ ω₀, ω₀ supported near 1/2."""

    def __init__(self, base, p0):
        self.base = base
        self.family = base.family
        self.spec = base.spec
        self.resolution = base.resolution
        self.omega = SupportCocycle(base.omega.point + (Fraction(p0),), base.omega.orientation)

    @property
    def target_dimension(self):
        return self.base.target_dimension + 1

    def alpha(self, g, x):
        return self.base.alpha(g, x[:-1]) + (Fraction(x[-1]),)

    def alpha_bar(self, weights, x):
        return self.base.alpha_bar(weights, x[:-1]) + (Fraction(x[-1]),)

    def line_window(self):
        """
        Edges [m, m+1] of the added line that can meet the support of ω₀. The
        line factor of α is x ↦ x, so its properness radius is ρ(R) = R.
        """
        reach = abs(self.omega.point[-1]) + 1
        return range(math.ceil(-reach - 1), math.floor(reach) + 1)

    def cells(self, simplex, z):
        if not isinstance(z, LineChain):
            raise ValidationError("A line context slants chains of the form z ⊗ s")
        window = self.line_window()
        for factors, coefficient in self.base.cells(simplex, z.base):
            for m in window:
                yield factors + [((m,), (m + 1,))], coefficient


class ProductContext:
    """P1 × P2 with the diagonal action and ᾱ = ᾱ1 × ᾱ2 on C ⊗ C′."""

    def __init__(self, left, right, radius=None):
        if left.spec != right.spec:
            raise ConfigurationError(f"Group mismatch: {left.spec} vs {right.spec}")
        self.left = left
        self.right = right
        self.spec = left.spec
        radius = radius if radius is not None else left.resolution.radius
        self.resolution = TensorComplex(left.resolution, right.resolution, radius)
        self.omega = left.omega.product(right.omega)

    @property
    def target_dimension(self):
        return self.left.target_dimension + self.right.target_dimension

    @property
    def points(self):
        return self.left.points + self.right.points

    def argument(self, generator):
        return generator

    def contributions(self, generator, z):
        """
        Pieces of (Δ1 × σ1) × (Δ2 × σ2) against ω1 ⊗ ω2. The slant is taken over
        (Δ1 × Δ2) × (σ1 × σ2), which differs by the sign (−1)^(|σ1|·|Δ2|).
        """
        if not isinstance(z, ProductChain):
            raise ValidationError("A product context slants chains of the form z1 ⊗ z2")
        i, c, g, d = generator
        if i + z.left.degree != self.left.target_dimension:
            return
        first = self.left.resolution.simplex(c)
        second = tuple(g * x for x in self.right.resolution.simplex(d))
        reorder = -1 if z.left.degree * (len(second) - 1) % 2 else 1
        p1, p2 = self.left.omega.point, self.right.omega.point
        right_cells = None
        for f1, c1 in self.left.cells(first, z.left):
            images1 = [(im, s) for im, s in self.left.image_simplices(first, f1) if _in_box(im, p1)]
            if not images1:
                continue
            if right_cells is None:
                right_cells = []
                for f2, c2 in self.right.cells(second, z.right):
                    images2 = [(im, s) for im, s in self.right.image_simplices(second, f2) if _in_box(im, p2)]
                    if images2:
                        right_cells.append((images2, c2))
            for images2, c2 in right_cells:
                weight = 0
                for im1, s1 in images1:
                    for im2, s2 in images2:
                        for piece, s3 in triangulate_product([im1, im2]):
                            weight += s1 * s2 * s3 * omega_eval(piece, self.omega)
                if weight:
                    yield reorder * weight, c1.tensor(c2)
