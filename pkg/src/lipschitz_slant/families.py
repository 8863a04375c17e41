"""
Concrete α-map families α: Γ × P → R^n satisfying
  (1) α(gγ, g·x) = α(γ, x),
  (2) α(γ, ·) proper, with an explicit radius witness ρ,
  (3) Lipschitz in γ for the word metric with constant ``lipschitz_constant``.
"""
from __future__ import annotations

import itertools
from abc import ABC, abstractmethod
from fractions import Fraction

from chain_complexes import (
    InvariantChain,
    coordinate_cycle,
    determinant,
    fundamental_cycle,
    kuhn_complex,
    line_complex,
    point_complex,
)
from errors import ConfigurationError
from group_core import CoefficientModule

from .geometry import staircase


def _norm(vector):
    return max((abs(Fraction(x)) for x in vector), default=Fraction(0))


class AlphaMap(ABC):
    name = "alpha"

    def __init__(self, spec, complex_, target_dimension, orientation=1):
        self.spec = spec
        self.complex = complex_
        self.target_dimension = target_dimension
        self.orientation = orientation

    @abstractmethod
    def alpha(self, g, x):
        """α(γ, x) for a point x in vertex coordinates of P."""

    def alpha_bar(self, weights, x):
        """Barycentric extension: Σ t_i α(γ_i, x) for weights [(γ_i, t_i)]."""
        out = [Fraction(0)] * self.target_dimension
        for g, t in weights:
            out = [a + Fraction(t) * b for a, b in zip(out, self.alpha(g, x))]
        return tuple(out)

    @abstractmethod
    def properness_radius(self, radius):
        """ρ(R): |α(e, x)| > R whenever |x| > ρ(R) (sup norms)."""

    @property
    def lipschitz_constant(self):
        return max(
            (_norm([a - b for a, b in zip(self.alpha(s, self._origin()), self.alpha(self.spec.identity(), self._origin()))])
             for s in self.spec.generators()),
            default=Fraction(0),
        )

    def _origin(self):
        return tuple(Fraction(0) for _ in range(len(self.complex.translation)))

    def fundamental_orientation(self):
        """
        Orientation of ω under which a top cell of P at Δ = [e] counts +1: the
        sign of the single (0, n) staircase piece times the sign of the Jacobian
        of x ↦ α(e, x). Needs an affine α with integral linear part.
        """
        origin = self._origin()
        if len(origin) != self.target_dimension:
            raise ConfigurationError(f"{self.name}: P and R^n have different dimensions")
        (_, piece_sign), = staircase(0, self.target_dimension)
        identity = self.spec.identity()
        base = self.alpha(identity, origin)
        jacobian = []
        for axis in range(len(origin)):
            unit = tuple(Fraction(int(a == axis)) for a in range(len(origin)))
            column = [x - b for x, b in zip(self.alpha(identity, unit), base)]
            if any(Fraction(v).denominator != 1 for v in column):
                raise ConfigurationError(f"{self.name}: the linear part of α(e, ·) is not integral")
            jacobian.append(column)
        det = determinant(jacobian)
        if det == 0:
            raise ConfigurationError(f"{self.name}: α(e, ·) is degenerate")
        return piece_sign * (1 if det > 0 else -1)

    def act(self, g, x):
        return tuple(Fraction(a) + b for a, b in zip(x, self.complex.shift(g)))

    def check_conditions(self, elements, points):
        """Evaluate conditions (1)–(3) on sample elements and points."""
        invariant = all(
            self.alpha(g * h, self.act(g, x)) == self.alpha(h, x)
            for g, h in itertools.product(elements, repeat=2)
            for x in points
        )
        identity = self.spec.identity()
        proper = True
        for x in points:
            size = _norm(x)
            for radius in range(int(size) + 1):
                if size > self.properness_radius(radius) and _norm(self.alpha(identity, x)) <= radius:
                    proper = False
        constant = self.lipschitz_constant
        lipschitz = all(
            _norm([a - b for a, b in zip(self.alpha(h * s, x), self.alpha(h, x))]) <= constant
            for h in elements
            for s in self.spec.generators_with_inverses()
            for x in points
        )
        return {"invariance": invariant, "properness": proper, "lipschitz": lipschitz}


class TranslationAlpha(AlphaMap):
    """Z^d acting on R^d by translation, ᾱ(y, x) = y − x."""

    name = "translation"

    def __init__(self, spec):
        if not spec.is_abelian or spec.rank < 1:
            raise ConfigurationError(f"TranslationAlpha needs Z^d with d >= 1, got {spec}")
        super().__init__(spec, kuhn_complex(spec), spec.rank)
        self.orientation = self.fundamental_orientation()

    def alpha(self, g, x):
        return tuple(Fraction(a) - Fraction(b) for a, b in zip(g.form, x))

    def properness_radius(self, radius):
        return Fraction(radius)

    def fundamental_cycle(self):
        return fundamental_cycle(self.complex)

    def coordinate_cycle(self, index):
        return coordinate_cycle(self.complex, index)


class CocycleAlpha(AlphaMap):
    """P = R with γ(x) = x + f(γ) and α(γ, x) = −γ⁻¹(x) = f(γ) − x."""

    name = "cocycle"

    def __init__(self, character):
        self.character = character
        super().__init__(character.spec, line_complex(character.spec, character), 1)

    def alpha(self, g, x):
        return (Fraction(self.character(g)) - Fraction(x[0]),)

    def properness_radius(self, radius):
        return Fraction(radius)

    def vertex_cycle(self, module=None):
        """Σ_m {m}: every vertex with coefficient 1."""
        module = module or CoefficientModule.integers()
        return InvariantChain(self.complex, 0, module, {i: 1 for i in range(len(self.complex.cells(0)))})

    def edge_cycle(self):
        """Σ_m [m, m+1], the fundamental cycle of R (a cycle for free actions)."""
        return InvariantChain(
            self.complex, 1, CoefficientModule.integers(), {i: 1 for i in range(len(self.complex.cells(1)))}
        )


class PointAlpha(AlphaMap):
    """P a point, target R^0."""

    name = "point"

    def __init__(self, spec):
        super().__init__(spec, point_complex(spec), 0)

    def alpha(self, g, x):
        return ()

    def properness_radius(self, radius):
        return Fraction(0)

    def point_cycle(self, module=None):
        return InvariantChain(self.complex, 0, module or CoefficientModule.integers(), {"pt": 1})
