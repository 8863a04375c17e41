"""
Equivariant cochains Hom_Γ(C_k, L) on free resolutions.

A cochain is a rule on free generators (evaluated on demand and cached); the
value on g·Δ is g·(value on Δ). The coboundary is δc = c∘∂.
"""
from __future__ import annotations

import hashlib
import logging
import random
import threading

from chain_complexes import InvariantChain, ResolutionChain
from errors import ValidationError
from group_core import CoefficientModule, GroupRingElement, TensorElement

logger = logging.getLogger(__name__)


class EquivariantCochain:
    def __init__(self, complex_, degree, module, values=None, rule=None, name=""):
        if values is None and rule is None:
            values = {}
        self.complex = complex_
        self.degree = degree
        self.module = module
        self.name = name
        self._rule = rule
        self._values = {}
        self._lock = threading.Lock()
        for generator, value in (values or {}).items():
            self._values[generator] = self._check(generator, value)

    @property
    def spec(self):
        return self.complex.spec

    def _check(self, generator, value):
        if isinstance(value, int):
            value = TensorElement.scalar(self.spec, value)
        elif isinstance(value, GroupRingElement):
            value = TensorElement.from_ring(value)
        if not self.module.contains(value):
            raise ValidationError(
                f"Value {value} of {self.name or 'cochain'} on "
                f"{self.complex.label(generator)} is not in {self.module}"
            )
        return value

    def value(self, generator):
        """Value on a free generator."""
        with self._lock:
            cached = self._values.get(generator)
        if cached is not None:
            return cached
        if self._rule is None:
            return self.module.zero(self.spec)
        value = self._check(generator, self._rule(generator))
        with self._lock:
            self._values[generator] = value
        return value

    def evaluate(self, terms):
        """Value on Σ coefficient·translate·generator."""
        total = self.module.zero(self.spec)
        for coefficient, translate, generator in terms:
            if coefficient:
                total = total + self.value(generator).act(translate) * coefficient
        return total

    def value_on_simplex(self, simplex):
        """Value on a bar simplex [γ0, ..., γk], through normalization."""
        g, generator = self.complex.normalize(simplex)
        return self.value(generator).act(g)

    def coboundary(self):
        complex_, degree = self.complex, self.degree + 1

        def rule(generator):
            return self.evaluate(complex_.boundary(degree, generator))

        return EquivariantCochain(complex_, degree, self.module, rule=rule, name=f"δ{self.name}")

    def is_cocycle_on(self, generators):
        delta = self.coboundary()
        return all(delta.value(g).is_zero for g in generators)

    def map_values(self, fn, module, name=""):
        return EquivariantCochain(
            self.complex, self.degree, module, rule=lambda g: fn(self.value(g)), name=name
        )

    def _combine(self, other, sign):
        if other.degree != self.degree or other.module != self.module:
            raise ValidationError("Cochains of different degree or module cannot be combined")
        return EquivariantCochain(
            self.complex,
            self.degree,
            self.module,
            rule=lambda g: self.value(g) + other.value(g) * sign,
            name=f"({self.name}{'+' if sign > 0 else '-'}{other.name})",
        )

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self.map_values(lambda v: -v, self.module, name=f"-{self.name}")

    def __rmul__(self, n):
        return self.map_values(lambda v: v * n, self.module, name=f"{n}{self.name}")

    def __repr__(self):
        return f"EquivariantCochain[{self.degree}, {self.module}]({self.name or self.complex.name})"


def constant_cochain(complex_, n=1):
    """Degree-0 Z-valued cochain n·ε, the class n ∈ H⁰(Γ, Z)."""
    spec = complex_.spec
    return EquivariantCochain(
        complex_,
        0,
        CoefficientModule.integers(),
        rule=lambda g: TensorElement.scalar(spec, n * complex_.augmentation(g)),
        name=str(n),
    )


def _seeded(seed, generator):
    digest = hashlib.sha256(f"{seed}:{generator!r}".encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def random_value(spec, module, rng, radius=1, size=3):
    """A small random element of the module."""
    if module.order == 0:
        return TensorElement.scalar(spec, rng.randint(-4, 4))
    ball = spec.ball(radius)
    identity = spec.identity()
    total = module.zero(spec)
    for _ in range(size):
        factors = []
        for slot in range(module.order):
            g = rng.choice(ball)
            if slot in module.augmented:
                factors.append(GroupRingElement(spec, {g: 1, identity: -1}) if not g.is_identity
                               else GroupRingElement.zero(spec))
            else:
                factors.append(GroupRingElement.of(g))
        total = total + TensorElement.from_factors(factors, rng.randint(-3, 3))
    return total


def random_cochain(complex_, degree, module, seed, radius=1):
    """Deterministic pseudo-random cochain: each generator's value is seeded by its repr."""
    return EquivariantCochain(
        complex_,
        degree,
        module,
        rule=lambda g: random_value(complex_.spec, module, _seeded(seed, g), radius),
        name=f"rand{seed}",
    )


def pair_cochain_cycle(cochain, chain):
    """Evaluation pairing ⟨c, z⟩ for resolution chains or invariant chains."""
    if chain.degree != cochain.degree:
        raise ValidationError(f"Degree mismatch: cochain {cochain.degree}, chain {chain.degree}")
    if isinstance(chain, ResolutionChain):
        total = cochain.module.zero(cochain.spec)
        for generator, c in chain.terms.items():
            total = total + cochain.value(generator) * c
        return total
    if isinstance(chain, InvariantChain):
        if cochain.module.order and chain.module.order:
            raise ValidationError("Pairing needs one side with integer coefficients")
        total = None
        for orbit, value in chain.coefficients.items():
            name = chain.complex.cell(chain.degree, orbit).name
            c_value = cochain.value(name)
            term = value * c_value.as_int() if c_value.order == 0 else c_value * value.as_int()
            total = term if total is None else total + term
        module = cochain.module if cochain.module.order else chain.module
        return total if total is not None else module.zero(cochain.spec)
    raise ValidationError(f"Cannot pair a cochain with {type(chain).__name__}")
