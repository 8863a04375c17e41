"""
Coefficient homomorphisms φ: I^⊗k → Z on ball-truncated bases, the integer
solve realizing a target class as φ*(β^k), pushforward of cochains, and
ball-truncated coinvariant ranks.

Basis tensors are b_{g1} ⊗ ... ⊗ b_{gk} with b_g = g − e and every g ≠ e; the
values of φ on these determine φ on I^⊗k.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np
import pandas as pd

from chain_complexes import BarResolution, solve_integer_system, sparse_invariant_factors
from errors import RadiusInsufficientError, UnsatError, ValidationError
from group_core import CoefficientModule, GroupRingElement, TensorElement

from .cochains import EquivariantCochain, pair_cochain_cycle
from .products import cup_power
from .sequences import berstein_schwarz

logger = logging.getLogger(__name__)


def _basis_factor(g):
    spec = g.spec
    return GroupRingElement(spec, {g: 1, spec.identity(): -1})


def basis_tensor(key):
    """b_{g1} ⊗ ... ⊗ b_{gk}."""
    return TensorElement.from_factors([_basis_factor(g) for g in key])


def basis_coordinates(t):
    """Coordinates of t ∈ I^⊗k in the b-basis: the coefficients at all-non-identity keys."""
    return {key: c for key, c in t.items() if not any(g.is_identity for g in key)}


class ModuleMap:
    """An equivariant homomorphism I^⊗k → Z, given on basis tensors."""

    def __init__(self, spec, order, values=None, radius=None, rule=None, name="φ"):
        self.spec = spec
        self.order = order
        self.radius = radius
        self.name = name
        self._values = {tuple(k): int(v) for k, v in (values or {}).items()}
        self._rule = rule

    @classmethod
    def zero(cls, spec, order):
        return cls(spec, order, rule=lambda key: 0, name="0")

    @classmethod
    def characters_product(cls, characters):
        """b_{g1} ⊗ ... ⊗ b_{gk} ↦ Π χ_i(g_i)."""
        characters = tuple(characters)
        spec = characters[0].spec

        def rule(key):
            value = 1
            for chi, g in zip(characters, key):
                value *= chi(g)
            return value

        name = "⊗".join(f"χ{chi.values}" for chi in characters)
        return cls(spec, len(characters), rule=rule, name=name)

    @property
    def source(self):
        return CoefficientModule.augmentation_power(self.order)

    def basis_value(self, key):
        if self.radius is not None and any(g.word_length() > self.radius for g in key):
            raise RadiusInsufficientError(
                f"{self.name} is truncated at radius {self.radius}; "
                f"basis tensor {tuple(str(g) for g in key)} lies outside"
            )
        if self._rule is not None:
            return self._rule(key)
        return self._values.get(key, 0)

    def __call__(self, t):
        if not self.source.contains(t):
            raise ValidationError(f"{t} is not in {self.source}")
        return sum(c * self.basis_value(key) for key, c in basis_coordinates(t).items())

    def equivariance_defects(self, radius=None):
        """Basis tensors b in the ball with φ(s·b) ≠ φ(b) for a generator s, when both are defined."""
        radius = self.radius if radius is None else radius
        defects = []
        keys = _basis_keys(self.spec, self.order, radius)
        for s in self.spec.generators_with_inverses():
            for key in keys:
                moved = basis_tensor(key).act(s)
                try:
                    if self(moved) != self.basis_value(key):
                        defects.append((s, key))
                except RadiusInsufficientError:
                    continue
        return defects

    def to_table(self):
        """Tab-separated text table basis tensor → value (rows in basis order)."""
        if self.radius is None:
            raise ValidationError(f"{self.name} is not truncated; it has no finite table")
        rows = [
            {"basis": " ⊗ ".join(f"({g} - e)" for g in key), "value": self.basis_value(key)}
            for key in _basis_keys(self.spec, self.order, self.radius)
        ]
        return pd.DataFrame(rows, columns=["basis", "value"]).to_csv(sep="\t", index=False)

    def __repr__(self):
        return f"ModuleMap({self.name}: I^{self.order} → Z, R={self.radius})"


def _basis_keys(spec, order, radius):
    elements = [g for g in spec.ball(radius) if not g.is_identity]
    return list(itertools.product(elements, repeat=order))


def pushforward(module_map, cochain):
    """φ∘c: a Z-valued cochain."""
    if cochain.module != module_map.source:
        raise ValidationError(f"Cannot push a {cochain.module}-valued cochain along {module_map}")
    spec = cochain.spec
    return cochain.map_values(
        lambda v: TensorElement.scalar(spec, module_map(v)),
        CoefficientModule.integers(),
        name=f"{module_map.name}*{cochain.name}",
    )


def character_cochain(bar, characters):
    """Z-valued cup product of degree-1 character cocycles: [e,γ1..γk] ↦ Π χ_i(γ_i) − χ_i(γ_{i−1})."""
    characters = tuple(characters)
    spec = bar.spec

    def rule(generator):
        vertices = bar.simplex(generator)
        value = 1
        for i, chi in enumerate(characters, start=1):
            value *= chi(vertices[i]) - chi(vertices[i - 1])
        return TensorElement.scalar(spec, value)

    return EquivariantCochain(bar, len(characters), CoefficientModule.integers(), rule=rule, name="χ∪")


def _row(coordinates, index):
    row = {}
    for key, c in coordinates.items():
        if key not in index:
            return None
        row[index[key]] = row.get(index[key], 0) + c
    return row


def solve_coefficient_hom(spec, k, radius, target_class, resolution=None, cycles=None):
    """
    Integer solve for φ on b-basis tensors in ball(radius) such that φ is
    equivariant inside the ball and ⟨φ*(β^k), w⟩ = ⟨target, w⟩ on the test cycles.
    """
    resolution = resolution or target_class.complex
    if not isinstance(resolution, BarResolution):
        raise ValidationError("solve_coefficient_hom works on a bar resolution")
    cycles = tuple(cycles) if cycles is not None else resolution.test_cycles(k)
    keys = _basis_keys(spec, k, radius)
    index = {key: i for i, key in enumerate(keys)}
    rows, rhs = [], []

    for s in spec.generators_with_inverses():
        for key in keys:
            row = _row(basis_coordinates(basis_tensor(key).act(s)), index)
            if row is None:
                continue
            row[index[key]] = row.get(index[key], 0) - 1
            if any(row.values()):
                rows.append(row)
                rhs.append(0)

    power = cup_power(berstein_schwarz(resolution), k)
    for w in cycles:
        value = pair_cochain_cycle(power, w)
        row = _row(basis_coordinates(value), index)
        if row is None:
            raise UnsatError(f"β^{k} on {w.label} leaves ball({radius}); retry with a larger radius")
        rows.append(row)
        rhs.append(pair_cochain_cycle(target_class, w).as_int())

    matrix = np.zeros((len(rows), len(keys)), dtype=object)
    for i, row in enumerate(rows):
        for j, c in row.items():
            matrix[i, j] = c
    logger.debug("Solving for φ: %d constraints, %d unknowns", len(rows), len(keys))
    solution = solve_integer_system(matrix, rhs)
    if solution is None:
        raise UnsatError(f"No equivariant φ on I^⊗{k} over ball({radius}) realizes the target")
    values = {key: v for key, v in zip(keys, solution) if v}
    return ModuleMap(spec, k, values, radius=radius, name=f"φ[k={k},R={radius}]")


def solve_with_retry(spec, k, radius, target_class, max_radius=None, **kwargs):
    """Retry at R+1 on UNSAT, up to ``max_radius``."""
    max_radius = radius + 2 if max_radius is None else max_radius
    for r in range(radius, max_radius + 1):
        try:
            return solve_coefficient_hom(spec, k, r, target_class, **kwargs)
        except UnsatError as exc:
            logger.info("UNSAT at radius %d (%s); retrying", r, exc)
    raise UnsatError(f"No witness up to radius {max_radius}")


@dataclass(frozen=True)
class CoinvariantRanks:
    module: str
    radius: int
    rank_at_radius: int
    rank_at_next: int
    torsion_at_radius: tuple = ()
    torsion_at_next: tuple = ()

    @property
    def stable(self):
        return self.rank_at_radius == self.rank_at_next


def _coinvariants(spec, order, radius):
    """(free rank, torsion coefficients) of the truncated quotient, via Smith normal form."""
    keys = _basis_keys(spec, order, radius)
    index = {key: i for i, key in enumerate(keys)}
    rows = []
    for s in spec.generators_with_inverses():
        for key in keys:
            row = _row(basis_coordinates(basis_tensor(key).act(s) - basis_tensor(key)), index)
            if row is not None and any(row.values()):
                rows.append(row)
    factors = sparse_invariant_factors(rows)
    return len(keys) - len(factors), tuple(f for f in factors if f > 1)


def coinvariants_rank(spec, module, radius):
    """Rank of the ball-truncated quotient L/⟨γx − x⟩ at R and R+1, for L = I or I^⊗2."""
    if isinstance(module, str):
        module = CoefficientModule.parse(module)
    if module not in (CoefficientModule.augmentation_power(1), CoefficientModule.augmentation_power(2)):
        raise ValidationError(f"Coinvariant ranks are computed for I and I^2, not {module}")
    rank, torsion = _coinvariants(spec, module.order, radius)
    rank_next, torsion_next = _coinvariants(spec, module.order, radius + 1)
    result = CoinvariantRanks(module.label, radius, rank, rank_next, torsion, torsion_next)
    logger.info("Coinvariants of %s over %s: %d at R=%d, %d at R=%d",
                module, spec, result.rank_at_radius, radius, result.rank_at_next, radius + 1)
    return result
