"""
The slant product α_∩ with local coefficients.

For a resolution generator Δ of degree k and an invariant (n−k)-chain
z = Σ λ_σ σ on P, the slant cochain is

    (φ̄/z)(Δ) = Σ_σ φ(Δ ⊗ σ) λ_σ,   φ(Δ ⊗ σ) = ω(ᾱ|Δ×σ),

where σ runs over orbit representatives and the coset translates γΓ_σ whose
cell can meet the support of ω. Values on other simplices follow from
equivariance, so only free generators are ever evaluated.
"""
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from chain_complexes import BarResolution
from coefficients import EquivariantCochain, pair_cochain_cycle
from config import settings
from errors import ScopeError, ValidationError

from .contexts import LineChain, LineContext, ProductChain, ProductContext, SlantContext
from .geometry import GenericPointStream

logger = logging.getLogger(__name__)


def _cohomological_degree(ctx, z, degree):
    k = ctx.target_dimension - z.degree
    if k < 0:
        raise ValidationError(
            f"A {z.degree}-chain cannot be slanted against ω on R^{ctx.target_dimension}"
        )
    if degree is not None and degree != k:
        raise ValidationError(f"Slant of a {z.degree}-chain lands in degree {k}, not {degree}")
    return k


def slant_value(ctx, z, simplex):
    """(φ̄/z) on one simplex of the resolution."""
    total = z.module.zero(ctx.spec)
    for weight, coefficient in ctx.contributions(simplex, z):
        total = total + coefficient * weight
    return total


def slant(ctx, z, degree=None, check_cycle=True):
    """φ̄/z as a lazily evaluated equivariant cochain on ``ctx.resolution``."""
    k = _cohomological_degree(ctx, z, degree)
    if check_cycle and not z.is_zero and not z.is_cycle():
        logger.warning("Slanting a chain that is not a cycle; the result need not be a cocycle")

    def rule(generator):
        return slant_value(ctx, z, ctx.argument(generator))

    return EquivariantCochain(ctx.resolution, k, z.module, rule=rule, name="φ̄/z")


def slant_table(cochain, generators, workers=1):
    """Values of a slant cochain on ``generators``, in the given order."""
    generators = list(generators)
    if workers <= 1:
        return {g: cochain.value(g) for g in generators}
    with ThreadPoolExecutor(max_workers=workers) as executor:
        values = list(executor.map(cochain.value, generators))
    return dict(zip(generators, values))


def support_enumerate(ctx, simplex, orbit, degree=None):
    """Coset representatives γ whose translate γσ can meet the support of ω."""
    if not isinstance(ctx, SlantContext):
        raise ScopeError("Support enumeration is defined for single-family contexts")
    degree = ctx.target_dimension - (len(simplex) - 1) if degree is None else degree
    return [rep for _, rep in ctx.window(simplex, degree, orbit)]


def contributing_cosets(ctx, simplex, orbit, degree=None):
    """[(γ, φ(Δ ⊗ γσ))] for the translates with a nonzero contribution."""
    if not isinstance(ctx, SlantContext):
        raise ScopeError("Support enumeration is defined for single-family contexts")
    degree = ctx.target_dimension - (len(simplex) - 1) if degree is None else degree
    complex_ = ctx.family.complex
    out = []
    for vector, rep in ctx.window(simplex, degree, orbit):
        weight = ctx.phi(simplex, [complex_.cell_vertices(degree, orbit, vector)])
        if weight:
            out.append((rep, weight))
    return out


def _sample_generators(resolution, degree, radius):
    if isinstance(resolution, BarResolution) and radius < resolution.radius:
        return BarResolution(resolution.spec, radius).generators(degree)
    return resolution.generators(degree)


@dataclass
class ClassReport:
    """Slant cochain of a cycle with the data that certifies its class."""

    cochain: EquivariantCochain
    degree: int
    pairings: dict = field(default_factory=dict)
    shifted_pairings: Optional[dict] = None
    witness: Optional[bool] = None
    witness_checked: int = 0

    @property
    def representative_independent(self):
        if self.shifted_pairings is None:
            return None
        return self.shifted_pairings == self.pairings and bool(self.witness)


def class_pairings(cochain, cycles, maps=None):
    """⟨c, w⟩ for each test cycle w, optionally pushed through each of ``maps``."""
    out = {}
    for w in cycles:
        value = pair_cochain_cycle(cochain, w)
        label = w.label or repr(w)
        if maps:
            for name, fn in maps.items():
                out[f"{name}:{label}"] = fn(value)
        else:
            out[label] = value.as_int() if value.order == 0 else value
    return out


def alpha_cap(ctx, z, boundary_of=None, maps=None, cycles=None, sample_radius=1):
    """
    α_∩[z]: the slant of z with its pairings against test cycles. ``maps``
    (name → callable on values) push module-valued pairings to integers.

    With ``boundary_of=z′`` the report also holds the pairings of z + ∂z′ and
    checks slant(z + ∂z′) − slant(z) = (−1)^(k+1) δ slant(z′) on the
    generators with vertices in ball(sample_radius).
    """
    if not z.is_cycle():
        raise ValidationError("alpha_cap needs a cycle")
    cochain = slant(ctx, z)
    k = cochain.degree
    cycles = ctx.resolution.test_cycles(k) if cycles is None else cycles
    report = ClassReport(cochain, k, class_pairings(cochain, cycles, maps))
    if boundary_of is not None:
        if boundary_of.degree != z.degree + 1:
            raise ValidationError("The boundary witness must have degree one more than z")
        shifted = slant(ctx, z + boundary_of.boundary())
        primitive = slant(ctx, boundary_of, check_cycle=False).coboundary()
        sign = -1 if k % 2 == 0 else 1
        generators = _sample_generators(ctx.resolution, k, sample_radius)
        report.shifted_pairings = class_pairings(shifted, cycles, maps)
        report.witness = all(
            shifted.value(g) - cochain.value(g) == primitive.value(g) * sign for g in generators
        )
        report.witness_checked = len(generators)
        logger.debug("Representative witness checked on %d generators", len(generators))
    return report


def product_with_line(ctx, p0=None, stream=None):
    """P × R with α × 1 and ω ⊗ ω₀; chains are lifted with ``LineChain``."""
    if not isinstance(ctx, SlantContext):
        raise ScopeError("product_with_line lifts single-family contexts")
    if p0 is None:
        stream = stream or GenericPointStream(settings.DEFAULT_SEED)
        p0 = stream.next_point(1)[0]
    return LineContext(ctx, p0)


def product_context(ctx1, ctx2, radius=None):
    """P1 × P2 with the diagonal action; slant z1 ⊗ z2 given as ``ProductChain``."""
    return ProductContext(ctx1, ctx2, radius)


__all__ = [
    "ClassReport",
    "LineChain",
    "ProductChain",
    "alpha_cap",
    "class_pairings",
    "contributing_cosets",
    "product_context",
    "product_with_line",
    "slant",
    "slant_table",
    "slant_value",
    "support_enumerate",
]