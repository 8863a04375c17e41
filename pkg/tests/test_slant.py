#!/usr/bin/env python3
"""
Test lipschitz_slant
The slant product on the point, line and torus families, support enumeration and liftings
"""
import math
import os
import sys
from fractions import Fraction

import pytest

# Add src to path so we can import our modules
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from chain_complexes import BarResolution, InvariantChain  # noqa: E402
from coefficients import cup_product  # noqa: E402
from errors import ConfigurationError, ScopeError, ValidationError  # noqa: E402
from group_core import Character, CoefficientModule, parse_group  # noqa: E402
from lipschitz_slant import (  # noqa: E402
    CocycleAlpha,
    GenericPointStream,
    LineChain,
    PointAlpha,
    ProductChain,
    SlantContext,
    TranslationAlpha,
    alpha_cap,
    alpha_on_cell,
    contributing_cosets,
    product_context,
    product_with_line,
    slant,
    slant_table,
    slant_value,
    staircase,
    support_enumerate,
)

Z1 = parse_group("Z^1")
Z2 = parse_group("Z^2")
F2 = parse_group("F_2")
SEED = 20240601


def _line(values, spec=Z1):
    family = CocycleAlpha(Character(spec, values))
    ctx = SlantContext.build(family, GenericPointStream(SEED), 2)
    return family, ctx


@pytest.mark.parametrize("spec", [Z1, Z2, F2])
def test_point_slant_is_augmentation(spec):
    """P a point: the slant of the point is 1 on [e] and a cocycle"""
    family = PointAlpha(spec)
    ctx = SlantContext.build(family, GenericPointStream(SEED), 1)
    cochain = slant(ctx, family.point_cycle())
    assert cochain.degree == 0
    assert cochain.value(()).as_int() == 1
    assert cochain.is_cocycle_on(BarResolution(spec, 1).generators(1))


def test_cocycle_line_recovers_character():
    """f = 2 on Z: the slant of Σ vertices sends [e, γ] to f(γ)"""
    family, ctx = _line((2,))
    cochain = slant(ctx, family.vertex_cycle())
    t = Z1.generator(0)
    assert cochain.value((t,)).as_int() == 2
    assert cochain.value((t ** -1,)).as_int() == -2
    assert cochain.value((t ** 2,)).as_int() == 4
    assert cochain.value((Z1.identity(),)).is_zero


def test_contributing_cosets_count():
    """Exactly |f(γ)| vertex translates cross the generic point"""
    family, ctx = _line((2,))
    t = Z1.generator(0)
    simplex = ctx.argument((t,))
    orbits = range(len(family.complex.cells(0)))
    found = [c for orbit in orbits for c in contributing_cosets(ctx, simplex, orbit, 0)]
    assert len(found) == 2
    assert all(abs(weight) == 1 for _, weight in found)
    candidates = sum(len(support_enumerate(ctx, simplex, orbit, 0)) for orbit in orbits)
    assert candidates >= 2


def test_cocycle_line_on_rank_two():
    """Non-injective f = (1, 2) on Z^2 still recovers f"""
    family, ctx = _line((1, 2), Z2)
    cochain = slant(ctx, family.vertex_cycle())
    t1, t2 = Z2.generators()
    assert cochain.value((t1,)).as_int() == 1
    assert cochain.value((t2,)).as_int() == 2
    assert cochain.value((t2 ** -1,)).as_int() == -2


def test_slant_is_equivariant():
    """(φ̄/z)(gΔ) = g·(φ̄/z)(Δ) computed directly"""
    family, ctx = _line((1,))
    z = family.vertex_cycle()
    cochain = slant(ctx, z)
    for g in Z1.ball(2):
        for s in Z1.generators_with_inverses():
            moved = tuple(g * x for x in ctx.argument((s,)))
            assert slant_value(ctx, z, moved) == cochain.value((s,)).act(g)


@pytest.mark.parametrize("spec", [Z1, Z2])
def test_torus_fundamental_class(spec):
    """α(y, x) = y − x: the fundamental cycle slants to 1"""
    family = TranslationAlpha(spec)
    ctx = SlantContext.build(family, GenericPointStream(SEED), 1)
    report = alpha_cap(ctx, family.fundamental_cycle())
    assert report.degree == 0
    assert report.pairings["[e]"] == 1
    assert report.representative_independent is None


def test_slant_is_independent_of_generic_point():
    """Two generic points give the same cochain"""
    family = TranslationAlpha(Z1)
    stream = GenericPointStream(SEED)
    first = SlantContext.build(family, stream, 1)
    second = SlantContext.build(family, stream, 1)
    assert first.omega != second.omega
    z = family.fundamental_cycle()
    assert slant(first, z).value(()) == slant(second, z).value(())


def test_slant_degree_checks():
    """Degree bookkeeping: k = n − |z|"""
    family = TranslationAlpha(Z1)
    ctx = SlantContext.build(family, GenericPointStream(SEED), 1)
    with pytest.raises(ValidationError):
        slant(ctx, family.fundamental_cycle(), degree=1)


def test_alpha_cap_needs_a_cycle():
    """Only cycles have a class"""
    family = TranslationAlpha(Z2)
    ctx = SlantContext.build(family, GenericPointStream(SEED), 1)
    half = InvariantChain(family.complex, 2, CoefficientModule.integers(), {"1|2": 1})
    with pytest.raises(ValidationError):
        alpha_cap(ctx, half)


def test_family_conditions():
    """Invariance, properness and the Lipschitz bound hold on samples"""
    points = [(0,), (1,), (-3,)]
    for family in (TranslationAlpha(Z1), CocycleAlpha(Character(Z1, (3,)))):
        assert all(family.check_conditions(Z1.ball(1), points).values())
    assert all(PointAlpha(F2).check_conditions(F2.ball(1), [()]).values())


def test_translation_orientation_follows_jacobian():
    """y − x reverses R^d for odd d; ω is oriented so the fundamental cycle counts +1"""
    assert TranslationAlpha(Z1).orientation == -1
    assert TranslationAlpha(Z2).orientation == 1
    assert TranslationAlpha(parse_group("Z^3")).orientation == -1
    assert CocycleAlpha(Character(Z1, (1,))).fundamental_orientation() == -1
    assert PointAlpha(Z1).fundamental_orientation() == 1


def test_translation_needs_free_abelian_group():
    """F_2 does not act by translations"""
    with pytest.raises(ConfigurationError):
        TranslationAlpha(F2)


def test_omega_dimension_must_match():
    """ω on the wrong R^n is rejected"""
    family = TranslationAlpha(Z2)
    omega = GenericPointStream(SEED).support_cocycle(1)
    with pytest.raises(ValidationError):
        SlantContext(family, omega, BarResolution(Z2, 1))


def test_product_with_line_keeps_values():
    """Slanting z × R against ω ⊗ ω0 gives the slant of z"""
    family, ctx = _line((1,))
    z = family.vertex_cycle()
    base = slant(ctx, z)
    lifted = product_with_line(ctx, stream=GenericPointStream(SEED + 1))
    assert lifted.target_dimension == 2
    lifted_slant = slant(lifted, LineChain(z))
    for g in BarResolution(Z1, 1).generators(1):
        assert lifted_slant.value(g) == base.value(g)


def test_line_window_covers_a_distant_point():
    """ω₀ at 7/2 + ε: the window reaches its edge and the slant is unchanged"""
    family, ctx = _line((1,))
    z = family.vertex_cycle()
    base = slant(ctx, z)
    p0 = Fraction(7, 2) + Fraction(1, 1000003)
    lifted = product_with_line(ctx, p0=p0)
    assert math.floor(p0) in lifted.line_window()
    assert -math.floor(p0) - 1 in lifted.line_window()
    lifted_slant = slant(lifted, LineChain(z))
    for g in BarResolution(Z1, 1).generators(1):
        assert lifted_slant.value(g) == base.value(g)


def test_support_enumeration_is_single_family():
    """Product contexts have no single window"""
    point = PointAlpha(Z1)
    pctx = SlantContext.build(point, GenericPointStream(SEED), 1)
    product = product_context(pctx, pctx, radius=1)
    with pytest.raises(ScopeError):
        support_enumerate(product, (Z1.identity(),), 0)


def test_slant_table_workers_agree():
    """Threaded evaluation gives the same table"""
    family, ctx = _line((2,))
    cochain = slant(ctx, family.vertex_cycle())
    generators = BarResolution(Z1, 2).generators(1)
    assert slant_table(cochain, generators, workers=3) == slant_table(cochain, generators)


def test_alpha_on_cell_vertex_images():
    """Each staircase vertex (i, j) maps to α(γ_i, x_j)"""
    family = TranslationAlpha(Z1)
    t = Z1.generator(0)
    simplex = (Z1.identity(), t)
    edge = ((0,), (1,))
    images = {}
    for path, _ in staircase(1, 1):
        images[path] = alpha_on_cell(family, simplex, edge, path)
    assert images[((0, 0), (1, 0), (1, 1))] == [(0,), (1,), (0,)]
    assert images[((0, 0), (0, 1), (1, 1))] == [(0,), (-1,), (0,)]


def test_product_slant_carries_reorder_sign():
    """Edge × vertex on R × R: the product slant is −(slant ∪ slant)"""
    first = CocycleAlpha(Character.coordinate(Z2, 0))
    second = CocycleAlpha(Character.coordinate(Z2, 1))
    stream = GenericPointStream(SEED)
    ctx1 = SlantContext.build(first, stream, 1)
    ctx2 = SlantContext.build(second, stream, 1)
    edge, vertices = first.edge_cycle(), second.vertex_cycle()
    product = product_context(ctx1, ctx2, radius=1)
    crossed = slant(product, ProductChain(edge, vertices))
    cup = cup_product(slant(ctx1, edge), slant(ctx2, vertices), tensor=product.resolution)
    t2 = Z2.generator(1)
    for h in (Z2.identity(), t2):
        generator = (0, (), h, (t2,))
        assert not cup.value(generator).is_zero
        assert crossed.value(generator) == -cup.value(generator)
