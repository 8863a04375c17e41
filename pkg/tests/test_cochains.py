#!/usr/bin/env python3
"""
Test coefficients cochains, coefficient sequences and cup products
Coboundaries, the Berstein-Schwarz class, connecting maps and section changes
"""
import os
import sys

import pytest

# Add src to path so we can import our modules
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from chain_complexes import BarResolution, InvariantChain, TensorComplex, cellular_resolution, line_complex  # noqa: E402
from coefficients import (  # noqa: E402
    EquivariantCochain,
    ShortExactSeq,
    augmentation_sequence,
    berstein_schwarz,
    connecting_cohomology,
    connecting_homology,
    constant_cochain,
    cup_power,
    cup_product,
    pair_cochain_cycle,
    random_cochain,
)
from errors import LiftError, ScopeError, ValidationError  # noqa: E402
from group_core import Character, CoefficientModule, TensorElement, parse_group  # noqa: E402
from lipschitz_slant import TranslationAlpha  # noqa: E402

Z1 = parse_group("Z^1")
Z2 = parse_group("Z^2")
F2 = parse_group("F_2")
IDEAL = CoefficientModule.augmentation_power(1)


def _b(g):
    return TensorElement.basis(g) - TensorElement.basis(g.spec.identity())


@pytest.mark.parametrize("spec", [Z1, Z2, F2])
def test_constant_cochain_is_cocycle(spec):
    """n·ε is a cocycle on bar and cellular models"""
    bar = BarResolution(spec, 1)
    assert constant_cochain(bar, 3).is_cocycle_on(bar.generators(1))
    cellular = cellular_resolution(spec)
    assert constant_cochain(cellular, 1).is_cocycle_on(cellular.generators(1))


def test_berstein_schwarz_on_integers():
    """β[e, γ] = γ − e on Z"""
    bar = BarResolution(Z1, 2)
    beta = berstein_schwarz(bar)
    for g in Z1.ball(2):
        if g.is_identity:
            assert beta.value((g,)).is_zero
        else:
            assert beta.value((g,)) == _b(g)
    assert beta.module == IDEAL
    assert beta.is_cocycle_on(BarResolution(Z1, 1).generators(2))


def test_beta_pairs_with_loop():
    """⟨β, [e, t]⟩ = t − e"""
    bar = BarResolution(Z1, 1)
    loop = bar.test_cycles(1)[0]
    assert pair_cochain_cycle(berstein_schwarz(bar), loop) == _b(Z1.generator(0))


@pytest.mark.parametrize("spec", [Z1, Z2, F2])
def test_connecting_map_of_one_is_beta(spec):
    """δ̄(1) = β for the augmentation sequence, on bar and cellular models"""
    sequence = augmentation_sequence(spec)
    for resolution in (BarResolution(spec, 1), cellular_resolution(spec)):
        image = connecting_cohomology(constant_cochain(resolution, 1), sequence)
        beta = berstein_schwarz(resolution)
        generators = resolution.generators(1)
        assert all(image.value(g) == beta.value(g) for g in generators)
        assert all(beta.value(g).augmentation_free() for g in generators)


def test_section_change_is_a_coboundary():
    """Anchoring the section at t moves δ̄(1) by δ of the 0-cochain t − e"""
    bar = BarResolution(Z2, 1)
    t = Z2.generator(0)
    sequence = augmentation_sequence(Z2)
    one = constant_cochain(bar, 1)
    moved = connecting_cohomology(one, sequence.with_anchor(t))
    image = connecting_cohomology(one, sequence)
    shift = EquivariantCochain(bar, 0, IDEAL, values={(): _b(t)}).coboundary()
    for g in bar.generators(1):
        assert moved.value(g) - image.value(g) == shift.value(g)


def test_connecting_requires_matching_module():
    """The cochain must take values in the quotient of the sequence"""
    bar = BarResolution(Z1, 1)
    with pytest.raises(ValidationError):
        connecting_cohomology(berstein_schwarz(bar), augmentation_sequence(Z1))


@pytest.mark.parametrize("module", [CoefficientModule.group_ring(), IDEAL])
def test_coboundary_squares_to_zero(module):
    """δδ = 0 on deterministic random cochains"""
    bar = BarResolution(Z1, 1)
    c = random_cochain(bar, 1, module, seed=3)
    twice = c.coboundary().coboundary()
    assert all(twice.value(g).is_zero for g in bar.generators(3))


def test_random_cochain_is_deterministic():
    """Same seed, same values"""
    bar = BarResolution(Z2, 1)
    a = random_cochain(bar, 1, IDEAL, seed=9)
    b = random_cochain(bar, 1, IDEAL, seed=9)
    assert all(a.value(g) == b.value(g) for g in bar.generators(1))


def test_cochain_rejects_values_outside_module():
    """A ZG value that is not augmentation-free is not in I"""
    bar = BarResolution(Z1, 1)
    with pytest.raises(ValidationError):
        EquivariantCochain(bar, 0, IDEAL, values={(): TensorElement.basis(Z1.generator(0))})


def test_sequence_lift_and_exactness():
    """Project after lift is the identity; lifting outside the quotient fails"""
    t = Z2.generator(0)
    sequence = ShortExactSeq(Z2, 2)
    assert sequence.kernel.label == "I^2"
    assert sequence.middle.label == "I⊗ZG"
    assert sequence.quotient.label == "I"
    x = _b(t)
    assert sequence.check(samples_quotient=[x], samples_kernel=[x.tensor(x)])
    with pytest.raises(LiftError):
        sequence.lift(TensorElement.basis(t))
    with pytest.raises(ValidationError):
        ShortExactSeq(Z2, 0)


def test_connecting_homology_of_fundamental_cycle():
    """∂̄ of the fundamental class is an I-valued cycle"""
    family = TranslationAlpha(Z2)
    z = family.fundamental_cycle()
    boundary = connecting_homology(z, augmentation_sequence(Z2))
    assert boundary.degree == 1
    assert boundary.module == IDEAL
    assert boundary.is_cycle()
    assert not boundary.is_zero


def test_connecting_homology_needs_free_action():
    """Non-free complexes are out of scope for the homology connecting map"""
    complex_ = line_complex(Z2, Character(Z2, (1, 0)))
    z = InvariantChain(complex_, 1, CoefficientModule.integers(), {0: 1})
    with pytest.raises(ScopeError):
        connecting_homology(z, augmentation_sequence(Z2))


def test_cup_product_values():
    """(u ∪ v)(c ⊗ g·d) = u(c) ⊗ g·v(d), zero off the matching bidegree"""
    bar = BarResolution(Z1, 1)
    beta = berstein_schwarz(bar)
    t = Z1.generator(0)
    cup = cup_product(beta, beta)
    assert cup.module.label == "I^2"
    assert cup.degree == 2
    assert cup.value((1, (t,), t, (t,))) == _b(t).tensor(_b(t).act(t))
    assert cup.value((0, (), t, (t, t))).is_zero


def test_cup_square_is_cocycle():
    """β ∪ β pulled back along the diagonal is a cocycle"""
    bar = BarResolution(Z1, 1)
    square = cup_power(berstein_schwarz(bar), 2)
    assert square.name == "β^2"
    assert square.is_cocycle_on(bar.generators(3))
    with pytest.raises(ScopeError):
        cup_power(berstein_schwarz(bar), 0)


def test_cup_product_leibniz_rule():
    """δ(u ∪ v) = δu ∪ v + (−1)^|u| u ∪ δv on the tensor complex"""
    bar = BarResolution(Z1, 1)
    tensor = TensorComplex(bar, bar)
    u = random_cochain(bar, 1, IDEAL, seed=1)
    v = random_cochain(bar, 0, CoefficientModule.group_ring(), seed=2)
    lhs = cup_product(u, v, tensor).coboundary()
    rhs = cup_product(u.coboundary(), v, tensor) - cup_product(u, v.coboundary(), tensor)
    for generator in tensor.generators(2)[:60]:
        assert lhs.value(generator) == rhs.value(generator)
