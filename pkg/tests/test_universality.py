#!/usr/bin/env python3
"""
Test coefficients.universality
Coefficient homomorphisms on I^k, the integer solve for φ, pushforward and coinvariant ranks
"""
import os
import sys

import pytest

# Add src to path so we can import our modules
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from chain_complexes import BarResolution  # noqa: E402
from coefficients import (  # noqa: E402
    ModuleMap,
    basis_tensor,
    berstein_schwarz,
    character_cochain,
    coinvariants_rank,
    constant_cochain,
    pair_cochain_cycle,
    pushforward,
    solve_coefficient_hom,
    solve_with_retry,
)
from errors import RadiusInsufficientError, UnsatError, ValidationError  # noqa: E402
from group_core import Character, TensorElement, parse_group  # noqa: E402

Z1 = parse_group("Z^1")
Z2 = parse_group("Z^2")
F2 = parse_group("F_2")


@pytest.mark.parametrize("spec,radius,expected", [(Z1, 3, 1), (Z2, 3, 2), (F2, 2, 2)])
def test_coinvariants_of_augmentation_ideal(spec, radius, expected):
    """I_Γ has the rank of the abelianization, stably in R"""
    ranks = coinvariants_rank(spec, "I", radius)
    assert ranks.rank_at_radius == expected
    assert ranks.stable
    assert ranks.module == "I"


def test_coinvariants_report_torsion_from_snf():
    """I_Z is free of rank 1: b_{t^j} = j·b_t leaves no torsion"""
    ranks = coinvariants_rank(Z1, "I", 3)
    assert ranks.rank_at_radius == 1
    assert ranks.torsion_at_radius == ()
    assert ranks.torsion_at_next == ()


def test_coinvariants_unstable_at_small_radius():
    """I^2 over F_2 has not settled at radius 1"""
    ranks = coinvariants_rank(F2, "I^2", 1)
    assert not ranks.stable


def test_coinvariants_reject_other_modules():
    """Only I and I^2 are supported"""
    with pytest.raises(ValidationError):
        coinvariants_rank(Z1, "ZG", 1)


def test_characters_product_values():
    """b_g1 ⊗ b_g2 ↦ χ1(g1)·χ2(g2)"""
    phi = ModuleMap.characters_product([Character.coordinate(Z2, 0), Character.coordinate(Z2, 1)])
    t1, t2 = Z2.generators()
    assert phi.order == 2
    assert phi(basis_tensor((t1, t2))) == 1
    assert phi(basis_tensor((t1 ** 2, t2 ** -1))) == -2
    assert phi(basis_tensor((t2, t1))) == 0
    assert phi.equivariance_defects(radius=1) == []


def test_module_map_rejects_non_members():
    """φ is defined on I^k only"""
    phi = ModuleMap.characters_product([Character.coordinate(Z1, 0)])
    with pytest.raises(ValidationError):
        phi(TensorElement.basis(Z1.generator(0)))


def test_solve_recovers_the_character():
    """k = 1 on Z: φ(t^j − e) = j, equivariant inside the ball"""
    bar = BarResolution(Z1, 2)
    target = character_cochain(bar, [Character.coordinate(Z1, 0)])
    phi = solve_coefficient_hom(Z1, 1, 2, target, resolution=bar)
    t = Z1.generator(0)
    for j in (-2, -1, 1, 2):
        assert phi.basis_value((t ** j,)) == j
    assert phi.equivariance_defects() == []
    with pytest.raises(RadiusInsufficientError):
        phi.basis_value((t ** 3,))


def test_pushforward_realizes_target():
    """⟨φ*β, [e, t]⟩ = ⟨χ, [e, t]⟩"""
    bar = BarResolution(Z1, 2)
    target = character_cochain(bar, [Character.coordinate(Z1, 0)])
    phi = solve_coefficient_hom(Z1, 1, 2, target, resolution=bar)
    pushed = pushforward(phi, berstein_schwarz(bar))
    loop = bar.test_cycles(1)[0]
    assert pair_cochain_cycle(pushed, loop) == pair_cochain_cycle(target, loop)
    assert pushed.value((Z1.generator(0) ** 2,)).as_int() == 2
    with pytest.raises(ValidationError):
        pushforward(phi, constant_cochain(bar, 1))


def test_solve_unsat_and_retry():
    """Radius 0 has no basis tensors; the retry grows the ball until it works"""
    bar = BarResolution(Z1, 2)
    target = character_cochain(bar, [Character.coordinate(Z1, 0)])
    with pytest.raises(UnsatError):
        solve_coefficient_hom(Z1, 1, 0, target, resolution=bar)
    phi = solve_with_retry(Z1, 1, 0, target, max_radius=1, resolution=bar)
    assert phi.radius == 1
    assert phi.basis_value((Z1.generator(0),)) == 1


def test_module_map_table():
    """Tab-separated basis table with one row per basis tensor"""
    bar = BarResolution(Z1, 2)
    target = character_cochain(bar, [Character.coordinate(Z1, 0)])
    phi = solve_coefficient_hom(Z1, 1, 1, target, resolution=bar)
    lines = phi.to_table().splitlines()
    assert lines[0] == "basis\tvalue"
    assert sorted(lines[1:]) == ["(t - e)\t1", "(t^-1 - e)\t-1"]
    with pytest.raises(ValidationError):
        ModuleMap.zero(Z1, 1).to_table()
