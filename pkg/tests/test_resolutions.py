#!/usr/bin/env python3
"""
Test chain_complexes resolutions and simplicial Γ-complexes
∂∂ = 0, augmentation, test cycles, the diagonal, cell files and invariant chains
"""
import os
import sys

import pytest

# Add src to path so we can import our modules
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from chain_complexes import (  # noqa: E402
    BarResolution,
    InvariantChain,
    TensorComplex,
    cellular_resolution,
    coordinate_cycle,
    diagonal_chain,
    fundamental_cycle,
    homology,
    invariant_boundary,
    kuhn_complex,
    line_complex,
    load_cell_complex,
    parse_cell_complex,
    tensor_complex,
)
from errors import ConfigurationError, ResourceLimitError, ValidationError  # noqa: E402
from group_core import Character, CoefficientModule, TensorElement, parse_group  # noqa: E402

DATA = os.path.join(os.path.dirname(__file__), '..', 'data', 'complexes')
Z1 = parse_group("Z^1")
Z2 = parse_group("Z^2")
F2 = parse_group("F_2")


@pytest.mark.parametrize("spec", [Z1, Z2, F2])
def test_bar_resolution_is_a_complex(spec):
    """∂∂ = 0 and ε∂ = 0 on the truncated bar resolution"""
    bar = BarResolution(spec, 1)
    assert bar.check_augmented()
    for degree in (2, 3):
        assert bar.square_zero(degree)


@pytest.mark.parametrize("spec", [Z1, Z2, parse_group("Z^3"), F2])
def test_cellular_resolutions_are_complexes(spec):
    """Torus (Koszul) and wedge-of-circles models square to zero"""
    res = cellular_resolution(spec)
    assert res.check_augmented()
    for degree in range(2, spec.rank + 1):
        assert res.square_zero(degree)


def test_bar_fundamental_cycles():
    """Antisymmetrized flags are cycles, one per subset of generators"""
    bar = BarResolution(Z2, 2)
    ones = bar.test_cycles(1)
    assert [w.label for w in ones] == ["t1", "t2"]
    twos = bar.test_cycles(2)
    assert len(twos) == 1 and twos[0].label == "t1∧t2"
    for w in ones + twos:
        assert w.is_cycle()
    assert bar.test_cycles(0)[0].label == "[e]"


def test_free_group_loops_are_cycles():
    """[e, a] and [e, b] span H_1(F_2)"""
    bar = BarResolution(F2, 1)
    cycles = bar.test_cycles(1)
    assert [w.label for w in cycles] == ["a", "b"]
    assert all(w.is_cycle() for w in cycles)
    assert bar.test_cycles(2) == ()


def test_cellular_test_cycles():
    """Every cell of the torus model is a cycle after tensoring with Z"""
    res = cellular_resolution(Z2)
    assert [w.label for w in res.test_cycles(1)] == ["e{1}", "e{2}"]
    assert [w.label for w in res.test_cycles(2)] == ["e{1,2}"]


def test_tensor_complex_and_diagonal():
    """The tensor complex squares to zero and the diagonal of a cycle is a cycle"""
    bar = BarResolution(Z2, 1)
    tensor = tensor_complex(bar, bar, 1)
    assert isinstance(tensor, TensorComplex)
    assert tensor.square_zero(2, tensor.generators(2)[:40])
    for w in bar.test_cycles(2):
        image = diagonal_chain(tensor, w)
        assert image.degree == 2
        assert image.is_cycle()


def test_bar_generator_cap(monkeypatch):
    """Too many generators is a resource error naming the cap"""
    monkeypatch.setenv("SLANT_BALL_CAP", "100")
    bar = BarResolution(Z2, 2)
    with pytest.raises(ResourceLimitError) as info:
        bar.generators(2)
    assert info.value.cap == 100


def test_kuhn_complex_structure():
    """Kuhn triangulation: d! top simplices per orbit, faces consistent"""
    complex_ = kuhn_complex(Z2)
    assert [len(complex_.cells(k)) for k in range(3)] == [1, 3, 2]
    assert complex_.is_free
    assert complex_.square_zero()
    assert fundamental_cycle(complex_).is_cycle()
    assert coordinate_cycle(complex_, 0).is_cycle()
    assert coordinate_cycle(complex_, 1).is_cycle()


def test_line_complex_non_free():
    """R with f = (1, 2) on Z^2: one vertex orbit, stabilizer ker f"""
    chi = Character(Z2, (1, 2))
    complex_ = line_complex(Z2, chi)
    assert len(complex_.cells(0)) == 1
    assert not complex_.is_free
    assert complex_.square_zero()
    edge = InvariantChain(complex_, 1, CoefficientModule.integers(), {0: 1})
    assert edge.is_cycle()


def test_invariant_chain_stabilizer_check():
    """Coefficients on a non-free complex must be stabilizer invariant"""
    chi = Character(Z2, (1, 0))
    complex_ = line_complex(Z2, chi)
    t1 = Z2.generator(0)
    ring = CoefficientModule.group_ring()
    with pytest.raises(ValidationError):
        InvariantChain(complex_, 0, ring, {0: TensorElement.basis(t1)})


def test_invariant_chain_expand_regroup():
    """Expanding to translates and regrouping gives the chain back"""
    complex_ = kuhn_complex(Z2)
    ring = CoefficientModule.group_ring()
    t1, t2 = Z2.generators()
    z = InvariantChain(complex_, 1, ring, {"1": TensorElement.basis(t1) - TensorElement.basis(t2)})
    expanded = z.expand(1)
    assert InvariantChain.regroup(complex_, 1, ring, expanded) == z


def test_load_torus_cells():
    """The shipped torus file has torus homology"""
    complex_ = load_cell_complex(os.path.join(DATA, 'torus.cells'))
    assert complex_.spec == Z2
    groups = homology(complex_.quotient_complex())
    assert [g.betti for g in groups] == [1, 2, 1]


def test_load_circle_cells():
    """The shipped circle file is a free Z-complex with circle homology"""
    complex_ = load_cell_complex(os.path.join(DATA, 'circle.cells'))
    assert [g.betti for g in homology(complex_.quotient_complex())] == [1, 1]
    assert complex_.as_free_complex().check_augmented()


@pytest.mark.parametrize("text", [
    "0 v\n",
    "group Z^1\n1 e (v, t, +1)\n",
    "group Z^1\n0 v\n1 e (v, t, +1) junk\n",
    "group Z^1\n0 v\n1 e (v, q, +1)\n",
])
def test_cell_file_errors(text):
    """Malformed cell files are configuration errors"""
    with pytest.raises(ConfigurationError):
        parse_cell_complex(text)


def test_invariant_boundary_of_an_edge():
    """∂(e·[0, 1_{t1}]) = t1^-1·v − v with ℤΓ coefficients, and ∂∂ = 0"""
    complex_ = kuhn_complex(Z2)
    ring = CoefficientModule.group_ring()
    t1 = Z2.generator(0)
    edge = InvariantChain(complex_, 1, ring, {"1": TensorElement.basis(Z2.identity())})
    boundary = invariant_boundary(edge)
    assert boundary.degree == 0
    assert boundary.coefficient(0) == TensorElement.basis(t1 ** -1) - TensorElement.basis(Z2.identity())
    square = InvariantChain(complex_, 2, ring, {"1|2": TensorElement.basis(t1)})
    assert invariant_boundary(invariant_boundary(square)).is_zero
    with pytest.raises(ValidationError):
        invariant_boundary(boundary)
