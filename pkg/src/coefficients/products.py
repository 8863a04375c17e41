"""
Cup products. On C ⊗ C′ the product is (u∪v)(c ⊗ g·c′) = u(c) ⊗ g·v(c′) with no
extra sign; with ∂(c⊗c′) = ∂c⊗c′ + (−1)^|c| c⊗∂c′ this gives
δ(u∪v) = δu∪v + (−1)^|u| u∪δv. Products on a single bar resolution are pulled
back along the Alexander–Whitney diagonal.
"""
from __future__ import annotations

from chain_complexes import BarResolution, TensorComplex, diagonal_terms
from errors import ConfigurationError, ScopeError

from .cochains import EquivariantCochain


def cup_product(u, v, tensor=None):
    """u ∪ v as a cochain on tensor_complex(u.complex, v.complex)."""
    if u.spec != v.spec:
        raise ConfigurationError(f"Group mismatch: {u.spec} vs {v.spec}")
    if tensor is None:
        tensor = TensorComplex(u.complex, v.complex)
    module = u.module.tensor(v.module)
    degree = u.degree + v.degree

    def rule(generator):
        i, c, g, d = generator
        if i != u.degree:
            return module.zero(u.spec)
        return u.value(c).tensor(v.value(d).act(g))

    return EquivariantCochain(tensor, degree, module, rule=rule, name=f"{u.name}∪{v.name}")


def diagonal_pullback(cochain, bar):
    """Restrict a cochain on bar ⊗ bar to bar along the Alexander–Whitney diagonal."""
    if not isinstance(bar, BarResolution):
        raise ScopeError("The diagonal is implemented on the bar resolution only")

    def rule(generator):
        total = cochain.module.zero(bar.spec)
        for key in diagonal_terms(bar, generator):
            total = total + cochain.value(key)
        return total

    return EquivariantCochain(bar, cochain.degree, cochain.module, rule=rule, name=cochain.name)


def cup_on_bar(u, v):
    """u ∪ v on the same bar resolution."""
    if u.complex is not v.complex:
        raise ScopeError("Both factors must live on the same bar resolution")
    tensor = TensorComplex(u.complex, u.complex)
    return diagonal_pullback(cup_product(u, v, tensor), u.complex)


def cup_power(cochain, k):
    """cochain ∪ ... ∪ cochain (k factors) on a bar resolution."""
    if k < 1:
        raise ScopeError("Cup powers start at k = 1")
    result = cochain
    for _ in range(k - 1):
        result = cup_on_bar(result, cochain)
    result.name = f"{cochain.name}^{k}"
    return result
