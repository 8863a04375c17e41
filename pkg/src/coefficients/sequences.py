"""
Short exact coefficient sequences 0 → I^ℓ → I^(ℓ−1)⊗ZΓ → I^(ℓ−1) → 0 (ℓ = 1 is
the augmentation sequence 0 → I → ZΓ → Z → 0), their connecting maps in
homology and cohomology, and the Berstein–Schwarz cocycle.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

from chain_complexes import InvariantChain, invariant_boundary
from errors import LiftError, ScopeError, ValidationError
from group_core import CoefficientModule, TensorElement

from .cochains import EquivariantCochain

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ShortExactSeq:
    """
    0 → kernel → middle → quotient → 0 where the projection applies ε to the
    last tensor slot and the section appends ``anchor`` (the identity by default).
    """

    spec: object
    ell: int
    anchor: Optional[object] = None

    def __post_init__(self):
        if self.ell < 1:
            raise ValidationError(f"Sequence index must be at least 1, got {self.ell}")
        if self.anchor is not None and self.anchor.spec != self.spec:
            raise ValidationError("Section anchor lives in another group")

    @property
    def kernel(self):
        return CoefficientModule.augmentation_power(self.ell)

    @property
    def middle(self):
        return CoefficientModule.augmentation_power_times_ring(self.ell - 1)

    @property
    def quotient(self):
        return CoefficientModule.augmentation_power(self.ell - 1)

    @property
    def name(self):
        return f"0 → {self.kernel} → {self.middle} → {self.quotient} → 0"

    def include(self, x):
        if not self.kernel.contains(x):
            raise ValidationError(f"{x} is not in {self.kernel}")
        return x

    def project(self, x):
        if not self.middle.contains(x):
            raise ValidationError(f"{x} is not in {self.middle}")
        return x.contract(self.ell - 1)

    def lift(self, x):
        if not self.quotient.contains(x):
            raise LiftError(f"Cannot lift {x}: not an element of {self.quotient}", value=x)
        lifted = x.extend(self.anchor)
        if lifted.contract(self.ell - 1) != x:
            raise LiftError(f"Section does not split the projection at {x}", value=x)
        return lifted

    def with_anchor(self, anchor):
        return ShortExactSeq(self.spec, self.ell, anchor)

    def check(self, samples_middle=(), samples_quotient=(), samples_kernel=()):
        """Exactness on test elements: project∘include = 0 and project∘lift = id."""
        for x in samples_kernel:
            if not self.project(self.include(x)).is_zero:
                return False
        for x in samples_quotient:
            if self.project(self.lift(x)) != x:
                return False
        for x in samples_middle:
            if not self.quotient.contains(self.project(x)):
                return False
        return True


def augmentation_sequence(spec, anchor=None):
    return ShortExactSeq(spec, 1, anchor)


def augmentation_power_sequence(spec, ell, anchor=None):
    return ShortExactSeq(spec, ell, anchor)


def berstein_schwarz(resolution):
    """β(Δ) = Σ n·ε(Δ0)·g over the terms n·g·Δ0 of ∂Δ: the coboundary of the lift of ε."""
    spec = resolution.spec
    module = CoefficientModule.augmentation_power(1)

    def rule(generator):
        total = TensorElement.zero(spec, 1)
        for n, g, face in resolution.boundary(1, generator):
            weight = n * resolution.augmentation(face)
            if weight:
                total = total + TensorElement.basis(g, coefficient=weight)
        return total

    return EquivariantCochain(resolution, 1, module, rule=rule, name="β")


def connecting_cohomology(cochain, sequence):
    """δ̄c: lift c through the section and take the coboundary; lands in the kernel."""
    if cochain.module != sequence.quotient:
        raise ValidationError(f"Cochain has coefficients in {cochain.module}, sequence ends in {sequence.quotient}")
    lifted = cochain.map_values(sequence.lift, sequence.middle, name=f"lift({cochain.name})")
    boundary = lifted.coboundary()

    def rule(generator):
        value = boundary.value(generator)
        if not sequence.kernel.contains(value):
            raise ValidationError(
                f"δ of the lift is not in {sequence.kernel} on "
                f"{cochain.complex.label(generator)}: input is not a cocycle"
            )
        return value

    return EquivariantCochain(
        cochain.complex, cochain.degree + 1, sequence.kernel, rule=rule, name=f"δ̄{cochain.name}"
    )


def connecting_homology(chain, sequence):
    """∂̄z: lift coefficients orbitwise and take the invariant boundary."""
    if chain.module != sequence.quotient:
        raise ValidationError(f"Chain has coefficients in {chain.module}, sequence ends in {sequence.quotient}")
    if not chain.complex.is_free:
        raise ScopeError("The homology connecting map is implemented for free actions only")
    lifted = chain.map_coefficients(sequence.lift, sequence.middle)
    boundary = invariant_boundary(lifted)
    for orbit, value in boundary.coefficients.items():
        if not sequence.kernel.contains(value):
            raise ValidationError(
                f"Boundary of the lift leaves {sequence.kernel} at "
                f"{chain.complex.cell(boundary.degree, orbit).name}: input is not a cycle"
            )
    return InvariantChain(chain.complex, boundary.degree, sequence.kernel, boundary.coefficients)
