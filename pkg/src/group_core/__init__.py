from .groups import (
    Character,
    GroupElement,
    GroupSpec,
    mul,
    parse_character,
    parse_group,
    word_length,
)
from .ring import GroupRingElement, augmentation
from .tensors import CoefficientModule, TensorElement, diagonal_act

__all__ = [
    "Character",
    "CoefficientModule",
    "GroupElement",
    "GroupRingElement",
    "GroupSpec",
    "TensorElement",
    "augmentation",
    "diagonal_act",
    "mul",
    "parse_character",
    "parse_group",
    "word_length",
]
