"""
Tensor powers of the group ring with the diagonal action.

A TensorElement of order k is stored fully expanded in the basis of k-tuples
of group elements, which is the canonical form used for equality. Order 0 is
the integer (trivial module) case.
"""
from __future__ import annotations

import itertools
import re
from collections.abc import Mapping
from dataclasses import dataclass
from types import MappingProxyType

from errors import ConfigurationError, ValidationError

from .ring import GroupRingElement, _format_terms


def _key_order(key):
    return tuple(g.sort_key() for g in key)


class TensorElement:
    __slots__ = ("spec", "order", "_terms")

    def __init__(self, spec, order, terms=None):
        if order < 0:
            raise ValidationError(f"Tensor order must be nonnegative, got {order}")
        merged = {}
        items = terms.items() if isinstance(terms, Mapping) else (terms or ())
        for key, c in items:
            key = tuple(key)
            if len(key) != order:
                raise ValidationError(f"Basis tensor {key} does not have order {order}")
            for g in key:
                if g.spec != spec:
                    raise ConfigurationError(f"Group mismatch: {g.spec} vs {spec}")
            merged[key] = merged.get(key, 0) + int(c)
        self.spec = spec
        self.order = order
        self._terms = {k: merged[k] for k in sorted(merged, key=_key_order) if merged[k]}

    @classmethod
    def zero(cls, spec, order):
        return cls(spec, order)

    @classmethod
    def scalar(cls, spec, n):
        return cls(spec, 0, {(): n})

    @classmethod
    def basis(cls, *elements, coefficient=1):
        if not elements:
            raise ValidationError("Use TensorElement.scalar for order 0")
        return cls(elements[0].spec, len(elements), {tuple(elements): coefficient})

    @classmethod
    def from_ring(cls, x):
        return cls(x.spec, 1, {(g,): c for g, c in x.items()})

    @classmethod
    def from_factors(cls, factors, coefficient=1):
        """Expand x_1 ⊗ ... ⊗ x_k multilinearly."""
        factors = list(factors)
        if not factors:
            raise ValidationError("from_factors needs at least one factor")
        spec = factors[0].spec
        terms = {}
        for combo in itertools.product(*(list(f.items()) for f in factors)):
            key = tuple(g for g, _ in combo)
            c = coefficient
            for _, a in combo:
                c *= a
            terms[key] = terms.get(key, 0) + c
        return cls(spec, len(factors), terms)

    @property
    def terms(self):
        return MappingProxyType(self._terms)

    def items(self):
        return self._terms.items()

    @property
    def is_zero(self):
        return not self._terms

    def _check(self, other):
        if other.spec != self.spec or other.order != self.order:
            raise ValidationError(
                f"Cannot combine order {self.order} over {self.spec} "
                f"with order {other.order} over {other.spec}"
            )

    def __add__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        self._check(other)
        terms = dict(self._terms)
        for k, c in other._terms.items():
            terms[k] = terms.get(k, 0) + c
        return TensorElement(self.spec, self.order, terms)

    def __sub__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return TensorElement(self.spec, self.order, {k: -c for k, c in self._terms.items()})

    def __mul__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        return TensorElement(self.spec, self.order, {k: n * c for k, c in self._terms.items()})

    __rmul__ = __mul__

    def tensor(self, other):
        """Concatenate factors: self ⊗ other."""
        if other.spec != self.spec:
            raise ConfigurationError(f"Group mismatch: {self.spec} vs {other.spec}")
        terms = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                terms[k1 + k2] = terms.get(k1 + k2, 0) + c1 * c2
        return TensorElement(self.spec, self.order + other.order, terms)

    def act(self, g):
        """Diagonal action of g on every factor."""
        if self.order == 0:
            return self
        return TensorElement(
            self.spec, self.order, {tuple(g * h for h in k): c for k, c in self._terms.items()}
        )

    def contract(self, slot):
        """Apply the augmentation to one factor."""
        if not 0 <= slot < self.order:
            raise ValidationError(f"Slot {slot} out of range for order {self.order}")
        terms = {}
        for k, c in self._terms.items():
            reduced = k[:slot] + k[slot + 1:]
            terms[reduced] = terms.get(reduced, 0) + c
        return TensorElement(self.spec, self.order - 1, terms)

    def extend(self, element=None):
        """Append one factor holding ``element`` (the identity by default)."""
        element = self.spec.identity() if element is None else element
        return TensorElement(
            self.spec, self.order + 1, {k + (element,): c for k, c in self._terms.items()}
        )

    def augmentation_free(self, slots=None):
        slots = range(self.order) if slots is None else slots
        return all(self.contract(i).is_zero for i in slots)

    def as_int(self):
        if self.order != 0:
            raise ValidationError(f"Tensor of order {self.order} is not an integer")
        return self._terms.get((), 0)

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return (
            self.spec == other.spec and self.order == other.order and self._terms == other._terms
        )

    def __hash__(self):
        return hash((self.spec, self.order, tuple(self._terms.items())))

    def __repr__(self):
        return f"TensorElement[{self.order}]({self})"

    def __str__(self):
        if self.order == 0:
            return str(self.as_int())
        if self.order == 1:
            return _format_terms((str(k[0]), c) for k, c in self._terms.items())
        return _format_terms(
            ("(" + " ⊗ ".join(str(g) for g in k) + ")", c) for k, c in self._terms.items()
        )


def diagonal_act(g, t):
    """γ·(x₁⊗…⊗x_k) = γx₁⊗…⊗γx_k."""
    return t.act(g)


_MODULE_TOKEN = re.compile(r"^(I|ZG)(?:\^(\d+))?$")


@dataclass(frozen=True)
class CoefficientModule:
    """
    Tag of a coefficient module: tensor order plus the slots that must lie in
    the augmentation ideal. Z is order 0, ZG is (1, {}), I^k is (k, all slots).
    """

    order: int
    augmented: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "augmented", frozenset(self.augmented))
        if any(not 0 <= i < self.order for i in self.augmented):
            raise ConfigurationError(f"Augmented slots {set(self.augmented)} exceed order {self.order}")

    @classmethod
    def integers(cls):
        return cls(0)

    @classmethod
    def group_ring(cls):
        return cls(1)

    @classmethod
    def augmentation_power(cls, k):
        return cls(k, frozenset(range(k)))

    @classmethod
    def augmentation_power_times_ring(cls, k):
        """I^k ⊗ ZG, the middle term of the sequence ending in I^k."""
        return cls(k + 1, frozenset(range(k)))

    @classmethod
    def parse(cls, label):
        text = str(label).strip().strip('"').replace(" ", "")
        if text == "Z":
            return cls.integers()
        augmented = set()
        order = 0
        for token in re.split(r"[⊗*]", text):
            match = _MODULE_TOKEN.match(token)
            if not match:
                raise ConfigurationError(f"Cannot parse coefficient module {label!r}")
            count = int(match.group(2) or 1)
            if match.group(1) == "I":
                augmented.update(range(order, order + count))
            order += count
        return cls(order, frozenset(augmented))

    def tensor(self, other):
        shifted = {i + self.order for i in other.augmented}
        return CoefficientModule(self.order + other.order, self.augmented | shifted)

    @property
    def label(self):
        if self.order == 0:
            return "Z"
        slots = ["I" if i in self.augmented else "ZG" for i in range(self.order)]
        parts = []
        for name, run in itertools.groupby(slots):
            count = len(list(run))
            parts.append(name if count == 1 else f"{name}^{count}")
        return "⊗".join(parts)

    def __str__(self):
        return self.label

    def contains(self, t):
        return t.order == self.order and t.augmentation_free(sorted(self.augmented))

    def zero(self, spec):
        return TensorElement.zero(spec, self.order)
