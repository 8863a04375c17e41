"""Integral group ring elements and the augmentation."""
from __future__ import annotations

from collections.abc import Mapping
from types import MappingProxyType

from errors import ConfigurationError

from .groups import GroupElement


class GroupRingElement:
    """Finitely supported integer combination of group elements. Immutable."""

    __slots__ = ("spec", "_terms")

    def __init__(self, spec, terms=None):
        merged = {}
        items = terms.items() if isinstance(terms, Mapping) else (terms or ())
        for g, c in items:
            if not isinstance(g, GroupElement) or g.spec != spec:
                raise ConfigurationError(f"Group ring over {spec} cannot hold {g!r}")
            merged[g] = merged.get(g, 0) + int(c)
        self.spec = spec
        self._terms = {g: merged[g] for g in sorted(merged) if merged[g]}

    @classmethod
    def zero(cls, spec):
        return cls(spec)

    @classmethod
    def one(cls, spec):
        return cls(spec, {spec.identity(): 1})

    @classmethod
    def of(cls, g, coefficient=1):
        return cls(g.spec, {g: coefficient})

    @property
    def terms(self):
        return MappingProxyType(self._terms)

    def items(self):
        return self._terms.items()

    def support(self):
        return tuple(self._terms)

    @property
    def is_zero(self):
        return not self._terms

    def coefficient(self, g):
        return self._terms.get(g, 0)

    def augmentation(self):
        return sum(self._terms.values())

    def act(self, g):
        """Left translation by a group element."""
        return GroupRingElement(self.spec, {g * h: c for h, c in self._terms.items()})

    def _merge(self, other, sign):
        if other.spec != self.spec:
            raise ConfigurationError(f"Group mismatch: {self.spec} vs {other.spec}")
        terms = dict(self._terms)
        for g, c in other._terms.items():
            terms[g] = terms.get(g, 0) + sign * c
        return GroupRingElement(self.spec, terms)

    def __add__(self, other):
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return self._merge(other, 1)

    def __sub__(self, other):
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return self._merge(other, -1)

    def __neg__(self):
        return GroupRingElement(self.spec, {g: -c for g, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return GroupRingElement(self.spec, {g: other * c for g, c in self._terms.items()})
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        if other.spec != self.spec:
            raise ConfigurationError(f"Group mismatch: {self.spec} vs {other.spec}")
        terms = {}
        for g, a in self._terms.items():
            for h, b in other._terms.items():
                gh = g * h
                terms[gh] = terms.get(gh, 0) + a * b
        return GroupRingElement(self.spec, terms)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return self.spec == other.spec and self._terms == other._terms

    def __hash__(self):
        return hash((self.spec, tuple(self._terms.items())))

    def __repr__(self):
        return f"GroupRingElement({self})"

    def __str__(self):
        return _format_terms(((str(g), c) for g, c in self._terms.items()))


def _format_terms(pairs):
    out = ""
    for label, c in pairs:
        magnitude = abs(c)
        body = label if magnitude == 1 else f"{magnitude} {label}"
        if not out:
            out = body if c > 0 else f"-{body}"
        else:
            out += f" + {body}" if c > 0 else f" - {body}"
    return out or "0"


def augmentation(x):
    return x.augmentation()
