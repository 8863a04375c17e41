"""
Normal-form arithmetic for the supported groups.

Two families are supported: free abelian groups Z^d (elements stored as
exponent vectors) and free groups F_r (elements stored as reduced words of
signed generator indices, +i for the i-th generator and -i for its inverse).
The word metric is taken with respect to the standard generating set.
"""
from __future__ import annotations

import logging
import math
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from config import settings
from errors import ConfigurationError, ResourceLimitError, ValidationError

logger = logging.getLogger(__name__)

FREE_ABELIAN = "Z"
FREE = "F"

_GROUP_PATTERN = re.compile(r"^\s*(?:(Z)\^|(F)_)(\d+)\s*$")
_TOKEN_PATTERN = re.compile(r"^([A-Za-z][A-Za-z0-9]*)(?:\^(-?\d+))?$")
_LETTERS = "abcdefghijklmnopqrstuvwxyz"


def _default_names(family, rank):
    if family == FREE_ABELIAN:
        if rank == 1:
            return ("t",)
        return tuple(f"t{i}" for i in range(1, rank + 1))
    if rank <= len(_LETTERS):
        return tuple(_LETTERS[:rank])
    return tuple(f"x{i}" for i in range(1, rank + 1))


@dataclass(frozen=True)
class GroupSpec:
    """A group family with its rank and generator names."""

    family: str
    rank: int
    names: tuple = ()

    def __post_init__(self):
        if self.family not in (FREE_ABELIAN, FREE):
            raise ConfigurationError(f"Unknown group family {self.family!r}")
        minimum = 0 if self.family == FREE_ABELIAN else 1
        if not isinstance(self.rank, int) or self.rank < minimum:
            raise ConfigurationError(f"Invalid rank {self.rank!r} for family {self.family}")
        names = tuple(self.names) or _default_names(self.family, self.rank)
        if len(names) != self.rank or len(set(names)) != len(names):
            raise ConfigurationError(f"Generator names {names!r} do not match rank {self.rank}")
        for name in names:
            if not _TOKEN_PATTERN.match(name) or name == "e":
                raise ConfigurationError(f"Invalid generator name {name!r}")
        object.__setattr__(self, "names", names)

    @classmethod
    def parse(cls, text):
        """Parse the config grammar ``Z^d`` / ``F_r`` (d, r >= 1)."""
        match = _GROUP_PATTERN.match(str(text).strip().strip('"'))
        if not match:
            raise ConfigurationError(f"Cannot parse group {text!r}; expected Z^d or F_r")
        family = FREE_ABELIAN if match.group(1) else FREE
        rank = int(match.group(3))
        if rank < 1:
            raise ConfigurationError(f"Group rank must be positive in {text!r}")
        return cls(family, rank)

    @classmethod
    def trivial(cls):
        return cls(FREE_ABELIAN, 0)

    def __str__(self):
        return f"Z^{self.rank}" if self.family == FREE_ABELIAN else f"F_{self.rank}"

    @property
    def is_abelian(self):
        return self.family == FREE_ABELIAN

    def identity(self):
        if self.is_abelian:
            return GroupElement(self, (0,) * self.rank)
        return GroupElement(self, ())

    def generator(self, index):
        """The generator with 0-based ``index``."""
        if not 0 <= index < self.rank:
            raise ConfigurationError(f"{self} has no generator #{index}")
        if self.is_abelian:
            vector = [0] * self.rank
            vector[index] = 1
            return GroupElement(self, tuple(vector))
        return GroupElement(self, (index + 1,))

    def generators(self):
        return tuple(self.generator(i) for i in range(self.rank))

    def generators_with_inverses(self):
        out = []
        for s in self.generators():
            out.extend((s, s.inverse()))
        return tuple(out)

    def element(self, form):
        """Build an element from an exponent vector (Z^d) or a signed letter list (F_r)."""
        form = tuple(int(x) for x in form)
        if self.is_abelian:
            if len(form) != self.rank:
                raise ConfigurationError(f"Exponent vector {form} has wrong length for {self}")
            return GroupElement(self, form)
        for letter in form:
            if letter == 0 or abs(letter) > self.rank:
                raise ConfigurationError(f"Letter {letter} out of range for {self}")
        return GroupElement(self, _free_product((), form))

    def parse_word(self, text):
        """Parse words such as ``t1^2 t2^-1``, ``a b^-1 a`` or ``e``."""
        tokens = [tok for tok in re.split(r"[\s*]+", str(text).strip()) if tok]
        result = self.identity()
        for token in tokens:
            if token in ("e", "1"):
                continue
            match = _TOKEN_PATTERN.match(token)
            if not match or match.group(1) not in self.names:
                raise ConfigurationError(f"Unknown token {token!r} in word {text!r} over {self}")
            power = int(match.group(2)) if match.group(2) is not None else 1
            result = result * self.generator(self.names.index(match.group(1))) ** power
        return result

    def ball_size(self, radius):
        """Number of elements of word length <= radius, without enumerating them."""
        if radius < 0:
            return 0
        if self.is_abelian:
            return sum(
                2 ** k * math.comb(self.rank, k) * math.comb(radius, k)
                for k in range(0, min(self.rank, radius) + 1)
            )
        r = self.rank
        return 1 + sum(2 * r * (2 * r - 1) ** (j - 1) for j in range(1, radius + 1))

    def ball(self, radius, cap=None):
        """All elements of word length <= radius, sorted by (length, normal form)."""
        if radius < 0:
            raise ValidationError(f"Ball radius must be nonnegative, got {radius}")
        cap = settings.ball_cap() if cap is None else cap
        size = self.ball_size(radius)
        if size > cap:
            raise ResourceLimitError(
                f"Ball of radius {radius} in {self} has {size} elements, above the cap {cap} "
                f"(set SLANT_BALL_CAP to raise it)",
                cap=cap,
            )
        return _ball(self, radius)

    def sphere(self, radius, cap=None):
        return tuple(g for g in self.ball(radius, cap) if g.word_length() == radius)


@lru_cache(maxsize=128)
def _ball(spec, radius):
    if spec.is_abelian:
        forms = _lattice_ball(spec.rank, radius)
    else:
        forms = _word_ball(spec.rank, radius)
    elements = sorted(GroupElement(spec, form) for form in forms)
    logger.debug("Enumerated ball of radius %d in %s (%d elements)", radius, spec, len(elements))
    return tuple(elements)


def _lattice_ball(rank, radius) -> Iterator[tuple]:
    if rank == 0:
        yield ()
        return
    for first in range(-radius, radius + 1):
        for rest in _lattice_ball(rank - 1, radius - abs(first)):
            yield (first,) + rest


def _word_ball(rank, radius):
    words = [()]
    frontier = [()]
    letters = [i for j in range(1, rank + 1) for i in (j, -j)]
    for _ in range(radius):
        nxt = []
        for word in frontier:
            for letter in letters:
                if word and word[-1] == -letter:
                    continue
                nxt.append(word + (letter,))
        words.extend(nxt)
        frontier = nxt
    return words


def _free_product(left, right):
    out = list(left)
    for letter in right:
        if out and out[-1] == -letter:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


@dataclass(frozen=True)
class GroupElement:
    """An element in normal form. Equality is equality of stored forms."""

    spec: GroupSpec
    form: tuple

    def __mul__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        _check_same_group(self.spec, other.spec)
        if self.spec.is_abelian:
            return GroupElement(self.spec, tuple(a + b for a, b in zip(self.form, other.form)))
        return GroupElement(self.spec, _free_product(self.form, other.form))

    def inverse(self):
        if self.spec.is_abelian:
            return GroupElement(self.spec, tuple(-a for a in self.form))
        return GroupElement(self.spec, tuple(-letter for letter in reversed(self.form)))

    def __pow__(self, exponent):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = self.spec.identity()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def word_length(self):
        if self.spec.is_abelian:
            return sum(abs(a) for a in self.form)
        return len(self.form)

    @property
    def is_identity(self):
        return self.word_length() == 0

    def sort_key(self):
        return (self.word_length(), self.form)

    def __lt__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.sort_key() < other.sort_key()

    def __repr__(self):
        return f"GroupElement({self})"

    def __str__(self):
        names = self.spec.names
        if self.is_identity:
            return "e"
        pieces = []
        if self.spec.is_abelian:
            for name, power in zip(names, self.form):
                if power:
                    pieces.append(name if power == 1 else f"{name}^{power}")
            return " ".join(pieces)
        runs = []
        for letter in self.form:
            index, sign = abs(letter) - 1, (1 if letter > 0 else -1)
            if runs and runs[-1][0] == index and (runs[-1][1] > 0) == (sign > 0):
                runs[-1][1] += sign
            else:
                runs.append([index, sign])
        for index, power in runs:
            pieces.append(names[index] if power == 1 else f"{names[index]}^{power}")
        return " ".join(pieces)


def _check_same_group(a, b):
    if a != b:
        raise ConfigurationError(f"Group mismatch: {a} vs {b}")


def mul(g, h):
    return g * h


def word_length(g):
    return g.word_length()


def _egcd(a, b):
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


@dataclass(frozen=True)
class Character:
    """A homomorphism to the integers, given by its values on the generators."""

    spec: GroupSpec
    values: tuple

    def __post_init__(self):
        values = tuple(int(v) for v in self.values)
        if len(values) != self.spec.rank:
            raise ConfigurationError(
                f"Character needs {self.spec.rank} values for {self.spec}, got {len(values)}"
            )
        object.__setattr__(self, "values", values)

    @classmethod
    def coordinate(cls, spec, index):
        values = [0] * spec.rank
        values[index] = 1
        return cls(spec, tuple(values))

    def __call__(self, g):
        _check_same_group(self.spec, g.spec)
        if self.spec.is_abelian:
            return sum(v * a for v, a in zip(self.values, g.form))
        return sum(self.values[abs(x) - 1] * (1 if x > 0 else -1) for x in g.form)

    @property
    def is_zero(self):
        return not any(self.values)

    @property
    def index(self):
        """Positive generator of the image, 0 for the zero character."""
        return math.gcd(*self.values) if self.values else 0

    @property
    def is_injective(self):
        return self.spec.rank == 1 and not self.is_zero

    def translator(self):
        """An element whose value is the index, built from Bezout coefficients."""
        if self.is_zero:
            raise ValidationError("The zero character has no translator")
        g = 0
        coefficients = []
        for v in self.values:
            g, a, b = _egcd(g, v)
            coefficients = [a * c for c in coefficients] + [b]
        result = self.spec.identity()
        for s, c in zip(self.spec.generators(), coefficients):
            result = result * s ** c
        return result

    def minimal_preimage(self, value):
        """Shortest element with the given value; ties go to the smaller normal form."""
        return _minimal_preimage(self, int(value))

    def __str__(self):
        return "(" + ", ".join(f"{n}->{v}" for n, v in zip(self.spec.names, self.values)) + ")"


@lru_cache(maxsize=4096)
def _minimal_preimage(character, value):
    if value == 0:
        return character.spec.identity()
    index = character.index
    if index == 0 or value % index:
        raise ValidationError(f"{value} is not in the image of the character {character}")
    bound = (character.translator() ** (value // index)).word_length()
    for radius in range(1, bound + 1):
        for g in character.spec.sphere(radius):
            if character(g) == value:
                return g
    raise ValidationError(f"No preimage of {value} found within radius {bound}")


def parse_group(text) -> GroupSpec:
    return GroupSpec.parse(text)


def parse_character(spec, values: Sequence) -> Character:
    if isinstance(values, str):
        values = [v for v in re.split(r"[\s,]+", values.strip()) if v]
    try:
        return Character(spec, tuple(int(v) for v in values))
    except ValueError as exc:
        raise ConfigurationError(f"Character values must be integers: {values!r}") from exc
