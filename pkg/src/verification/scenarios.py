"""
Scenario definitions: the builtin registry and INI scenario files.

A scenario file holds one or more ``[scenario]`` / ``[scenario:<name>]``
sections, each optionally paired with an ``[expected]`` / ``[expected:<name>]``
section of ``<check id> = <rendered value>`` entries.
"""
from __future__ import annotations

import configparser
import dataclasses
import logging
import re
from dataclasses import dataclass, field
from typing import Callable, NamedTuple

from config import settings
from errors import ConfigurationError
from group_core import GroupSpec, parse_character, parse_group

logger = logging.getLogger(__name__)

KINDS = (
    "point",
    "cocycle_line",
    "torus",
    "bs_class",
    "corollary_one",
    "naturality",
    "product",
    "large_n",
    "coinvariants",
    "beta_powers",
)

_RESERVED = {"name", "kind", "group", "family", "f", "module", "res_radius", "radius", "seed"}
_BUILTIN_CALL = re.compile(r"^\s*([A-Za-z_][A-Za-z0-9_]*)\s*(?:\((.*)\))?\s*$")


@dataclass(frozen=True)
class Scenario:
    name: str
    kind: str
    group: GroupSpec
    family: str = ""
    f: tuple = ()
    module: str = "Z"
    res_radius: int = settings.DEFAULT_RES_RADIUS
    radius: int = settings.DEFAULT_RADIUS
    seed: int = settings.DEFAULT_SEED
    params: dict = field(default_factory=dict)
    expected: dict = field(default_factory=dict)
    anchor: str = ""

    def validate(self):
        if not self.name:
            raise ConfigurationError("Scenario without a name")
        if self.kind not in KINDS:
            raise ConfigurationError(f"Scenario {self.name}: unknown kind {self.kind!r}")
        if self.res_radius < 1 or self.radius < 1:
            raise ConfigurationError(f"Scenario {self.name}: radii must be at least 1")
        if self.f:
            parse_character(self.group, self.f)
        return self

    def with_overrides(self, seed=None, radius=None, res_radius=None):
        changes = {}
        if seed is not None:
            changes["seed"] = seed
        if radius is not None:
            changes["radius"] = radius
        if res_radius is not None:
            changes["res_radius"] = res_radius
        return dataclasses.replace(self, **changes) if changes else self

    def param(self, key, default=None, cast=str):
        if key not in self.params:
            return default
        try:
            return cast(self.params[key])
        except ValueError as exc:
            raise ConfigurationError(f"Scenario {self.name}: bad value for {key!r}") from exc

    def groups(self):
        """The ``groups`` parameter (whitespace separated), or the scenario group."""
        text = self.params.get("groups")
        if not text:
            return [self.group]
        return [parse_group(token) for token in str(text).split()]

    def character(self):
        values = self.f or (1,) * self.group.rank
        return parse_character(self.group, values)


class Builtin(NamedTuple):
    name: str
    kind: str
    description: str
    anchor: str
    defaults: dict
    expected: Callable[[dict], dict]


def _no_expected(params):
    return {}


def _point_expected(params):
    out = {f"slant_H0[{g}]": "1" for g in params["groups"].split()}
    out["slant_H0"] = "1"
    return out


def _recovery_expected(params):
    m = int(params["m"])
    return {f"pairing[{_power('t', j)}]": str(m * j) for j in range(-3, 4)}


def _power(name, j):
    if j == 0:
        return "e"
    return name if j == 1 else f"{name}^{j}"


def _torus_expected(params):
    out = {"fundamental": "1"}
    if int(params["n"]) == 2:
        out["duality"] = "[[0, 1], [-1, 0]]"
    return out


def _coinvariants_expected(params):
    ranks = {"Z^1": 1, "Z^2": 2, "F_2": 2}
    return {f"rank[{g},I]": str(ranks[g]) for g in params["groups"].split() if g in ranks}


BUILTINS = {
    b.name: b
    for b in (
        Builtin(
            "zero_dim_point",
            "point",
            "PointAlpha: the slant of the point is the unit class in H^0",
            "slant(point) = 1 in H^0(Γ; Z)",
            {"group": "Z^1", "groups": "Z^1 Z^2 F_2"},
            _point_expected,
        ),
        Builtin(
            "one_dim_f_recovery",
            "cocycle_line",
            "CocycleAlpha on Z with f = m·id recovers f on [e, t^j]",
            "slant(Σ vertices)([e, γ]) = f(γ)",
            {"group": "Z^1", "m": "2"},
            _recovery_expected,
        ),
        Builtin(
            "torus_pd",
            "torus",
            "TranslationAlpha on Z^n: fundamental cycle and coordinate-cycle duality",
            "derived: scripts/derive_expected.py#torus_pd",
            {"n": "1"},
            _torus_expected,
        ),
        Builtin(
            "bs_class_from_connecting",
            "bs_class",
            "Connecting image of 1 equals the Berstein–Schwarz cocycle (bar and cellular)",
            "β_Γ = δ(1)",
            {"group": "Z^1", "groups": "Z^1 Z^2 F_2"},
            _no_expected,
        ),
        Builtin(
            "corollary_one",
            "corollary_one",
            "Slant of the connecting image of the fundamental cycle against δ̄(1)",
            "slant(∂̄z) = δ̄(slant z) = β",
            {"group": "Z^1"},
            _no_expected,
        ),
        Builtin(
            "naturality_square",
            "naturality",
            "ℓ = 2 connecting step on Z^2 against δ̄ of the I-valued slant, 20 random cycles",
            "slant(∂̄z) = ±δ̄(slant z) for ℓ = 2",
            {"group": "Z^2", "samples": "20"},
            _no_expected,
        ),
        Builtin(
            "product_theorem_cochain",
            "product",
            "Slant of z1 ⊗ z2 equals the cup product of the slants, generator by generator",
            "slant(z1 ⊗ z2) = slant(z1) ∪ slant(z2)",
            {"group": "Z^2"},
            _no_expected,
        ),
        Builtin(
            "large_n_invariance",
            "large_n",
            "Slant values unchanged after crossing with R once and twice",
            "slant(z × R) = slant(z)",
            {"group": "Z^1", "family": "cocycle", "f": "2"},
            _no_expected,
        ),
        Builtin(
            "coinvariants_h1",
            "coinvariants",
            "Ranks of the truncated coinvariants of I, stable from R to R+1",
            "derived: scripts/derive_expected.py#coinvariants_h1",
            {"group": "Z^1", "groups": "Z^1 Z^2 F_2", "module": "I"},
            _coinvariants_expected,
        ),
        Builtin(
            "beta_powers_nonvanishing",
            "beta_powers",
            "β and β^2 on Z^2 pushed along solved φ pair to ±1 with the fundamental cycles",
            "⟨φ*(β^k), [T^k]⟩ = ±1",
            {"group": "Z^2", "powers": "1 2"},
            _no_expected,
        ),
    )
}


def list_scenarios():
    """(name, description, anchor) for every builtin, in registry order."""
    return [(b.name, b.description, b.anchor) for b in BUILTINS.values()]


def parse_builtin_call(text):
    """``name`` or ``name(k=v, ...)`` → (name, params)."""
    match = _BUILTIN_CALL.match(text)
    if not match:
        raise ConfigurationError(f"Cannot parse builtin {text!r}")
    name, inner = match.group(1), match.group(2)
    params = {}
    for item in (inner or "").split(","):
        if not item.strip():
            continue
        if "=" not in item:
            raise ConfigurationError(f"Builtin argument {item.strip()!r} is not key=value")
        key, value = item.split("=", 1)
        params[key.strip()] = value.strip()
    return name, params


def _from_mapping(values, expected, anchor=""):
    values = dict(values)
    try:
        name = values["name"]
        kind = values["kind"]
    except KeyError as exc:
        raise ConfigurationError(f"Scenario entry misses the key {exc.args[0]!r}") from exc
    family = values.get("family", "")
    default_group = "Z^2" if kind in ("naturality", "product", "beta_powers") else "Z^1"
    if kind == "torus":
        default_group = f"Z^{values.get('n', 1)}"
    group = parse_group(values.get("group", default_group))
    f = values.get("f", "")
    f_values = tuple(int(v) for v in re.split(r"[\s,]+", f.strip()) if v) if f else ()
    if kind == "cocycle_line" and not f_values and "m" in values:
        f_values = (int(values["m"]),) * group.rank
    try:
        scenario = Scenario(
            name=name,
            kind=kind,
            group=group,
            family=family,
            f=f_values,
            module=values.get("module", "Z"),
            res_radius=int(values.get("res_radius", settings.DEFAULT_RES_RADIUS)),
            radius=int(values.get("radius", settings.DEFAULT_RADIUS)),
            seed=int(values.get("seed", settings.DEFAULT_SEED)),
            params={k: v for k, v in values.items() if k not in _RESERVED},
            expected=dict(expected),
            anchor=anchor,
        )
    except ValueError as exc:
        raise ConfigurationError(f"Scenario {name}: {exc}") from exc
    return scenario.validate()


def builtin_scenario(text):
    """Instantiate a builtin from ``name`` or ``name(k=v, ...)``."""
    name, params = parse_builtin_call(text)
    if name not in BUILTINS:
        raise ConfigurationError(f"Unknown builtin {name!r}; see `list`")
    builtin = BUILTINS[name]
    values = dict(builtin.defaults)
    values.update(params)
    if builtin.kind == "torus" and "group" not in params:
        values["group"] = f"Z^{values['n']}"
    expected = builtin.expected(values)
    label = name if not params else f"{name}(" + ",".join(f"{k}={v}" for k, v in sorted(params.items())) + ")"
    return _from_mapping({**values, "name": label, "kind": builtin.kind}, expected, builtin.anchor)


def builtin_names(names):
    """Expand ``all`` to every builtin."""
    out = []
    for name in names:
        out.extend(BUILTINS if name == "all" else [name])
    return out


def _parser():
    parser = configparser.ConfigParser(delimiters=("=",), interpolation=None)
    parser.optionxform = str
    return parser


def parse_scenarios(text, source="<string>"):
    parser = _parser()
    try:
        parser.read_string(text, source=source)
    except configparser.Error as exc:
        raise ConfigurationError(f"Cannot read {source}: {exc}") from exc
    scenarios = []
    for section in parser.sections():
        head, _, suffix = section.partition(":")
        if head.strip() != "scenario":
            if head.strip() != "expected":
                raise ConfigurationError(f"Unknown section [{section}] in {source}")
            continue
        values = dict(parser[section])
        values.setdefault("name", suffix.strip())
        expected_section = f"expected:{suffix.strip()}" if suffix else "expected"
        expected = dict(parser[expected_section]) if parser.has_section(expected_section) else {}
        scenarios.append(_from_mapping(values, expected))
    if not scenarios:
        raise ConfigurationError(f"No [scenario] section in {source}")
    logger.debug("Loaded %d scenarios from %s", len(scenarios), source)
    return scenarios


def load_scenarios(path):
    try:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise ConfigurationError(f"Cannot open scenario file {path}: {exc}") from exc
    return parse_scenarios(text, source=str(path))