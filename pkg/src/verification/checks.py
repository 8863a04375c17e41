"""
Check routines, one per scenario kind. Each takes (scenario, stream, report)
and records its checks on the report; generic points are drawn from the
stream, so a GenericityViolation anywhere restarts the whole routine.
"""
from __future__ import annotations

import itertools
import logging
import random
from fractions import Fraction

from chain_complexes import BarResolution, InvariantChain, ResolutionChain, cellular_resolution
from coefficients import (
    EquivariantCochain,
    ModuleMap,
    augmentation_power_sequence,
    augmentation_sequence,
    berstein_schwarz,
    character_cochain,
    coinvariants_rank,
    connecting_cohomology,
    connecting_homology,
    constant_cochain,
    cup_power,
    cup_product,
    pair_cochain_cycle,
    pushforward,
    solve_with_retry,
)
from errors import ConfigurationError, ScopeError
from group_core import Character, CoefficientModule, TensorElement
from lipschitz_slant import (
    CocycleAlpha,
    LineChain,
    PointAlpha,
    ProductChain,
    SlantContext,
    TranslationAlpha,
    alpha_cap,
    class_pairings,
    contributing_cosets,
    product_context,
    product_with_line,
    slant,
    slant_table,
    slant_value,
)

logger = logging.getLogger(__name__)


def _family(scenario, default):
    name = scenario.family or default
    if name == "point":
        return PointAlpha(scenario.group)
    if name == "translation":
        return TranslationAlpha(scenario.group)
    if name == "cocycle":
        return CocycleAlpha(scenario.character())
    raise ConfigurationError(f"Scenario {scenario.name}: unknown family {name!r}")


def _base_cycle(family):
    if isinstance(family, PointAlpha):
        return family.point_cycle()
    if isinstance(family, CocycleAlpha):
        return family.vertex_cycle()
    return family.fundamental_cycle()


def _sample_points(family):
    width = len(family.complex.translation)
    grid = [Fraction(-3, 2), Fraction(0), Fraction(1, 3), Fraction(5, 2)]
    return list(itertools.product(grid, repeat=width))


def _record_conditions(report, family):
    conditions = family.check_conditions(family.spec.ball(1), _sample_points(family))
    report.record("conditions", all(conditions.values()), value=all(conditions.values()), **conditions)


def _record_equivariance(report, ctx, z, cochain, generators):
    """(φ̄/z)(gΔ) computed directly against g·(φ̄/z)(Δ)."""
    ok = True
    for g in ctx.spec.ball(1):
        for generator in generators:
            moved = tuple(g * x for x in ctx.argument(generator))
            if slant_value(ctx, z, moved) != cochain.value(generator).act(g):
                ok = False
    report.record("equivariance", ok, value=ok, generators=len(generators))


def _global_sign(left, right):
    """s ∈ {±1} with left = s·right on every key, or None."""
    sign = None
    for key, value in right.items():
        if value:
            sign = 1 if left.get(key) == value else -1
            break
    if sign is None:
        return None
    return sign if all(left.get(key) == sign * value for key, value in right.items()) else None


def _character_maps(spec, orders):
    maps = {}
    for order in orders:
        characters = [Character.coordinate(spec, i) for i in order]
        name = "⊗".join(f"χ{i + 1}" for i in order)
        maps[name] = ModuleMap.characters_product(characters)
    return maps


def check_point(scenario, stream, report):
    values = []
    for spec in scenario.groups():
        family = PointAlpha(spec)
        ctx = SlantContext.build(family, stream, scenario.res_radius)
        cochain = slant(ctx, family.point_cycle())
        value = pair_cochain_cycle(cochain, ctx.resolution.test_cycles(0)[0]).as_int()
        report.record(f"slant_H0[{spec}]", value == 1, value=value)
        cocycle = cochain.is_cocycle_on(BarResolution(spec, 1).generators(1))
        report.record(f"cocycle[{spec}]", cocycle, value=cocycle)
        values.append(value)
    uniform = len(set(values)) == 1
    report.record("slant_H0", uniform and values[0] == 1, value=values[0] if uniform else values)


def check_cocycle_line(scenario, stream, report):
    spec = scenario.group
    family = CocycleAlpha(scenario.character())
    chi = family.character
    ctx = SlantContext.build(family, stream, scenario.res_radius)
    z = family.vertex_cycle()
    cochain = slant(ctx, z)
    if spec.rank == 1:
        elements = [spec.generator(0) ** j for j in range(-3, 4)]
    else:
        elements = list(spec.ball(scenario.radius))
    orbits = range(len(family.complex.cells(0)))
    all_ok = True
    for g in elements:
        value = cochain.value((g,)).as_int()
        simplex = ctx.argument((g,))
        count = sum(len(contributing_cosets(ctx, simplex, orbit, 0)) for orbit in orbits)
        passed = value == chi(g) and count == abs(chi(g))
        all_ok = all_ok and passed
        report.record(f"pairing[{g}]", passed, value=value, cosets=count)
    report.record("pairing", all_ok, value=all_ok, elements=len(elements))
    cocycle = cochain.is_cocycle_on(BarResolution(spec, 1).generators(2))
    report.record("cocycle", cocycle, value=cocycle)
    _record_equivariance(report, ctx, z, cochain, [(s,) for s in spec.generators_with_inverses()])
    _record_conditions(report, family)


def check_torus(scenario, stream, report):
    spec = scenario.group
    family = TranslationAlpha(spec)
    ctx = SlantContext.build(family, stream, scenario.res_radius)
    z = family.fundamental_cycle()
    cap = alpha_cap(ctx, z)
    value = cap.pairings["[e]"]
    report.record("fundamental", value == 1, value=value)
    cocycle = cap.cochain.is_cocycle_on(BarResolution(spec, 1).generators(1))
    report.record("cocycle", cocycle, value=cocycle)

    second = SlantContext.build(family, stream, scenario.res_radius)
    agree = slant(second, z).value(()) == cap.cochain.value(())
    if spec.rank == 2:
        filler = InvariantChain(family.complex, 2, CoefficientModule.integers(), {"1|2": 1})
        cycles = ctx.resolution.test_cycles(1)
        labels = [w.label for w in cycles]
        matrix = []
        for i in range(2):
            zi = family.coordinate_cycle(i)
            cap_i = alpha_cap(ctx, zi, boundary_of=filler)
            matrix.append([cap_i.pairings[label] for label in labels])
            independent = cap_i.representative_independent
            report.record(
                f"representative[z{i + 1}]",
                independent,
                value=independent,
                generators=cap_i.witness_checked,
            )
            other = slant(second, zi)
            agree = agree and all(
                other.value(g) == cap_i.cochain.value(g) for g in BarResolution(spec, 1).generators(1)
            )
        duality = all(matrix[i][i] == 0 and abs(matrix[i][1 - i]) == 1 for i in range(2))
        report.record("duality", duality, value=matrix, cycles=labels)
        _record_equivariance(report, ctx, family.coordinate_cycle(0), slant(ctx, family.coordinate_cycle(0)),
                             [(s,) for s in spec.generators()])
    report.record("second_point", agree, value=agree)
    _record_conditions(report, family)


def check_bs_class(scenario, stream, report):
    for spec in scenario.groups():
        resolutions = (("bar", BarResolution(spec, scenario.res_radius)), ("cellular", cellular_resolution(spec)))
        for label, resolution in resolutions:
            sequence = augmentation_sequence(spec)
            one = constant_cochain(resolution, 1)
            image = connecting_cohomology(one, sequence)
            beta = berstein_schwarz(resolution)
            if isinstance(resolution, BarResolution):
                generators = BarResolution(spec, scenario.radius).generators(1)
            else:
                generators = resolution.generators(1)
            equal = all(image.value(g) == beta.value(g) for g in generators)
            in_kernel = all(beta.value(g).augmentation_free() for g in generators)
            report.record(
                f"beta[{spec},{label}]", equal and in_kernel, value=equal and in_kernel, generators=len(generators)
            )
            anchor = spec.generator(0)
            moved = connecting_cohomology(one, sequence.with_anchor(anchor))
            shift = TensorElement.basis(anchor) - TensorElement.basis(spec.identity())
            difference = EquivariantCochain(
                resolution,
                0,
                CoefficientModule.augmentation_power(1),
                values={g: shift for g in resolution.generators(0)},
            ).coboundary()
            cohomologous = all(moved.value(g) - image.value(g) == difference.value(g) for g in generators)
            report.record(f"section_change[{spec},{label}]", cohomologous, value=cohomologous)


def check_corollary_one(scenario, stream, report):
    spec = scenario.group
    family = TranslationAlpha(spec)
    ctx = SlantContext.build(family, stream, scenario.res_radius)
    sequence = augmentation_sequence(spec)
    z = family.fundamental_cycle()
    boundary = connecting_homology(z, sequence)
    right = connecting_cohomology(slant(ctx, z), sequence)
    beta = berstein_schwarz(ctx.resolution)
    generators = BarResolution(spec, scenario.radius).generators(1)
    identity = all(right.value(g) == beta.value(g) for g in generators)
    report.record("beta_identity", identity, value=identity, generators=len(generators))

    maps = _character_maps(spec, [(i,) for i in range(spec.rank)])
    cap = alpha_cap(ctx, boundary, maps=maps)
    right_pairings = class_pairings(right, ctx.resolution.test_cycles(1), maps)
    sign = _global_sign(cap.pairings, right_pairings)
    report.record("naturality_sign", sign is not None, value=sign, left=cap.pairings, right=right_pairings)
    cocycle = cap.cochain.is_cocycle_on(BarResolution(spec, 1).generators(2))
    report.record("cocycle", cocycle, value=cocycle)


def _random_cycles(bar, base, count, seed):
    """m·base + ∂c for random 3-chains c with vertices in ball(1)."""
    rng = random.Random(seed)
    ball = bar.spec.ball(1)
    cycles = []
    for index in range(count):
        terms = {}
        for _ in range(3):
            key = tuple(rng.choice(ball) for _ in range(3))
            terms[key] = terms.get(key, 0) + rng.choice([-2, -1, 1, 2])
        filler = ResolutionChain(bar, 3, terms)
        m = rng.choice([1, 2, 3]) * rng.choice([1, -1])
        cycle = m * base + filler.boundary()
        cycle.label = f"w{index}"
        cycles.append(cycle)
    return cycles


def check_naturality(scenario, stream, report):
    spec = scenario.group
    if not spec.is_abelian or spec.rank < 2:
        raise ScopeError("The ℓ = 2 naturality step runs on Z^d with d >= 2")
    family = TranslationAlpha(spec)
    ctx = SlantContext.build(family, stream, scenario.res_radius)
    first = augmentation_sequence(spec)
    second = augmentation_power_sequence(spec, 2)
    z = family.fundamental_cycle()
    boundary = connecting_homology(z, first)
    twice = connecting_homology(boundary, second)
    left = slant(ctx, twice)
    right = connecting_cohomology(slant(ctx, boundary), second)

    maps = _character_maps(spec, [(0, 1), (1, 0)])
    count = scenario.param("samples", 20, int)
    cycles = _random_cycles(ctx.resolution, ctx.resolution.test_cycles(2)[0], count, scenario.seed)
    left_pairings = class_pairings(left, cycles, maps)
    right_pairings = class_pairings(right, cycles, maps)
    sign = _global_sign(left_pairings, right_pairings)
    nonzero = sum(1 for v in right_pairings.values() if v)
    report.record("naturality_sign", sign is not None, value=sign, inputs=len(cycles), nonzero=nonzero)
    report.record("cycles_are_cycles", all(w.is_cycle() for w in cycles), value=len(cycles))


def check_product(scenario, stream, report):
    spec = scenario.group
    if spec.rank < 2 or not spec.is_abelian:
        raise ScopeError("The product scenario uses two coordinate characters of Z^d, d >= 2")
    first = CocycleAlpha(Character.coordinate(spec, 0))
    second = CocycleAlpha(Character.coordinate(spec, 1))
    ctx1 = SlantContext.build(first, stream, scenario.res_radius)
    ctx2 = SlantContext.build(second, stream, scenario.res_radius)
    z1, z2 = first.vertex_cycle(), second.vertex_cycle()
    s1, s2 = slant(ctx1, z1), slant(ctx2, z2)

    product = product_context(ctx1, ctx2, radius=1)
    slanted = slant(product, ProductChain(z1, z2))
    cup = cup_product(s1, s2, tensor=product.resolution)
    ball = spec.ball(scenario.radius)
    translates = spec.ball(1)
    generators = [(1, (g,), h, (d,)) for g in ball for h in translates for d in ball]
    table = slant_table(slanted, generators, workers=scenario.param("workers", 1, int))
    mismatches = sum(1 for g in generators if table[g] != cup.value(g))
    report.record("cochain_equality", mismatches == 0, value=mismatches == 0,
                  generators=len(generators), mismatches=mismatches)
    nonzero = sum(1 for g in generators if not table[g].is_zero)
    report.record("nonzero_values", nonzero > 0, value=nonzero)

    # |σ1| = 1 and |Δ2| = 1: the product slant is (−1)^(|σ1|·k2) times the cup product.
    edge = first.edge_cycle()
    e1 = slant(ctx1, edge)
    crossed = slant(product, ProductChain(edge, z2))
    crossed_cup = cup_product(e1, s2, tensor=product.resolution)
    sign = (-1) ** (edge.degree * s2.degree)
    crossed_generators = [(0, (), h, (d,)) for h in translates for d in ball]
    crossed_mismatches = sum(
        1 for g in crossed_generators if crossed.value(g) != crossed_cup.value(g) * sign
    )
    crossed_nonzero = sum(1 for g in crossed_generators if not crossed.value(g).is_zero)
    report.record("graded_equality", crossed_mismatches == 0 and crossed_nonzero > 0,
                  value=crossed_mismatches == 0, sign=sign, nonzero=crossed_nonzero,
                  mismatches=crossed_mismatches)

    point = PointAlpha(spec)
    pctx = SlantContext.build(point, stream, scenario.res_radius)
    unit = product_context(ctx1, pctx, radius=1)
    with_unit = slant(unit, ProductChain(z1, point.point_cycle()))
    unit_ok = all(
        with_unit.value((1, (g,), h, ())) == s1.value((g,)) for g in ball for h in translates
    )
    report.record("unit_right", unit_ok, value=unit_ok)
    points = product_context(pctx, pctx, radius=1)
    one = slant(points, ProductChain(point.point_cycle(), point.point_cycle()))
    point_ok = all(one.value((0, (), h, ())).as_int() == 1 for h in translates)
    report.record("unit_point", point_ok, value=point_ok)


def check_large_n(scenario, stream, report):
    spec = scenario.group
    family = _family(scenario, "cocycle")
    ctx = SlantContext.build(family, stream, scenario.res_radius)
    z = _base_cycle(family)
    base = slant(ctx, z)
    generators = BarResolution(spec, scenario.radius).generators(base.degree)
    once = product_with_line(ctx, stream=stream)
    twice = product_with_line(once, stream=stream)
    lifted_once = slant(once, LineChain(z))
    lifted_twice = slant(twice, LineChain(LineChain(z)))
    same_once = all(lifted_once.value(g) == base.value(g) for g in generators)
    report.record("line_once", same_once, value=same_once, generators=len(generators))
    same_twice = all(lifted_twice.value(g) == base.value(g) for g in generators)
    report.record("line_twice", same_twice, value=same_twice, generators=len(generators))
    report.record("dimension", twice.target_dimension == ctx.target_dimension + 2, value=twice.target_dimension)
    empty = InvariantChain.zero(family.complex, z.degree, z.module)
    zero = all(slant(once, LineChain(empty)).value(g).is_zero for g in generators)
    report.record("zero_chain", zero, value=zero)


def check_coinvariants(scenario, stream, report):
    module = CoefficientModule.parse(scenario.module)
    for spec in scenario.groups():
        ranks = coinvariants_rank(spec, module, scenario.radius)
        report.record(
            f"rank[{spec},{module.label}]",
            ranks.stable,
            value=ranks.rank_at_radius,
            next=ranks.rank_at_next,
            torsion=list(ranks.torsion_at_radius),
            radius=scenario.radius,
        )


def check_beta_powers(scenario, stream, report):
    spec = scenario.group
    bar = BarResolution(spec, scenario.res_radius)
    beta = berstein_schwarz(bar)
    powers = [int(k) for k in str(scenario.params.get("powers", "1 2")).split()]
    for k in powers:
        if not spec.is_abelian or k > spec.rank:
            raise ScopeError(f"β^{k} is certified against the fundamental cycles of Z^d with k <= d")
        target = character_cochain(bar, [Character.coordinate(spec, i) for i in range(k)])
        phi = solve_with_retry(spec, k, scenario.radius, target, resolution=bar)
        pushed = pushforward(phi, cup_power(beta, k))
        cycle = bar.test_cycles(k)[0]
        value = pair_cochain_cycle(pushed, cycle).as_int()
        report.record(f"beta^{k}", abs(value) == 1, value=value, radius=phi.radius, cycle=cycle.label)


CHECKS = {
    "point": check_point,
    "cocycle_line": check_cocycle_line,
    "torus": check_torus,
    "bs_class": check_bs_class,
    "corollary_one": check_corollary_one,
    "naturality": check_naturality,
    "product": check_product,
    "large_n": check_large_n,
    "coinvariants": check_coinvariants,
    "beta_powers": check_beta_powers,
}