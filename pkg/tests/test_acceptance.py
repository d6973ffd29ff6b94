"""Acceptance criteria, one test per criterion.

Each test prints a single ``[criterion N] PASS|FAIL ...`` line.  Criterion
2(b) is known to fail (see the project notes) and is marked as a strict
expected failure so that the rest of the suite stays usable.
"""
from __future__ import annotations

import bisect
import itertools
import random
import time
from fractions import Fraction

import pytest

from stickkit.core import Infeasible, Instance, Representation, components, intersection_edges, verify_representation
from stickkit.fixed_length import (
    NegativeCycle,
    build_dense_system,
    build_system,
    solve_fixed_with_order,
    solve_system,
)
from stickkit.gadgets import (
    VARIANTS,
    GadgetParams,
    MonotoneCnf,
    ThreePartitionInstance,
    blue_placeable,
    clause_gadget,
    gen_3partition,
    gen_3partition_three_lengths,
    gen_epsilon_path,
    gen_monotone3sat,
    layout_compressed,
    layout_stretched,
)
from stickkit.oracle import OrderEnumerator, min_extent_fixed, oracle_fixed, oracle_stick_a, oracle_stick_ab, realizable_sigma_b
from stickkit.stick_a import StickASweep, solve_stick_a
from stickkit.sweep_ab import solve_stick_ab

pytestmark = pytest.mark.slow


@pytest.fixture
def report(capsys):
    def emit(label: str, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\n[criterion {label}] {'PASS' if ok else 'FAIL'} {detail}")

    return emit


# 1 -------------------------------------------------------------------------


def test_criterion_1_stick_ab_exhaustive(report):
    start = time.perf_counter()
    a, b = ["a1", "a2", "a3"], ["b1", "b2", "b3"]
    pairs = list(itertools.product(a, b))
    checked = mismatches = 0
    for mask in range(1 << 9):
        edges = [p for k, p in enumerate(pairs) if mask >> k & 1]
        for sa in itertools.permutations(a):
            for sb in itertools.permutations(b):
                inst = Instance(a, b, edges, sigma_a=sa, sigma_b=sb)
                try:
                    rep = solve_stick_ab(inst)
                    mine = verify_representation(inst, rep).is_empty
                except Infeasible:
                    mine = False
                checked += 1
                mismatches += mine != oracle_stick_ab(inst)[0]
    elapsed = time.perf_counter() - start
    ok = mismatches == 0 and checked == 512 * 36 and elapsed < 60
    report("1", ok, f"{checked} instances, {mismatches} verdict mismatches, {elapsed:.1f}s (target < 60s)")
    assert mismatches == 0 and checked == 512 * 36
    assert elapsed < 60


# 2 -------------------------------------------------------------------------


def _connected_cases(n_a: int, n_b: int):
    """Connected graphs with sigma_A = (a1, .., a_nA).

    Every pair (graph, sigma_A) is a relabelling of A in some pair with the
    identity order, so fixing sigma_A loses nothing.  Horizontal sticks are
    interchangeable as well: a graph is given by the multiset of its
    B-columns (each a nonempty subset of A).
    """
    a = [f"a{i}" for i in range(1, n_a + 1)]
    b = [f"b{j}" for j in range(1, n_b + 1)]
    for cols in itertools.combinations_with_replacement(range(1, 1 << n_a), n_b):
        edges = [(a[i], b[j]) for j, m in enumerate(cols) for i in range(n_a) if m >> i & 1]
        inst = Instance(a, b, edges, sigma_a=a)
        if len(components(inst)) == 1:
            yield inst


@pytest.fixture(scope="module")
def stick_a_census():
    start = time.perf_counter()
    stats = dict(total=0, verdict=0, equal=0, subset=0, closed_subset=0)
    examples = []
    for n_a in range(1, 5):
        for n_b in range(1, 5):
            for inst in _connected_cases(n_a, n_b):
                literal = realizable_sigma_b(inst)
                closed = realizable_sigma_b(inst, closed=True)
                ok = oracle_stick_a(inst)[0]
                try:
                    forest = StickASweep(inst).run().forest.forest_expressed()
                    solve_stick_a(inst)
                    mine = True
                except Infeasible:
                    forest, mine = set(), False
                stats["total"] += 1
                stats["verdict"] += mine == ok
                stats["equal"] += forest == literal
                stats["subset"] += forest <= literal
                stats["closed_subset"] += closed <= forest
                if forest != literal and len(examples) < 3:
                    examples.append(sorted(inst.edges))
    stats["elapsed"] = time.perf_counter() - start
    stats["examples"] = examples
    return stats


def test_criterion_2a_stick_a_verdicts(stick_a_census, report):
    s = stick_a_census
    ok = s["verdict"] == s["total"] and s["elapsed"] < 600
    report("2a", ok, f"{s['verdict']}/{s['total']} verdicts agree with the oracle, {s['elapsed']:.0f}s (target < 600s)")
    assert s["verdict"] == s["total"]
    assert s["elapsed"] < 600


@pytest.mark.xfail(
    strict=True,
    reason="the forest never holds an unrealizable order of B but can miss realizable ones, "
    "mostly ones where a finished horizontal stick could not reach further right",
)
def test_criterion_2b_forest_equals_realizable_orders(stick_a_census, report):
    s = stick_a_census
    ok = s["equal"] == s["total"]
    report(
        "2b",
        ok,
        f"forest == realizable sigma_B on {s['equal']}/{s['total']} graphs "
        f"(forest subset of it on {s['subset']}, closed orders within forest on {s['closed_subset']})",
    )
    assert s["subset"] == s["total"]
    assert s["equal"] == s["total"], f"first counterexamples: {s['examples']}"


# 3 -------------------------------------------------------------------------


def _drawing(rng: random.Random, n: int):
    names = [f"v{k}" for k in range(n)]
    a = [v for v in names if rng.random() < 0.5]
    if not a or len(a) == n:
        a = names[: n // 2 or 1]
    b = [v for v in names if v not in a]
    feet = rng.sample(range(6 * n), n)
    rep = Representation({v: p for v, p in zip(names, feet)}, {v: rng.randint(1, 10) for v in names})
    edges = intersection_edges(Instance(a, b, []), rep)
    return Instance(a, b, edges, lengths=rep.length), rep.ground_order()


def test_criterion_3_sparse_system(report):
    rng = random.Random(3)
    over = disagree = feasible = 0
    for k in range(1000):
        n = rng.randint(2, 50)
        inst, order = _drawing(rng, n)
        if k % 2:
            # disturb the drawn order so that both verdicts occur
            for _ in range(rng.randint(1, 3)):
                i = rng.randrange(n - 1)
                order[i], order[i + 1] = order[i + 1], order[i]
        sparse = build_system(inst, order)
        over += len(sparse) > 3 * n - 1
        s_ok = not isinstance(solve_system(sparse), NegativeCycle)
        d_ok = not isinstance(solve_system(build_dense_system(inst, order)), NegativeCycle)
        disagree += s_ok != d_ok
        feasible += s_ok
    ok = over == 0 and disagree == 0
    report("3", ok, f"1000 instances ({feasible} feasible): {over} above 3n-1 constraints, {disagree} verdict mismatches")
    assert over == 0 and disagree == 0
    assert 0 < feasible < 1000


# 4 -------------------------------------------------------------------------


def test_criterion_4_fixed_oracle(report):
    rng = random.Random(4)
    disagree = feasible = 0
    for _ in range(500):
        n = rng.randint(2, 7)
        n_a = rng.randint(1, n - 1)
        a = [f"a{i}" for i in range(1, n_a + 1)]
        b = [f"b{j}" for j in range(1, n - n_a + 1)]
        p = rng.choice([0.3, 0.5, 0.7, 0.9])
        edges = [(x, y) for x in a for y in b if rng.random() < p]
        inst = Instance(a, b, edges, lengths={v: rng.choice([1, 2, 3]) for v in a + b})
        by_oracle = oracle_fixed(inst, max_size=7)[0]
        by_orders = False
        for order in OrderEnumerator(inst):
            try:
                solve_fixed_with_order(inst, order)
            except Infeasible:
                continue
            by_orders = True
            break
        disagree += by_oracle != by_orders
        feasible += by_oracle
    report("4", disagree == 0, f"500 instances ({feasible} feasible, {500 - feasible} infeasible), {disagree} mismatches")
    assert disagree == 0


# 5 -------------------------------------------------------------------------


@pytest.mark.parametrize("n", [3, 4])
def test_criterion_5_epsilon_path_extents(n, report):
    eps = Fraction(1, 16)
    params = GadgetParams(eps, eps / 10)
    inst = gen_epsilon_path(n, params)
    stretched = layout_stretched(inst, params)
    compressed = layout_compressed(inst, params)
    valid = verify_representation(inst, stretched).is_empty and verify_representation(inst, compressed).is_empty
    s_ext = stretched.extent(inst)
    c_ext = compressed.extent(inst)
    want_c = Fraction(n + 2, 3) * eps + params.delta
    # every extent is at least the width, so a width bound is an extent bound
    width, _ = min_extent_fixed(inst)
    ok = valid and s_ext == (n * eps, n * eps) and c_ext == (want_c, want_c) and width > Fraction(n, 3) * eps
    report(
        f"5 (n={n})",
        ok,
        f"stretched {s_ext[0] / eps}eps, compressed {c_ext[0] / eps}eps (want {want_c / eps}eps), "
        f"minimum width {width.standard / eps}eps{'+' if width.infinitesimal > 0 else ''} > {Fraction(n, 3)}eps",
    )
    assert valid
    assert s_ext == (n * eps, n * eps)
    assert c_ext == (want_c, want_c)
    assert width > Fraction(n, 3) * eps


# 6 -------------------------------------------------------------------------


def test_criterion_6_gadget_witnesses(report):
    fives = ThreePartitionInstance((5,) * 6)
    outcomes = {}
    g = gen_3partition(fives, partition=[(5, 5, 5), (5, 5, 5)])
    outcomes["3-partition"] = verify_representation(g.instance, g.witness).is_empty
    g3 = gen_3partition_three_lengths(fives, GadgetParams(Fraction(1, 4)), partition=[(5, 5, 5), (5, 5, 5)])
    outcomes["three lengths"] = (
        verify_representation(g3.instance, g3.witness).is_empty and len(set(g3.instance.lengths.values())) == 3
    )
    phi = MonotoneCnf(3, [(1, 2, 3)])
    for variant in VARIANTS:
        gm = gen_monotone3sat(phi, variant=variant, assignment=[True, True, True])
        outcomes[variant] = verify_representation(gm.instance, gm.witness).is_empty
    ok = all(outcomes.values())
    report("6", ok, ", ".join(f"{k}: {'ok' if v else 'bad'}" for k, v in outcomes.items()))
    assert ok


# 7 -------------------------------------------------------------------------


def test_criterion_7_clause_truth_table(report):
    lines = []
    ok = True
    for polarity in ("positive", "negative"):
        phi = clause_gadget(polarity)
        fits = {bits: blue_placeable(phi, bits) for bits in itertools.product([True, False], repeat=3)}
        satisfied = {bits for bits in fits if phi.satisfied_by(bits)}
        good = {bits for bits, f in fits.items() if f} == satisfied and len(satisfied) == 7
        ok &= good
        lines.append(f"{polarity}: fits for {sum(fits.values())}/8, exactly the satisfying ones: {good}")
    report("7", ok, "; ".join(lines))
    assert ok


# 8 -------------------------------------------------------------------------


def _positive_instance(rng: random.Random, side: int) -> Instance:
    """Integer feet on a shuffled line, lengths up to side/2; the graph is
    whatever the drawing shows, so the instance is always positive."""
    names = [f"a{i}" for i in range(side)] + [f"b{j}" for j in range(side)]
    rng.shuffle(names)
    foot = {v: k for k, v in enumerate(names)}
    length = {v: rng.randint(1, side // 2) for v in names}
    a = [v for v in names if v[0] == "a"]
    b = [v for v in names if v[0] == "b"]
    b_feet = [foot[v] for v in b]
    edges = []
    for x in a:
        lo = bisect.bisect_left(b_feet, foot[x] - length[x])
        hi = bisect.bisect_right(b_feet, foot[x])
        edges += [(x, b[k]) for k in range(lo, hi) if foot[x] - b_feet[k] <= length[b[k]]]
    return Instance(a, b, edges, sigma_a=a, sigma_b=b)


def test_criterion_8_work_counters(report):
    # sides chosen so that |E| lands near 10^3, 10^4, 10^5 at fixed density
    sizes = {1000: 112, 10000: 354, 100000: 1118}
    rows = []
    for target, side in sizes.items():
        ab, a_only, edges = [], [], []
        for seed in range(3):
            inst = _positive_instance(random.Random(seed), side)
            _, work_ab = solve_stick_ab(inst, with_work=True)
            _, work_a = solve_stick_a(inst.replace(sigma_b=None), with_work=True)
            ab.append(work_ab / (inst.n + len(inst.edges)))
            a_only.append(work_a / (side * side))
            edges.append(len(inst.edges))
        rows.append((target, sum(edges) / 3, sum(ab) / 3, sum(a_only) / 3))
    spread_ab = max(r[2] for r in rows) / min(r[2] for r in rows)
    spread_a = max(r[3] for r in rows) / min(r[3] for r in rows)
    ok = spread_ab <= 1.3 and spread_a <= 1.3
    detail = "; ".join(f"|E|~{e:.0f}: ab {x:.2f}/(n+E), a {y:.2f}/(|A||B|)" for _, e, x, y in rows)
    report("8", ok, f"spread ab {spread_ab:.3f}, a {spread_a:.3f} (limit 1.3) [{detail}]")
    assert spread_ab <= 1.3
    assert spread_a <= 1.3
