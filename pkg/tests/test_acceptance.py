"""Acceptance criteria 1-10, one verdict line each (see the terminal summary)."""
import math
import random
import time
from functools import lru_cache

import networkx as nx
import pytest
from networkx.generators.atlas import graph_atlas_g

from acceptance_log import record
from test_recolor_core import _extension_case
from planrecolor import instances as I, oracle
from planrecolor.bounded_independence import (
    chromatic_coloring,
    frozen_family,
    independence_number,
    recolor_bounded,
)
from planrecolor.charge_audit import balanced_charges, diamond_stats, run_discharge
from planrecolor.config_finder import covered_vertices, find_reduction
from planrecolor.errors import CapExceeded, StructureNotFound
from planrecolor.recolor_core import (
    chain_bounds,
    extend_vertex,
    extension_bound,
    neighbour_recolorings,
    rename_classes,
    validate,
    validate_sequence,
)
from planrecolor.recolor_planar import (
    BUDGETS,
    LIST_FLOORS,
    degeneracy_peel,
    recolor,
    recolor_degenerate,
)

STRATEGIES = ("g1", "g2", "gcal", "no4")
PLAN_FOR = {"g1": "T1", "g2": "T2", "gcal": "T4"}
DEGREE_FLOOR = {"g1": 5, "g2": 4, "gcal": 3, "no4": 4}
C5 = {i: frozenset({(i - 1) % 5, (i + 1) % 5}) for i in range(5)}


@lru_cache(maxsize=None)
def dense(cls, seed):
    return I.dense_instance(cls, seed)


def floored(cls, seeds):
    """Dense in-class instances meeting the class's minimum-degree floor."""
    out = []
    for s in seeds:
        G = dense(cls, s)
        if G is not None and G.min_degree() >= DEGREE_FLOOR[cls] and I.in_class(G, cls):
            out.append((s, G))
    return out


# 1


def test_criterion_1_charging_identity():
    graphs = []
    for s in range(200):
        n = 4 + (s * 37) % 197
        graphs.append(I.random_planar(s, n, delete_fraction=(s % 5) / 10))
    t = time.perf_counter()
    totals = [balanced_charges(G).total for G in graphs]
    elapsed = time.perf_counter() - t
    ok = all(x == -48 for x in totals) and elapsed < 1.0
    record("1", ok, f"charging identity: {len(graphs)} graphs (n <= 200), "
           f"{sum(x == -48 for x in totals)} with total -8, {elapsed:.3f} s")
    assert ok


# 2


def test_criterion_2_extension_bound():
    rng = random.Random(2024)
    bad, tight, worst_t = 0, 0, 0
    for i in range(1000):
        case = _extension_case(rng.randrange(10**9), rng.randint(0, 5), rng.randint(0, 4),
                               rng.randint(3, 8), rng.randint(0, 150))
        star, L, sigma, a, b = case
        out = extend_vertex(star, L, 0, sigma, a, b)
        t = neighbour_recolorings(star, 0, sigma)
        bound = extension_bound(t, len(L[0]), len(star[0]))
        good = (
            validate_sequence(star, L, out, {**sigma.end, 0: b}) is None
            and out.counts[0] <= bound
            and out.restrict(set(star) - {0}).steps == sigma.steps
        )
        bad += not good
        tight += out.counts[0] == bound
        worst_t = max(worst_t, t)
    # evaluations quoted inside the budget arguments
    evals = extension_bound(3 * 13, 9, 3) == 9 and extension_bound(4 * 190, 10, 4) == 153
    ok = bad == 0 and evals
    record("2", ok, f"extension bound: 1000 streams (t up to {worst_t}), {bad} violations, "
           f"{tight} tight; ceil(39/5)+1=9 and ceil(760/5)+1=153 {'hold' if evals else 'fail'}")
    assert ok


# 3


def test_criterion_3_chain_recurrence():
    maxima = {c1: max(max(chain_bounds(c1, p)) for p in (1, 2, 3)) for c1 in (50, 122)}
    ok = maxima == {50: 242, 122: 242}
    record("3", ok, f"chain recurrence: max c_i over p <= 3 is {maxima[50]} (c1=50) and {maxima[122]} (c1=122)")
    assert ok


# 4


def _budget_instances(cls):
    out = [(f"random{s}", I.random_in_class(s, 10 + (s * 7) % 51, cls)) for s in range(50)]
    if cls != "g1":  # the dense g1 instances have more than 60 vertices
        out += [(f"dense{s}", G) for s, G in floored(cls, range(10)) if G.n <= 60]
    return out


@pytest.mark.parametrize("cls", STRATEGIES)
def test_criterion_4_budgets(cls):
    insts = _budget_instances(cls)
    failures, snf, slowest, worst = [], 0, 0.0, 0
    for i, (name, G) in enumerate(insts):
        assert I.in_class(G, cls) and G.n <= 60
        f = LIST_FLOORS[cls]
        L = I.random_lists(G, f, f + 3, i)
        a, b = I.random_coloring(G, L, i), I.random_coloring(G, L, i + 7)
        t = time.perf_counter()
        try:
            seq, cert = recolor(G, L, a, b, cls)
        except StructureNotFound:
            snf += 1
            continue
        elapsed = time.perf_counter() - t
        slowest = max(slowest, elapsed)
        worst = max(worst, seq.max_count)
        if validate_sequence(G, L, seq, b) is not None or seq.max_count > BUDGETS[cls] or elapsed >= 10:
            failures.append(name)
    ok = not failures and snf == 0 and len(insts) >= 50
    record(f"4.{cls}", ok, f"budget {cls}: {len(insts)} instances, max per-vertex {worst} <= {BUDGETS[cls]}, "
           f"{snf} StructureNotFound, {len(failures)} failures, slowest {slowest:.2f} s")
    assert ok


# 5


def _dominance(G, L, a, b, seq, budget):
    if validate_sequence(G, L, seq, b) is not None or seq.max_count > budget:
        return False
    return oracle.distance(G, L, a, b) <= len(seq)


@pytest.mark.parametrize("cls", STRATEGIES)
def test_criterion_5_oracle_dominance_planar(cls):
    checked, skipped, bad, s = 0, 0, 0, 0
    while checked < 12:
        n = 3 + s % 7
        G = I.random_in_class(1000 + s, n, cls)
        f = LIST_FLOORS[cls]
        L = I.random_lists(G, f, f + 2, s)
        a, b = I.random_coloring(G, L, s), I.random_coloring(G, L, s + 1)
        s += 1
        seq, _ = recolor(G, L, a, b, cls)
        try:
            bad += not _dominance(G, L, a, b, seq, BUDGETS[cls])
        except CapExceeded:
            skipped += 1
            continue
        checked += 1
    ok = bad == 0
    record(f"5.{cls}", ok, f"oracle dominance {cls}: {checked} instances (n <= 9), {bad} violations, "
           f"{skipped} skipped over 10^6 colorings")
    assert ok


def test_criterion_5_oracle_dominance_degenerate():
    checked, skipped, bad, s = 0, 0, 0, 0
    while checked < 12:
        G = I.random_planar(s, 4 + s % 6, delete_fraction=0.3)
        s += 1
        if degeneracy_peel(G.adjacency, 3) is None:
            continue
        L = I.random_lists(G, 8, 9, s)
        a, b = I.random_coloring(G, L, s), I.random_coloring(G, L, s + 1)
        seq, cert = recolor_degenerate(G, L, a, b, 3)
        try:
            bad += not (_dominance(G, L, a, b, seq, 4) and cert.budget == 4)
        except CapExceeded:
            skipped += 1
            continue
        checked += 1
    ok = bad == 0
    record("5.degenerate", ok, f"oracle dominance degenerate d=3, lists 8: {checked} instances, "
           f"{bad} violations, {skipped} skipped")
    assert ok


def test_criterion_5_oracle_dominance_bounded():
    rng = random.Random(5)
    graphs = [C5, frozen_family(2, 3).graph, frozen_family(2, 2).graph]
    for s in range(40):
        g = nx.gnp_random_graph(5 + s % 5, 0.6, seed=s)
        graphs.append({v: frozenset(g[v]) for v in g})
    checked, skipped, bad = 0, 0, 0
    for adj in graphs:
        p, k = independence_number(adj), max(chromatic_coloring(adj).values(), default=1)
        ell = p * k // 2 + 1
        L = {v: tuple(range(1, ell + 1)) for v in adj}
        try:
            oracle.enumerate_colorings(adj, L)
        except CapExceeded:
            skipped += 1
            continue
        for _ in range(3):
            a = I.random_coloring(adj, L, rng.randrange(10**6))
            b = I.random_coloring(adj, L, rng.randrange(10**6))
            seq = recolor_bounded(adj, p, k, ell, a, b)
            bad += not _dominance(adj, L, a, b, seq, 4)
            checked += 1
    ok = bad == 0
    record("5.bounded", ok, f"oracle dominance bounded: {checked} pairs on {len(graphs) - skipped} graphs, "
           f"{bad} violations, {skipped} graphs skipped")
    assert ok


# 6


def test_criterion_6_diamond_weight():
    checked, bad = 0, 0
    for s in range(500):
        G = I.random_planar(s, 20 + s % 60, delete_fraction=(0, 0.05, 0.1, 0.2)[s % 4])
        ds = diamond_stats(G)
        for v in G.vertices:
            d = G.degree(v)
            if d >= 7:
                checked += 1
                bad += ds.w(v) > 3 * (d - 4)
    ok = bad == 0 and checked > 0
    record("6", ok, f"w <= 3(d-4): 500 instances, {checked} vertices of degree 7+, {bad} violations")
    assert ok


# 7


def _criterion_7_instances():
    seeds = {"g1": range(3), "g2": range(10), "gcal": range(10), "no4": range(10)}
    return {cls: floored(cls, seeds[cls]) for cls in STRATEGIES}


def test_criterion_7_structure_and_discharge_literal():
    """Reduction found and no negative element left after discharging.

    The balanced charges sum to -8 and discharging only moves charge, so a
    final ledger with no negative element is impossible.  This check is kept
    literal and fails.
    """
    insts = _criterion_7_instances()
    missing, empty, audited, no_plan = 0, 0, 0, 0
    for cls, items in insts.items():
        for _, G in items:
            missing += find_reduction(G, cls) is None
            if cls not in PLAN_FOR:
                no_plan += 1
                continue
            audited += 1
            empty += not run_discharge(G, PLAN_FOR[cls]).negative_elements
    total = sum(len(v) for v in insts.values())
    ok = missing == 0 and empty == audited and no_plan == 0
    record("7", ok, f"coupling (literal): {total} floored instances, {missing} without a reduction; "
           f"empty negative_elements on {empty} of {audited} audited; {no_plan} no4 instances have no plan "
           f"(unattainable: charges always total -8)")
    assert ok


def test_criterion_7_structure_and_discharge_localized():
    insts = _criterion_7_instances()
    missing, stray, negatives, audited = 0, 0, 0, 0
    for cls, items in insts.items():
        for _, G in items:
            missing += find_reduction(G, cls) is None
            if cls not in PLAN_FOR:
                continue
            audited += 1
            cov = covered_vertices(G, cls)
            adj = G.adjacency
            for kind, i in run_discharge(G, PLAN_FOR[cls]).negative_elements:
                negatives += 1
                if kind == "vertex":
                    stray += not (i in cov or adj[i] & cov)
                else:
                    stray += not (set(G.faces[i].walk) & cov)
    ok = missing == 0 and stray == 0
    record("7b", ok, f"coupling (localized): reductions on all floored instances ({missing} missing); "
           f"{negatives} negative elements over {audited} audits, {stray} not touching a configuration")
    assert ok


# 8


def test_criterion_8_frozen_family():
    t = time.perf_counter()
    checked, skipped, bad = [], [], []
    for p in range(2, 5):
        for k in range(2, 5):
            w = frozen_family(p, k)
            L = {v: tuple(range(1, w.num_colors + 1)) for v in w.graph}
            try:
                stats = oracle.build_recoloring_graph(w.graph, L)
            except CapExceeded:
                skipped.append((p, k))
                continue
            chi = max(chromatic_coloring(w.graph).values())
            good = (
                chi <= k
                and validate(w.graph, None, w.partition) is None
                and independence_number(w.graph) <= p
                and len(set(w.coloring.values())) == p * k // 2 == w.num_colors
                and w.coloring in stats.isolated
            )
            (checked if good else bad).append((p, k))
    elapsed = time.perf_counter() - t
    ok = not bad and elapsed < 60
    record("8", ok, f"frozen family: {len(checked)} (p,k) pairs verified, {len(bad)} failed, "
           f"skipped over 10^6 colorings: {skipped}, {elapsed:.1f} s")
    assert ok


# 9


def _set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]
        yield [[first]] + part


def test_criterion_9_renaming():
    from itertools import permutations

    graphs = [g for g in graph_atlas_g() if 1 <= g.number_of_nodes() <= 6]
    pairs, bad = 0, 0
    for g in graphs:
        adj = {v: frozenset(g[v]) for v in g}
        for part in _set_partitions(sorted(adj)):
            if any(u in adj[v] for cls in part for u in cls for v in cls):
                continue
            m = len(part)
            kp = m + 1
            c_from = {v: i + 1 for i, cls in enumerate(part) for v in cls}
            L = {v: range(1, kp + 1) for v in adj}
            for colors in permutations(range(1, kp + 1), m):
                c_to = {v: colors[i] for i, cls in enumerate(part) for v in cls}
                seq = rename_classes(adj, kp, c_from, c_to)
                pairs += 1
                if seq.max_count > 2 or validate_sequence(adj, L, seq, c_to) is not None:
                    bad += 1
    ok = bad == 0
    record("9", ok, f"renaming: {len(graphs)} graphs on <= 6 vertices, {pairs} pairs "
           f"(source colors 1..m, every target), {bad} violations")
    assert ok


# 10


def test_criterion_10_bounded_end_to_end():
    rng = random.Random(10)
    summary = []
    ok = True
    for name, adj, p, k in (("C5", C5, 2, 3), ("frozen(2,3)", frozen_family(2, 3).graph, 2, 3)):
        ell = p * k // 2 + 1
        L = {v: tuple(range(1, ell + 1)) for v in adj}
        worst, bad = 0, 0
        for _ in range(100):
            a = I.random_coloring(adj, L, rng.randrange(10**9))
            b = I.random_coloring(adj, L, rng.randrange(10**9))
            seq = recolor_bounded(adj, p, k, ell, a, b)
            worst = max(worst, seq.max_count)
            bad += not _dominance(adj, L, a, b, seq, 4)
        ok &= bad == 0
        summary.append(f"{name} ell={ell} max {worst}, {bad} violations")
    record("10", ok, "bounded end-to-end, 100 pairs each: " + "; ".join(summary))
    assert ok
