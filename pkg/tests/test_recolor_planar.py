import math
from collections import Counter
from functools import lru_cache

import pytest

from gadgets import edge
from planrecolor import config_finder, instances as I, oracle
from planrecolor.errors import PreconditionError, StructureNotFound
from planrecolor.recolor_core import validate_sequence
from planrecolor.recolor_planar import (
    BUDGETS,
    LIST_FLOORS,
    degeneracy_peel,
    readd_order,
    recolor,
    recolor_degenerate,
)


def _pair(G, L, seed):
    return I.random_coloring(G, L, seed), I.random_coloring(G, L, seed + 1000)


def _run(G, strategy, seed=0, L=None):
    L = L or I.uniform_lists(G, range(1, LIST_FLOORS[strategy] + 1))
    a, b = _pair(G, L, seed)
    seq, cert = recolor(G, L, a, b, strategy)
    assert validate_sequence(G, L, seq, b) is None
    assert cert.ok and cert.max_count <= BUDGETS[strategy]
    return L, a, b, seq, cert


@lru_cache(maxsize=None)
def dense(cls, seed, no_h4=False):
    return I.dense_instance(cls, seed, no_h4=no_h4)


@pytest.mark.parametrize("strategy", ["g1", "g2", "gcal", "no4"])
def test_single_vertex(strategy):
    G = I.single_vertex()
    L = {0: tuple(range(LIST_FLOORS[strategy]))}
    seq, cert = recolor(G, L, {0: 1}, {0: 2}, strategy)
    assert seq.steps == ((0, 1, 2),)
    seq, _ = recolor(G, L, {0: 1}, {0: 1}, strategy)
    assert seq.steps == ()


def test_cube_gcal_matches_oracle():
    G = I.cube()
    L, a, b, seq, cert = _run(G, "gcal", 3)
    assert oracle.distance(G, L, a, b) <= len(seq)
    assert cert.notes == []


def test_stacked_diamond_chain_g2():
    for length in (1, 3, 6):
        _run(I.stacked_diamond_chain(length), "g2", length)


@pytest.mark.parametrize("cls", ["g1", "g2", "gcal", "no4"])
def test_dense_instances(cls):
    G = dense(cls, 0)
    for seed in range(3):
        L = I.random_lists(G, LIST_FLOORS[cls], LIST_FLOORS[cls] + 3, seed)
        _, _, _, _, cert = _run(G, cls, seed, L)
        assert cert.reductions[0].split(";")[0] == config_finder.find_reduction(G, cls).kind


def test_h5_reduction_used():
    G = dense("gcal", 5, True)
    _, _, _, _, cert = _run(G, "gcal", 1)
    kinds = Counter(r.split(";")[0] for r in cert.reductions)
    assert kinds["H5"] >= 1
    assert any(r.startswith("H5") and r.endswith("trimmed=true") for r in cert.reductions)


def test_h6_reduction_used(monkeypatch):
    monkeypatch.setitem(config_finder.STRATEGY_KINDS, "gcal", ("H4", "H6"))
    G = I.dense_instance("gcal", 0, base=I.shuffled_geodesic(0, 2, 4, flips=0), no_h4=True)
    _, _, _, _, cert = _run(G, "gcal", 2)
    assert any(r.startswith("H6") for r in cert.reductions)


def test_vertex_bounds_are_recorded():
    _, _, _, seq, cert = _run(dense("no4", 1), "no4", 4)
    assert set(cert.vertex_bounds) == set(seq.start)
    assert all(seq.counts[v] <= b for v, b in cert.vertex_bounds.items())


def test_readd_order_diamond_cases():
    G = I.icosahedron()
    conf = config_finder.find_diamond_h(G)
    order = readd_order(G, conf)
    assert order[:2] == [conf.role("mid1"), conf.role("mid2")]
    shen = config_finder.Configuration(
        "Shen", (("v", 1), ("a1", 2), ("a2", 3), ("b1", 4), ("b2", 5))
    )
    assert readd_order(G, shen) == [2, 3, 4, 1]


def test_structure_not_found_is_raised():
    G = I.icosahedron()
    L = I.uniform_lists(G, range(1, 10))
    a, b = _pair(G, L, 0)
    with pytest.raises(StructureNotFound) as exc:
        recolor(G, L, a, b, "g2")
    assert exc.value.graph == G and exc.value.strategy == "g2"


def test_out_of_class_input_is_noted():
    G = I.octahedron()
    L = I.uniform_lists(G, range(1, 10))
    a, b = _pair(G, L, 0)
    _, cert = recolor(G, L, a, b, "g2")
    assert any("outside the class" in n for n in cert.notes)


def test_precondition_errors():
    G = I.cube()
    L = I.uniform_lists(G, range(1, 7))
    a, b = _pair(G, L, 0)
    with pytest.raises(PreconditionError, match="fewer than 7"):
        recolor(G, L, a, b, "gcal")
    L = I.uniform_lists(G, range(1, 8))
    with pytest.raises(PreconditionError, match="alpha"):
        recolor(G, L, {v: 1 for v in G.vertices}, b, "gcal")
    with pytest.raises(PreconditionError):
        recolor(G, L, a, b, "g7")


def test_determinism():
    G = dense("g2", 1)
    L = I.uniform_lists(G, range(1, 10))
    a, b = _pair(G, L, 5)
    assert recolor(G, L, a, b, "g2")[0] == recolor(G, L, a, b, "g2")[0]


def test_certificate_text():
    _, _, _, _, cert = _run(I.cube(), "gcal")
    text = cert.to_text()
    assert text.startswith("strategy gcal\nbudget 242")
    assert "ok true" in text


def test_degenerate_single_edge_oracle():
    G = edge()
    L = {0: (1, 2, 3, 4), 1: (1, 2, 3, 4)}
    for a in ({0: 1, 1: 2}, {0: 3, 1: 4}):
        for b in ({0: 2, 1: 1}, {0: 4, 1: 3}):
            seq, cert = recolor_degenerate(G, L, a, b, 1)
            assert cert.budget == 2 and cert.max_count <= 2
            assert validate_sequence(G, L, seq, b) is None
            assert oracle.distance(G, L, a, b) <= len(seq)


def test_degenerate_tree_and_budget():
    G = I.path(7)
    L = I.uniform_lists(G, range(1, 5))
    a, b = _pair(G, L, 1)
    seq, cert = recolor_degenerate(G, L, a, b, 1)
    assert cert.budget == 2 and cert.ok
    # d = 3 needs c = 4: ceil(3*4/4) + 1 = 4
    assert math.ceil(3 * 4 / 4) + 1 == 4


def test_degenerate_planar_d5():
    G = I.random_triangulation(3, 30)
    L = I.uniform_lists(G, range(1, 13))
    a, b = _pair(G, L, 2)
    seq, cert = recolor_degenerate(G, L, a, b, 5)
    assert cert.ok and cert.budget == 6
    assert validate_sequence(G, L, seq, b) is None


def test_degenerate_errors():
    G = I.octahedron()
    L = I.uniform_lists(G, range(1, 9))
    a, b = _pair(G, L, 0)
    with pytest.raises(PreconditionError, match="degenerate"):
        recolor_degenerate(G, L, a, b, 3)
    with pytest.raises(PreconditionError, match="fewer than"):
        recolor_degenerate(G, L, a, b, 4)


def test_degeneracy_peel():
    assert degeneracy_peel(I.cube().adjacency, 2) is None
    assert len(degeneracy_peel(I.cube().adjacency, 3)) == 8
