import random

import pytest
from hypothesis import given, settings, strategies as st

from planrecolor import oracle
from planrecolor.errors import PreconditionError
from planrecolor.recolor_core import (
    ExtensionBudget,
    RecolorSequence,
    chain_bounds,
    chain_extend,
    disjoint_union,
    extend_vertex,
    extension_bound,
    make_lists,
    neighbour_recolorings,
    rename_classes,
    validate,
    validate_sequence,
)

K3 = {0: {1, 2}, 1: {0, 2}, 2: {0, 1}}
L3 = {v: (1, 2, 3) for v in K3}


def test_validate_examples():
    assert validate(K3, L3, {0: 1, 1: 2, 2: 3}) is None
    bad = validate(K3, L3, {0: 1, 1: 1, 2: 2})
    assert bad.kind == "edge" and bad.where == (0, 1)
    bad = validate(K3, {0: (1,), 1: (2,), 2: (3,)}, {0: 2, 1: 1, 2: 3})
    assert bad.kind == "list" and bad.where == (0,)
    assert validate(K3, L3, {0: 1, 1: 2}).kind == "missing"


def test_make_lists():
    assert make_lists({0: [3, 1, 3]}) == {0: (1, 3)}
    with pytest.raises(PreconditionError):
        make_lists({0: []})
    with pytest.raises(PreconditionError):
        make_lists({0: [-1]})


@pytest.mark.parametrize(
    "t, size, deg, bound",
    [(3 * 13, 9, 3, 9), (2 * 242, 7, 2, 122), (4 * 190, 10, 4, 153), (0, 5, 3, 1),
     (3 * 190, 10, 3, 96), (2 * 29, 8, 2, 13), (2 * 29 + 13, 8, 3, 19), (29 + 13 + 19 + 23, 8, 4, 29)],
)
def test_extension_bound_values(t, size, deg, bound):
    assert extension_bound(t, size, deg) == bound
    assert ExtensionBudget(t, size, deg).bound == bound


def test_extension_bound_needs_slack():
    with pytest.raises(PreconditionError):
        extension_bound(5, 4, 3)


def test_chain_bounds():
    assert chain_bounds(50, 3) == [179, 222, 237, 242]
    assert chain_bounds(122, 3) == [203, 230, 239, 242]
    assert chain_bounds(122, 0) == [203]


def _random_walk(adj, lists, start, length, rng):
    col = dict(start)
    steps = []
    verts = sorted(adj)
    for _ in range(length):
        v = rng.choice(verts)
        opts = [c for c in lists[v] if c != col[v] and all(col[u] != c for u in adj[v])]
        if opts:
            c = rng.choice(opts)
            steps.append((v, col[v], c))
            col[v] = c
    return RecolorSequence(start, tuple(steps))


def _greedy(adj, lists, rng):
    col = {}
    for v in sorted(adj):
        opts = [c for c in lists[v] if all(col.get(u) != c for u in adj[v])]
        col[v] = rng.choice(opts)
    return col


def _extension_case(seed, d, extra, palette, length):
    rng = random.Random(seed)
    others = list(range(1, d + extra + 2))
    adj = {u: set() for u in others}
    for a in others:
        for b in others:
            if a < b and rng.random() < 0.3:
                adj[a].add(b)
                adj[b].add(a)
    lists = {u: tuple(range(max(len(adj[u]) + 2, palette))) for u in others}
    start = _greedy(adj, lists, rng)
    sigma = _random_walk(adj, lists, start, length, rng)
    nbrs = set(rng.sample(others, d))
    star = {0: nbrs, **{u: adj[u] | ({0} if u in nbrs else set()) for u in others}}
    size = d + 2 + rng.randint(0, 3)
    lv = tuple(sorted(rng.sample(range(size + 3), size)))
    end = sigma.end
    a = rng.choice([c for c in lv if c not in {start[u] for u in nbrs}])
    b = rng.choice([c for c in lv if c not in {end[u] for u in nbrs}])
    L = dict(lists)
    L[0] = lv
    return star, L, sigma, a, b


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 10**9), st.integers(0, 5), st.integers(0, 4), st.integers(3, 8), st.integers(0, 120))
def test_extend_vertex_properties(seed, d, extra, palette, length):
    star, L, sigma, a, b = _extension_case(seed, d, extra, palette, length)
    out = extend_vertex(star, L, 0, sigma, a, b)
    assert validate_sequence(star, L, out, {**sigma.end, 0: b}) is None
    t = neighbour_recolorings(star, 0, sigma)
    assert out.counts[0] <= extension_bound(t, len(L[0]), len(star[0]))
    assert out.restrict(set(star) - {0}).steps == sigma.steps


def test_extend_vertex_no_neighbour_steps():
    star = {0: {1}, 1: {0}}
    L = {0: (1, 2, 3), 1: (1, 2, 3)}
    sigma = RecolorSequence({1: 1})
    assert extend_vertex(star, L, 0, sigma, 2, 3).steps == ((0, 2, 3),)
    assert extend_vertex(star, L, 0, sigma, 2, 2).steps == ()


def test_extend_vertex_errors():
    star = {0: {1, 2}, 1: {0}, 2: {0}}
    sigma = RecolorSequence({1: 1, 2: 2})
    with pytest.raises(PreconditionError, match="needs 4"):
        extend_vertex(star, {0: (1, 2, 3)}, 0, sigma, 3, 3)
    L = {0: (1, 2, 3, 4)}
    with pytest.raises(PreconditionError, match="start color"):
        extend_vertex(star, L, 0, sigma, 1, 3)
    with pytest.raises(PreconditionError, match="end color"):
        extend_vertex(star, L, 0, sigma, 3, 2)
    with pytest.raises(PreconditionError, match="not colored"):
        extend_vertex(star, L, 0, RecolorSequence({1: 1}), 3, 3)


def test_chain_extend_path():
    # base vertex 0 is recolored often; path 1-2-3 hangs off it, 3 also sees 4
    adj = {0: {1, 4}, 1: {0, 2}, 2: {1, 3}, 3: {2, 4}, 4: {0, 3}}
    L = {v: tuple(range(1, 8)) for v in adj}
    steps = []
    c0, c4 = 1, 2
    for i in range(30):
        new0 = 3 + i % 4
        if new0 == c4:
            new0 = 7
        if new0 != c0:
            steps.append((0, c0, new0))
            c0 = new0
    base = RecolorSequence({0: 1, 4: 2}, tuple(steps))
    alpha = {1: 2, 2: 1, 3: 3}
    beta = {1: 1, 2: 2, 3: 1}
    out = chain_extend(adj, L, [1, 2, 3], base, alpha, beta, c1=base.counts[0])
    assert validate_sequence(adj, L, out, {**base.end, **beta}) is None
    assert out.restrict([0, 4]).steps == base.steps


def test_chain_extend_empty_path():
    base = RecolorSequence({0: 1}, ((0, 1, 2),))
    assert chain_extend({0: set()}, {0: (1, 2)}, [], base, {}, {}) == base


def test_rename_identity_is_empty():
    c = {0: 1, 1: 2, 2: 3}
    assert rename_classes(K3, 4, c, c).steps == ()


def test_rename_k3_rotation_schedule():
    seq = rename_classes(K3, 4, {0: 1, 1: 2, 2: 3}, {0: 2, 1: 3, 2: 1})
    assert seq.steps == ((0, 1, 4), (2, 3, 1), (1, 2, 3), (0, 4, 2))
    assert validate_sequence(K3, {v: range(1, 5) for v in K3}, seq, {0: 2, 1: 3, 2: 1}) is None


def test_rename_transposition_uses_spare():
    E = {0: {1}, 1: {0}}
    seq = rename_classes(E, 3, {0: 1, 1: 2}, {0: 2, 1: 1})
    assert seq.steps == ((0, 1, 3), (1, 2, 1), (0, 3, 2))
    assert max(seq.counts.values()) <= 2


def test_rename_errors():
    with pytest.raises(PreconditionError, match="partition"):
        rename_classes({0: set(), 1: set()}, 3, {0: 1, 1: 1}, {0: 1, 1: 2})
    with pytest.raises(PreconditionError, match="spare"):
        rename_classes(K3, 3, {0: 1, 1: 2, 2: 3}, {0: 2, 1: 3, 2: 1})


def test_rename_oracle_dominance_small():
    C4 = {0: {1, 3}, 1: {0, 2}, 2: {1, 3}, 3: {0, 2}}
    c_from = {0: 1, 1: 2, 2: 1, 3: 2}
    c_to = {0: 2, 1: 3, 2: 2, 3: 3}
    seq = rename_classes(C4, 3, c_from, c_to)
    L = {v: (1, 2, 3) for v in C4}
    assert oracle.distance(C4, L, c_from, c_to) <= len(seq) <= 2 * len(C4)


def test_sequence_helpers():
    s = RecolorSequence({0: 1, 1: 2}, ((0, 1, 3), (1, 2, 1)))
    assert s.end == {0: 3, 1: 1}
    assert s.counts == {0: 1, 1: 1}
    assert s.reversed().end == {0: 1, 1: 2}
    assert s.then(s.reversed()).end == s.start
    with pytest.raises(PreconditionError):
        s.then(s)
    u = disjoint_union([RecolorSequence({5: 1}, ((5, 1, 2),)), s])
    assert len(u) == 3 and set(u.start) == {0, 1, 5}


def test_validate_sequence_catches_bad_steps():
    E = {0: {1}, 1: {0}}
    L = {0: (1, 2, 3), 1: (1, 2, 3)}
    assert validate_sequence(E, L, RecolorSequence({0: 1, 1: 2}, ((0, 1, 2),))).kind == "edge"
    assert validate_sequence(E, L, RecolorSequence({0: 1, 1: 2}, ((0, 1, 1),))) is not None
    assert validate_sequence(E, L, RecolorSequence({0: 1, 1: 2}, ((0, 1, 7),))).kind == "list"
    assert validate_sequence(E, L, RecolorSequence({0: 1, 1: 2}), {0: 3, 1: 2}) is not None
