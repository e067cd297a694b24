"""Recoloring graphs of bounded independence number.

Upper side: with ``ell >= floor(p*k/2) + 1`` colors, any two proper
colorings of a k-colorable graph with independence number at most ``p``
are joined by a sequence recoloring each vertex at most four times.

Lower side: :func:`frozen_family` builds a k-colorable graph with
independence number at most ``p`` together with a frozen
``floor(p*k/2)``-coloring, so fewer colors do not suffice.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import networkx as nx

from .errors import CapExceeded, PreconditionError
from .recolor_core import RecolorSequence, Step, adjacency, rename_classes, validate

DEFAULT_CAP = 30


def _nx(adj) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(adj)
    g.add_edges_from((u, v) for u in adj for v in adj[u] if u < v)
    return g


def independence_number(G, cap: int = DEFAULT_CAP) -> int:
    """Exact independence number (maximum clique of the complement)."""
    adj = adjacency(G)
    if len(adj) > cap:
        raise CapExceeded(f"{len(adj)} vertices exceeds the cap of {cap}")
    if not adj:
        return 0
    _, size = nx.max_weight_clique(nx.complement(_nx(adj)), weight=None)
    return size


def _k_coloring(adj, order: list[int], k: int) -> dict[int, int] | None:
    """Backtracking k-coloring, most constrained vertex first, colors 1..k."""
    col: dict[int, int] = {}

    def pick() -> int:
        best, key = None, None
        for v in order:
            if v in col:
                continue
            sat = len({col[u] for u in adj[v] if u in col})
            kk = (sat, len(adj[v]))
            if key is None or kk > key:
                best, key = v, kk
        return best

    def back() -> bool:
        if len(col) == len(order):
            return True
        v = pick()
        used = {col[u] for u in adj[v] if u in col}
        # symmetry: never open more than one new color
        top = max(col.values(), default=0)
        for c in range(1, min(k, top + 1) + 1):
            if c in used:
                continue
            col[v] = c
            if back():
                return True
            del col[v]
        return False

    return dict(col) if back() else None


def chromatic_coloring(G, cap: int = DEFAULT_CAP) -> dict[int, int]:
    """An optimal proper coloring with colors ``1..chi``."""
    adj = adjacency(G)
    if len(adj) > cap:
        raise CapExceeded(f"{len(adj)} vertices exceeds the cap of {cap}")
    if not adj:
        return {}
    order = sorted(adj)
    _, lower = nx.max_weight_clique(_nx(adj), weight=None)
    for k in range(max(lower, 1), len(adj) + 1):
        col = _k_coloring(adj, order, k)
        if col is not None:
            return col
    raise AssertionError("unreachable: n colors always suffice")


def _classes(coloring: Mapping[int, int], vertices) -> dict[int, set[int]]:
    out: dict[int, set[int]] = {}
    for v in vertices:
        out.setdefault(coloring[v], set()).add(v)
    return out


def align_class(G, c1: Mapping[int, int], c_target: Mapping[int, int], palette) -> tuple[dict[int, int], RecolorSequence, int, frozenset[int]]:
    """Make one color class of ``c1`` equal to a color class of ``c_target``.

    Works on the vertices of ``G``; ``palette`` is the set of colors free
    for use.  Picks the smallest color ``i`` whose class has at most one
    vertex.  If that class is ``{v}`` the target class of ``v`` is taken,
    otherwise the first target class by color.  Its vertices are recolored
    to ``i``, each at most once.  Returns the new coloring, the sequence,
    the color ``i`` and the aligned class.
    """
    adj = adjacency(G)
    verts = sorted(adj)
    if not verts:
        raise PreconditionError("empty graph")
    mine = _classes(c1, verts)
    small = [i for i in sorted(palette) if len(mine.get(i, ())) <= 1]
    if not small:
        raise PreconditionError("every color class has at least two vertices")
    i = small[0]
    target = _classes(c_target, verts)
    if mine.get(i):
        (v,) = mine[i]
        C = target[c_target[v]]
    else:
        C = target[min(target)]
    col = dict(c1)
    steps: list[Step] = []
    for w in sorted(C):
        if col[w] != i:
            steps.append((w, col[w], i))
            col[w] = i
    return col, RecolorSequence({v: c1[v] for v in verts}, tuple(steps)), i, frozenset(C)


def to_partition_of(G, c: Mapping[int, int], gamma: Mapping[int, int], ell: int) -> RecolorSequence:
    """Recolor ``c`` into a coloring with the same classes as ``gamma``, at most once per vertex."""
    adj = adjacency(G)
    remaining = set(adj)
    palette = set(range(1, ell + 1))
    col = dict(c)
    steps: list[Step] = []
    while remaining:
        sub = {v: adj[v] & remaining for v in remaining}
        col_sub, seq, i, C = align_class(sub, col, gamma, palette)
        col.update(col_sub)
        steps.extend(seq.steps)
        remaining -= C
        palette.discard(i)
    return RecolorSequence(dict(c), tuple(steps))


def recolor_bounded(G, p: int, k: int, ell: int, c1, c2, cap: int = DEFAULT_CAP) -> RecolorSequence:
    """Sequence from ``c1`` to ``c2`` recoloring each vertex at most four times."""
    adj = adjacency(G)
    problems = []
    alpha = independence_number(adj, cap)
    if alpha > p:
        problems.append(f"independence number {alpha} exceeds p={p}")
    gamma = chromatic_coloring(adj, cap)
    chi = max(gamma.values(), default=0)
    if chi > k:
        problems.append(f"chromatic number {chi} exceeds k={k}")
    if ell < p * k // 2 + 1:
        problems.append(f"ell={ell} is below floor(p*k/2)+1={p * k // 2 + 1}")
    palette = list(range(1, ell + 1))
    for name, c in (("c1", c1), ("c2", c2)):
        bad = validate(adj, {v: palette for v in adj}, c)
        if bad:
            problems.append(f"{name} is not a proper {ell}-coloring: {bad}")
    if problems:
        raise PreconditionError("; ".join(problems))
    if all(c1[v] == c2[v] for v in adj):
        return RecolorSequence({v: c1[v] for v in adj})
    s1 = to_partition_of(adj, c1, gamma, ell)
    s2 = to_partition_of(adj, c2, gamma, ell)
    mid = rename_classes(adj, ell, s1.end, s2.end)
    return s1.then(mid).then(s2.reversed())


@dataclass
class FrozenWitness:
    p: int
    k: int
    graph: dict[int, frozenset[int]]
    coloring: dict[int, int]
    num_colors: int
    partition: dict[int, int]  # proper coloring with k colors, one per independent part
    is_frozen: bool
    independence: int | None
    k_colorable: bool

    def to_text(self) -> str:
        from .formats import emit_graph

        lines = [emit_graph(self.graph), f"colors {self.num_colors}"]
        lines += [f"{v} {self.coloring[v]}" for v in sorted(self.coloring)]
        return "\n".join(lines)


def _g2(p: int, start: int, offset: int):
    """Complete bipartite K_{p,p} minus a perfect matching, matched pairs share a color."""
    a = list(range(start, start + p))
    b = list(range(start + p, start + 2 * p))
    edges = [(a[i], b[j]) for i in range(p) for j in range(p) if i != j]
    coloring = {a[i]: offset + i + 1 for i in range(p)}
    coloring.update({b[i]: offset + i + 1 for i in range(p)})
    parts = [a, b]
    return list(a + b), edges, coloring, parts, p


def _g3(p: int, start: int, offset: int):
    extras = list(range(p + 1, 3 * p // 2 + 1))
    c1 = list(range(1, p + 1))
    c2 = [i for i in range(1, p + 1) if i % 2 == 1] + extras
    c3 = [i for i in range(1, p + 1) if i % 2 == 0] + extras
    parts, coloring, nxt = [], {}, start
    for cols in (c1, c2, c3):
        part = []
        for c in cols:
            coloring[nxt] = offset + c
            part.append(nxt)
            nxt += 1
        parts.append(part)
    edges = [
        (u, v)
        for i in range(3)
        for j in range(i + 1, 3)
        for u in parts[i]
        for v in parts[j]
        if coloring[u] != coloring[v]
    ]
    verts = [v for part in parts for v in part]
    return verts, edges, coloring, parts, 3 * p // 2


def frozen_family(p: int, k: int, cap: int = DEFAULT_CAP) -> FrozenWitness:
    """k-colorable graph, independence at most p, with a frozen floor(p*k/2)-coloring.

    Built from copies of the 2- and 3-part gadgets joined completely.
    Frozenness and k-colorability are checked; the independence number is
    computed exactly when the graph has at most ``cap`` vertices.
    """
    if p < 2 or k < 2:
        raise PreconditionError("need p >= 2 and k >= 2")
    if k == 2:
        plan = [_g2]
    elif k == 3:
        plan = [_g3]
    else:
        plan = [_g2] * (k // 2) if k % 2 == 0 else [_g2] * ((k - 3) // 2) + [_g3]
    blocks, nxt, offset = [], 0, 0
    for make in plan:
        verts, edges, coloring, parts, used = make(p, nxt, offset)
        blocks.append((verts, edges, coloring, parts))
        nxt += len(verts)
        offset += used
    adj: dict[int, set[int]] = {v: set() for b in blocks for v in b[0]}
    coloring: dict[int, int] = {}
    partition: dict[int, int] = {}
    part_id = 0
    for bi, (verts, edges, col, parts) in enumerate(blocks):
        coloring.update(col)
        for part in parts:
            part_id += 1
            for v in part:
                partition[v] = part_id
        for u, v in edges:
            adj[u].add(v)
            adj[v].add(u)
        for bj in range(bi + 1, len(blocks)):
            for u in verts:
                for v in blocks[bj][0]:
                    adj[u].add(v)
                    adj[v].add(u)
    graph = {v: frozenset(nb) for v, nb in adj.items()}
    num_colors = p * k // 2
    assert max(coloring.values()) == num_colors
    from .oracle import is_frozen

    k_colorable = validate(graph, None, partition) is None and max(partition.values()) <= k
    independence = independence_number(graph, cap) if len(graph) <= cap else None
    return FrozenWitness(
        p, k, graph, coloring, num_colors, partition,
        is_frozen(graph, coloring, num_colors), independence, k_colorable,
    )
