"""Colorings, recoloring sequences and the extension engines.

Graphs are consumed as adjacency mappings ``vertex -> set of neighbours``;
a :class:`~planrecolor.plane_graph.PlaneGraph` is accepted wherever a graph
is expected.
"""
from __future__ import annotations

import bisect
import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import PreconditionError
from .plane_graph import PlaneGraph

Coloring = dict[int, int]
ListAssignment = dict[int, tuple[int, ...]]
Step = tuple[int, int, int]
Adjacency = Mapping[int, frozenset[int]]


def adjacency(G) -> Adjacency:
    """Adjacency mapping of a plane graph or an adjacency-like mapping."""
    if isinstance(G, PlaneGraph):
        return G.adjacency
    return {v: frozenset(nb) for v, nb in G.items()}


def _neighbours(G, v: int) -> frozenset[int]:
    if isinstance(G, PlaneGraph):
        return G.adjacency[v]
    return frozenset(G[v])


def make_lists(mapping: Mapping[int, Iterable[int]]) -> ListAssignment:
    lists = {}
    for v, cs in mapping.items():
        t = tuple(sorted(set(cs)))
        if not t:
            raise PreconditionError(f"empty list at vertex {v}")
        if t[0] < 0:
            raise PreconditionError(f"negative color in list of vertex {v}")
        lists[v] = t
    return lists


@dataclass(frozen=True)
class Violation:
    kind: str  # "edge", "list" or "missing"
    where: tuple[int, ...]

    def __str__(self) -> str:
        if self.kind == "edge":
            return f"monochromatic edge {self.where[0]}-{self.where[1]}"
        if self.kind == "list":
            return f"vertex {self.where[0]} colored outside its list"
        return f"vertex {self.where[0]} has no color"


def validate(G, L: Mapping[int, Iterable[int]] | None, coloring: Mapping[int, int]) -> Violation | None:
    """``None`` if ``coloring`` is a proper L-coloring, else the first violation."""
    adj = adjacency(G)
    for v in sorted(adj):
        if v not in coloring:
            return Violation("missing", (v,))
        if L is not None and coloring[v] not in L[v]:
            return Violation("list", (v,))
    for v in sorted(adj):
        for u in sorted(adj[v]):
            if v < u and coloring[v] == coloring[u]:
                return Violation("edge", (v, u))
    return None


@dataclass(frozen=True)
class RecolorSequence:
    """Single-vertex recoloring steps starting from ``start``."""

    start: Mapping[int, int]
    steps: tuple[Step, ...] = ()

    @property
    def end(self) -> Coloring:
        col = dict(self.start)
        for v, _, new in self.steps:
            col[v] = new
        return col

    @property
    def counts(self) -> Counter:
        c = Counter({v: 0 for v in self.start})
        c.update(v for v, _, _ in self.steps)
        return c

    @property
    def max_count(self) -> int:
        return max(self.counts.values(), default=0)

    def __len__(self) -> int:
        return len(self.steps)

    def restrict(self, vertices: Iterable[int]) -> "RecolorSequence":
        keep = set(vertices)
        return RecolorSequence(
            {v: c for v, c in self.start.items() if v in keep},
            tuple(s for s in self.steps if s[0] in keep),
        )

    def reversed(self) -> "RecolorSequence":
        return RecolorSequence(self.end, tuple((v, new, old) for v, old, new in reversed(self.steps)))

    def then(self, other: "RecolorSequence") -> "RecolorSequence":
        if dict(other.start) != self.end:
            raise PreconditionError("sequences do not join: end and start colorings differ")
        return RecolorSequence(dict(self.start), self.steps + other.steps)


def disjoint_union(seqs: Iterable[RecolorSequence]) -> RecolorSequence:
    """Concatenate sequences on vertex-disjoint graphs with no edges between them."""
    start: dict[int, int] = {}
    steps: list[Step] = []
    for s in seqs:
        if start.keys() & s.start.keys():
            raise PreconditionError("sequences share vertices")
        start.update(s.start)
        steps.extend(s.steps)
    return RecolorSequence(start, tuple(steps))


def validate_sequence(G, L, seq: RecolorSequence, beta: Mapping[int, int] | None = None) -> Violation | None:
    """Check every intermediate coloring and, optionally, the end point."""
    adj = adjacency(G)
    bad = validate(adj, L, seq.start)
    if bad:
        return bad
    col = dict(seq.start)
    for v, old, new in seq.steps:
        if col.get(v) != old or old == new:
            return Violation("missing", (v,))
        if L is not None and new not in L[v]:
            return Violation("list", (v,))
        for u in adj[v]:
            if col[u] == new:
                return Violation("edge", (min(u, v), max(u, v)))
        col[v] = new
    if beta is not None:
        for v in adj:
            if col[v] != beta[v]:
                return Violation("missing", (v,))
    return None


@dataclass(frozen=True)
class ExtensionBudget:
    t: int
    list_size: int
    degree: int

    @property
    def bound(self) -> int:
        return extension_bound(self.t, self.list_size, self.degree)


def extension_bound(t: int, list_size: int, degree: int) -> int:
    """Upper bound on recolorings of an added vertex: ceil(t / (l - d - 1)) + 1."""
    slack = list_size - degree - 1
    if slack < 1:
        raise PreconditionError("list size must be at least degree + 2")
    return -(-t // slack) + 1


def extend_vertex(G_star, L, v: int, sigma_without_v: RecolorSequence, alpha_v: int, beta_v: int) -> RecolorSequence:
    """Add ``v`` to a recoloring sequence of ``G_star - v``.

    ``v`` moves just before a neighbour step would take its color.  It moves
    to the allowed color whose next use by a neighbour step lies farthest
    ahead; ties prefer ``beta_v`` and then the smallest color.  A final step
    to ``beta_v`` is added when needed.
    """
    nbrs = _neighbours(G_star, v)
    lv = tuple(L[v])
    if len(lv) < len(nbrs) + 2:
        raise PreconditionError(f"list of vertex {v} has {len(lv)} colors, needs {len(nbrs) + 2}")
    missing = [u for u in nbrs if u not in sigma_without_v.start]
    if missing:
        raise PreconditionError(f"neighbour {missing[0]} of {v} is not colored by the sequence")
    cur = {u: sigma_without_v.start[u] for u in nbrs}
    if alpha_v not in lv or alpha_v in cur.values():
        raise PreconditionError(f"start color {alpha_v} of vertex {v} is not proper")
    end_nbr = {u: c for u, c in sigma_without_v.end.items() if u in nbrs}
    if beta_v not in lv or beta_v in end_nbr.values():
        raise PreconditionError(f"end color {beta_v} of vertex {v} is not proper")

    # positions (in the neighbour-step stream) at which each color is taken
    uses: dict[int, list[int]] = {}
    k = 0
    for u, _, new in sigma_without_v.steps:
        if u in nbrs:
            uses.setdefault(new, []).append(k)
            k += 1

    def next_use(c: int, pos: int) -> float:
        lst = uses.get(c)
        if not lst:
            return math.inf
        i = bisect.bisect_left(lst, pos)
        return lst[i] if i < len(lst) else math.inf

    out: list[Step] = []
    vc = alpha_v
    pos = 0
    for step in sigma_without_v.steps:
        u, _, new = step
        if u in nbrs:
            if new == vc:
                taken = set(cur.values())
                cands = [c for c in lv if c not in taken and c != vc]
                best = max(cands, key=lambda c: (next_use(c, pos), c == beta_v, -c))
                out.append((v, vc, best))
                vc = best
            cur[u] = new
            pos += 1
        out.append(step)
    if vc != beta_v:
        out.append((v, vc, beta_v))
    start = dict(sigma_without_v.start)
    start[v] = alpha_v
    return RecolorSequence(start, tuple(out))


def neighbour_recolorings(G, v: int, seq: RecolorSequence) -> int:
    nbrs = _neighbours(G, v)
    return sum(1 for u, _, _ in seq.steps if u in nbrs)


def chain_bounds(c1: int, p: int, budget: int = 242) -> list[int]:
    """Bounds c_2..c_{p+2} along a chain: c_i = ceil((2*budget + c_{i-1}) / 3) + 1."""
    out = []
    c = c1
    for _ in range(p + 1):
        c = -(-(2 * budget + c) // 3) + 1
        out.append(c)
    return out


def chain_extend(G, L, path_vertices, sigma_base: RecolorSequence, alpha, beta, c1: int | None = None) -> RecolorSequence:
    """Add the vertices of a path one at a time, each against the vertices present so far.

    ``c1`` (the count of the path's first vertex in ``sigma_base``) is only
    used to sanity-check the input when given.
    """
    adj = adjacency(G)
    present = set(sigma_base.start)
    path_vertices = list(path_vertices)
    if present & set(path_vertices):
        raise PreconditionError("path vertices are already colored by the base sequence")
    if c1 is not None and path_vertices:
        first_nbrs = adj[path_vertices[0]] & present
        if not first_nbrs:
            raise PreconditionError("first path vertex has no colored predecessor")
    seq = sigma_base
    for x in path_vertices:
        present.add(x)
        sub = {w: adj[w] & present for w in present}
        seq = extend_vertex(sub, L, x, seq, alpha[x], beta[x])
    return seq


def rename_classes(G, k_prime: int, c_from: Mapping[int, int], c_to: Mapping[int, int]) -> RecolorSequence:
    """Recolor between two colorings with the same color classes.

    Colors are ``1..k_prime``.  Each class moves as a block; a cycle of
    class moves is broken by parking one class on a free color.  Every
    vertex is recolored at most twice.
    """
    adj = adjacency(G)
    verts = sorted(adj)
    classes: dict[int, list[int]] = {}
    for v in verts:
        classes.setdefault(c_from[v], []).append(v)
    target: dict[int, int] = {}
    for c, members in classes.items():
        tcols = {c_to[v] for v in members}
        if len(tcols) != 1:
            raise PreconditionError("colorings induce different partitions")
        target[c] = tcols.pop()
    if len(set(target.values())) != len(target):
        raise PreconditionError("colorings induce different partitions")
    for c in list(classes) + list(target.values()):
        if not 1 <= c <= k_prime:
            raise PreconditionError(f"color {c} outside 1..{k_prime}")
    if len(classes) >= k_prime:
        raise PreconditionError("no spare color: k_prime must exceed the number of classes")

    start = {v: c_from[v] for v in verts}
    steps: list[Step] = []
    where = {c: c for c in classes}  # class (by original color) -> current color
    used = set(classes)

    def move(cls: int, to: int) -> None:
        for v in classes[cls]:
            steps.append((v, where[cls], to))
        used.discard(where[cls])
        used.add(to)
        where[cls] = to

    pending = {c for c in classes if target[c] != c}
    while pending:
        # move any class whose target color is free
        free_moves = sorted(c for c in pending if target[c] not in used)
        if free_moves:
            c = free_moves[0]
            move(c, target[c])
            pending.discard(c)
            continue
        # every pending target is occupied by another pending class: a cycle
        c = min(pending)
        spare = min(x for x in range(1, k_prime + 1) if x not in used)
        move(c, spare)
    return RecolorSequence(start, tuple(steps))
