"""Brute-force recoloring graphs: every proper L-coloring is a state, and two
states are adjacent when they differ at exactly one vertex.

States are encoded as mixed-radix integers over per-vertex list positions,
kept sorted so neighbour lookups are a ``searchsorted``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components, shortest_path

from .errors import CapExceeded, PreconditionError
from .recolor_core import adjacency, validate

DEFAULT_CAP = 10**6
EXACT_DIAMETER_LIMIT = 20_000
_SAMPLE_SOURCES = 64
_CHUNK = 256


@dataclass
class RecoloringGraphStats:
    num_colorings: int
    connected: bool
    diameter: float
    component_sizes: list[int]
    isolated: list[dict[int, int]] = field(default_factory=list)
    exact: bool = True

    def to_text(self) -> str:
        diam = "inf" if math.isinf(self.diameter) else str(int(self.diameter))
        return "\n".join(
            [
                f"colorings: {self.num_colorings}",
                f"connected: {'true' if self.connected else 'false'}",
                f"diameter: {diam}",
                f"exact: {'true' if self.exact else 'false'}",
                f"components: {len(self.component_sizes)}",
                f"component_sizes: {' '.join(map(str, self.component_sizes))}",
                f"isolated: {len(self.isolated)}",
            ]
        )


@dataclass
class _Space:
    verts: list[int]
    lists: list[np.ndarray]
    radix: np.ndarray
    states: np.ndarray  # (num, n) list positions
    codes: np.ndarray  # sorted codes, aligned with states

    def encode(self, coloring) -> int:
        code = 0
        for i, v in enumerate(self.verts):
            hits = np.nonzero(self.lists[i] == coloring[v])[0]
            if len(hits) == 0:
                raise PreconditionError(f"color of vertex {v} is not in its list")
            code += int(hits[0]) * int(self.radix[i])
        return code

    def index(self, coloring) -> int:
        code = self.encode(coloring)
        i = int(np.searchsorted(self.codes, code))
        if i >= len(self.codes) or self.codes[i] != code:
            raise PreconditionError("coloring is not proper")
        return i

    def decode(self, i: int) -> dict[int, int]:
        row = self.states[i]
        return {v: int(self.lists[j][row[j]]) for j, v in enumerate(self.verts)}


def enumerate_colorings(G, L, cap: int = DEFAULT_CAP) -> _Space:
    """All proper L-colorings, extended one vertex at a time with pruning."""
    adj = adjacency(G)
    verts = sorted(adj)
    pos = {v: i for i, v in enumerate(verts)}
    lists = [np.array(sorted(set(L[v])), dtype=np.int64) for v in verts]
    sizes = [len(x) for x in lists]
    if math.prod(sizes) >= 2**62:
        raise CapExceeded("coloring space too large to index")
    radix = np.ones(len(verts), dtype=np.int64)
    for i in range(1, len(verts)):
        radix[i] = radix[i - 1] * sizes[i - 1]

    states = np.zeros((1, 0), dtype=np.int64)
    colors = np.zeros((1, 0), dtype=np.int64)
    for i, v in enumerate(verts):
        earlier = [pos[u] for u in adj[v] if pos[u] < i]
        k = sizes[i]
        if len(states) * k > cap * 4:
            raise CapExceeded(f"more than {cap} partial colorings")
        rep_states = np.repeat(states, k, axis=0)
        rep_colors = np.repeat(colors, k, axis=0)
        choice = np.tile(np.arange(k, dtype=np.int64), len(states))
        new_col = lists[i][choice]
        ok = np.ones(len(choice), dtype=bool)
        for j in earlier:
            ok &= rep_colors[:, j] != new_col
        states = np.column_stack([rep_states[ok], choice[ok]])
        colors = np.column_stack([rep_colors[ok], new_col[ok]])
        if len(states) > cap:
            raise CapExceeded(f"more than {cap} colorings")
    codes = states @ radix if len(verts) else np.zeros(len(states), dtype=np.int64)
    order = np.argsort(codes, kind="stable")
    return _Space(verts, lists, radix, states[order], codes[order])


def _adjacency_matrix(space: _Space) -> csr_matrix:
    num = len(space.codes)
    rows, cols = [], []
    for j, lst in enumerate(space.lists):
        cur = space.states[:, j]
        for p in range(len(lst)):
            cand = space.codes + (p - cur) * space.radix[j]
            mask = cur != p
            idx = np.searchsorted(space.codes, cand[mask])
            idx = np.minimum(idx, num - 1)
            hit = space.codes[idx] == cand[mask]
            src = np.nonzero(mask)[0][hit]
            rows.append(src)
            cols.append(idx[hit])
    r = np.concatenate(rows) if rows else np.zeros(0, dtype=np.int64)
    c = np.concatenate(cols) if cols else np.zeros(0, dtype=np.int64)
    return csr_matrix((np.ones(len(r), dtype=np.int8), (r, c)), shape=(num, num))


def _eccentricities(A: csr_matrix, sources: np.ndarray) -> float:
    best = 0.0
    for s in range(0, len(sources), _CHUNK):
        d = shortest_path(A, unweighted=True, directed=False, indices=sources[s:s + _CHUNK])
        best = max(best, float(d.max()))
    return best


def build_recoloring_graph(G, L, cap: int = DEFAULT_CAP) -> RecoloringGraphStats:
    space = enumerate_colorings(G, L, cap)
    num = len(space.codes)
    if num == 0:
        return RecoloringGraphStats(0, False, math.inf, [], [])
    A = _adjacency_matrix(space)
    ncomp, labels = connected_components(A, directed=False)
    sizes = sorted(np.bincount(labels).tolist(), reverse=True)
    degrees = np.diff(A.indptr)
    isolated = [space.decode(int(i)) for i in np.nonzero(degrees == 0)[0]]
    connected = ncomp == 1
    exact = True
    if not connected:
        diameter = math.inf
    elif num == 1:
        diameter = 0.0
    elif num <= EXACT_DIAMETER_LIMIT:
        diameter = _eccentricities(A, np.arange(num))
    else:
        rng = np.random.default_rng(0)
        diameter = _eccentricities(A, rng.choice(num, _SAMPLE_SOURCES, replace=False))
        exact = False
    return RecoloringGraphStats(num, connected, diameter, sizes, isolated, exact)


def distance(G, L, alpha, beta, cap: int = DEFAULT_CAP) -> float:
    """Exact distance between two L-colorings; ``math.inf`` if not connected."""
    space = enumerate_colorings(G, L, cap)
    a, b = space.index(alpha), space.index(beta)
    if a == b:
        return 0
    A = _adjacency_matrix(space)
    d = shortest_path(A, unweighted=True, directed=False, indices=[a])[0, b]
    return math.inf if math.isinf(d) else int(d)


def is_frozen(G, coloring, num_colors: int) -> bool:
    """True iff every closed neighbourhood sees all colors ``1..num_colors``."""
    adj = adjacency(G)
    bad = validate(adj, None, coloring)
    if bad:
        raise PreconditionError(f"coloring is not proper: {bad}")
    full = set(range(1, num_colors + 1))
    for v in adj:
        if coloring[v] not in full:
            raise PreconditionError(f"color {coloring[v]} of vertex {v} outside 1..{num_colors}")
        seen = {coloring[v]} | {coloring[u] for u in adj[v]}
        if seen != full:
            return False
    return True
