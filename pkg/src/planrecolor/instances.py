"""Deterministic instance generators.

Every generator returns a :class:`PlaneGraph`; randomised generators take an
explicit seed and are bit-identical across runs for equal seeds.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Callable, Mapping

import networkx as nx

from .errors import PreconditionError
from .plane_graph import PlaneGraph, connected_components

Rotation = dict[int, list[int]]


@dataclass(frozen=True)
class FamilySpec:
    family: str
    params: dict = field(default_factory=dict)


# conversions


def from_networkx(g: nx.Graph) -> PlaneGraph:
    """Embed a planar networkx graph (any embedding networkx picks)."""
    planar, emb = nx.check_planarity(g)
    if not planar:
        raise PreconditionError("graph is not planar")
    mapping = {v: i for i, v in enumerate(sorted(g.nodes))}
    rot = {mapping[v]: [mapping[u] for u in emb.neighbors_cw_order(v)] for v in g.nodes}
    return PlaneGraph(rot)


def from_coordinates(pos: Mapping[int, tuple[float, float]], edges) -> PlaneGraph:
    """Rotation from a straight-line drawing: neighbours sorted clockwise."""
    nbrs: dict[int, list[int]] = {v: [] for v in pos}
    for u, v in edges:
        nbrs[u].append(v)
        nbrs[v].append(u)
    rot = {}
    for v, nb in nbrs.items():
        x0, y0 = pos[v]
        rot[v] = sorted(nb, key=lambda u: -math.atan2(pos[u][1] - y0, pos[u][0] - x0))
    return PlaneGraph(rot)


def to_networkx(G: PlaneGraph) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(G.vertices)
    g.add_edges_from(G.edges())
    return g


def relabel(G: PlaneGraph) -> PlaneGraph:
    """Renumber vertices to 0..n-1 preserving order."""
    m = {v: i for i, v in enumerate(G.vertices)}
    return PlaneGraph({m[v]: [m[u] for u in nb] for v, nb in G.rotation.items()})


# fixed families


def cube() -> PlaneGraph:
    return from_networkx(nx.cubical_graph())


def octahedron() -> PlaneGraph:
    return from_networkx(nx.octahedral_graph())


def icosahedron() -> PlaneGraph:
    return from_networkx(nx.icosahedral_graph())


def dodecahedron() -> PlaneGraph:
    return from_networkx(nx.dodecahedral_graph())


def truncated_tetrahedron() -> PlaneGraph:
    return from_networkx(nx.truncated_tetrahedron_graph())


def single_vertex() -> PlaneGraph:
    return PlaneGraph({0: ()})


def path(n: int) -> PlaneGraph:
    return PlaneGraph({i: [u for u in (i - 1, i + 1) if 0 <= u < n] for i in range(n)})


def cycle(n: int) -> PlaneGraph:
    return PlaneGraph({i: [(i - 1) % n, (i + 1) % n] for i in range(n)})


def grid(rows: int, cols: int) -> PlaneGraph:
    pos = {r * cols + c: (float(c), float(-r)) for r in range(rows) for c in range(cols)}
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return from_coordinates(pos, edges)


def fan(n: int) -> PlaneGraph:
    """Hub 0 joined to every vertex of the path 1..n."""
    pos = {0: (0.0, 0.0)}
    for i in range(1, n + 1):
        a = math.pi * (i - 1) / max(n - 1, 1) * 0.9 + 0.05
        pos[i] = (math.cos(a), math.sin(a))
    edges = [(0, i) for i in range(1, n + 1)] + [(i, i + 1) for i in range(1, n)]
    return from_coordinates(pos, edges)


def triangulated_polygon(n: int) -> PlaneGraph:
    """Convex n-gon with a zigzag triangulation (outerplanar)."""
    if n < 3:
        raise PreconditionError("polygon needs at least 3 vertices")
    pos = {i: (math.cos(2 * math.pi * i / n), math.sin(2 * math.pi * i / n)) for i in range(n)}
    edges = [(i, (i + 1) % n) for i in range(n)]
    lo, hi = 1, n - 1
    order = [0]
    while lo <= hi:
        order.append(lo)
        if lo != hi:
            order.append(hi)
        lo, hi = lo + 1, hi - 1
    for a, b in zip(order, order[1:]):
        if abs(a - b) % n not in (1, n - 1):
            edges.append((a, b))
    return from_coordinates(pos, edges)


def stacked_diamond_chain(length: int) -> PlaneGraph:
    """Diamonds glued apex to apex in a row; every 3-face has one 3-face neighbour."""
    pos = {}
    edges = []
    for i in range(length):
        a, top, bot = 3 * i, 3 * i + 1, 3 * i + 2
        d = 3 * (i + 1)
        pos[a] = (2.0 * i, 0.0)
        pos[top] = (2.0 * i + 1, 1.0)
        pos[bot] = (2.0 * i + 1, -1.0)
        pos[d] = (2.0 * i + 2, 0.0)
        edges += [(a, top), (a, bot), (top, bot), (top, d), (bot, d)]
    return from_coordinates(pos, edges)


def cuboctahedron() -> PlaneGraph:
    return from_networkx(nx.line_graph(nx.cubical_graph()))


def medial(G: PlaneGraph) -> PlaneGraph:
    """Medial graph: one vertex per edge, joined when consecutive around a face."""
    g = nx.Graph()
    eid = {e: i for i, e in enumerate(G.edges())}

    def key(a, b):
        return eid[(a, b) if a < b else (b, a)]

    g.add_nodes_from(eid.values())
    for f in G.faces:
        darts = f.darts()
        for i in range(len(darts)):
            a = key(*darts[i])
            b = key(*darts[(i + 1) % len(darts)])
            if a != b:
                g.add_edge(a, b)
    return from_networkx(g)


def icosidodecahedron() -> PlaneGraph:
    return medial(dodecahedron())


def rhombicuboctahedron() -> PlaneGraph:
    """Cantellation of the cube: 24 vertices of degree 4, triangles only beside squares."""
    base = cube()
    g = nx.Graph()
    # one vertex per (vertex, incident face) pair of the cube
    corner = {}
    for f in base.faces:
        for v in f.walk:
            corner[(v, f.id)] = len(corner)
    g.add_nodes_from(corner.values())
    for f in base.faces:
        w = f.walk
        for i in range(len(w)):
            g.add_edge(corner[(w[i], f.id)], corner[(w[(i + 1) % len(w)], f.id)])
    for u, v in base.edges():
        f1, f2 = base.edge_face[(u, v)], base.edge_face[(v, u)]
        g.add_edge(corner[(u, f1)], corner[(u, f2)])
        g.add_edge(corner[(v, f1)], corner[(v, f2)])
    return from_networkx(g)


def geodesic(freq: int = 2) -> PlaneGraph:
    """Icosahedron with every face split into freq**2 triangles."""
    ico = icosahedron()
    g = nx.Graph()
    points: dict[tuple, int] = {}

    def pt(weights):
        k = tuple(sorted((v, c) for v, c in weights.items() if c))
        if k not in points:
            points[k] = len(points)
        return points[k]

    for f in ico.faces:
        a, b, c = f.walk
        grid_ = {}
        for i in range(freq + 1):
            for j in range(freq + 1 - i):
                grid_[(i, j)] = pt({a: freq - i - j, b: i, c: j})
        for i in range(freq + 1):
            for j in range(freq + 1 - i):
                for di, dj in ((1, 0), (0, 1), (1, -1)):
                    q = (i + di, j + dj)
                    if q in grid_:
                        g.add_edge(grid_[(i, j)], grid_[q])
    return from_networkx(g)


# random generation


def _rotation_lists(G: PlaneGraph) -> Rotation:
    return {v: list(nb) for v, nb in G.rotation.items()}


def _insert_vertex(rot: Rotation, walk: list[int], chosen: list[int], x: int) -> None:
    """Place new vertex ``x`` inside a face with walk ``walk`` (distinct vertices)."""
    k = len(walk)
    for i in chosen:
        w, prev = walk[i], walk[(i - 1) % k]
        r = rot[w]
        r.insert(r.index(prev) + 1, x)
    rot[x] = [walk[i] for i in reversed(chosen)]


def _delete_edge(rot: Rotation, u: int, v: int) -> None:
    rot[u].remove(v)
    rot[v].remove(u)


def _is_bridge(rot: Rotation, u: int, v: int) -> bool:
    _delete_edge(rot, u, v)
    comps = connected_components(rot)
    rot[u].append(v)
    rot[v].append(u)
    return len(comps) > 1


def _flip(rot: Rotation, G: PlaneGraph, a: int, b: int) -> bool:
    f1, f2 = G.face_of(a, b), G.face_of(b, a)
    if f1.length != 3 or f2.length != 3:
        return False
    c = [x for x in f1.walk if x not in (a, b)][0]
    d = [x for x in f2.walk if x not in (a, b)][0]
    if c == d or d in rot[c] or len(rot[a]) <= 3 or len(rot[b]) <= 3:
        return False
    rot[a].remove(b)
    rot[b].remove(a)
    rc, rd = rot[c], rot[d]
    rc.insert(rc.index(b) + 1, d)
    rd.insert(rd.index(a) + 1, c)
    return True


def random_triangulation(seed: int, n: int, flips: int | None = None) -> PlaneGraph:
    """Stacked triangulation by face subdivision, then random edge flips."""
    if n < 3:
        raise PreconditionError("need n >= 3")
    rng = random.Random(seed)
    rot: Rotation = {0: [1, 2], 1: [2, 0], 2: [0, 1]}
    G = PlaneGraph(rot)
    for x in range(3, n):
        f = rng.choice(G.faces)
        _insert_vertex(rot, list(f.walk), [0, 1, 2], x)
        G = PlaneGraph(rot)
    for _ in range(n if flips is None else flips):
        a, b = rng.choice(G.edges())
        if _flip(rot, G, a, b):
            G = PlaneGraph(rot)
    return G


def random_planar(seed: int, n: int, delete_fraction: float = 0.0) -> PlaneGraph:
    """Random connected plane graph: a random triangulation with edges removed."""
    if n == 1:
        return single_vertex()
    if n == 2:
        return path(2)
    rng = random.Random(seed * 7919 + 1)
    G = random_triangulation(seed, n)
    rot = _rotation_lists(G)
    edges = G.edges()
    rng.shuffle(edges)
    budget = int(round(delete_fraction * len(edges)))
    for u, v in edges:
        if budget <= 0:
            break
        if not _is_bridge(rot, u, v):
            _delete_edge(rot, u, v)
            budget -= 1
    return PlaneGraph(rot)


def _violations(G: PlaneGraph, cls: str) -> list[tuple[int, int]]:
    """Edges whose deletion moves ``G`` toward ``cls``; empty iff in class."""
    out: list[tuple[int, int]] = []
    if cls == "no4":
        adj = G.adjacency
        for w in G.vertices:
            nb = sorted(adj[w])
            for i, a in enumerate(nb):
                for b in nb[i + 1:]:
                    common = (adj[a] & adj[b]) - {w}
                    if common:
                        x = min(common)
                        return [(w, a), (w, b), (x, a), (x, b)]
        return []
    limit = {"g1": 2, "g2": 1}.get(cls)
    for f in G.faces:
        if f.length != 3:
            continue
        across = [(d, G.edge_face[(d[1], d[0])]) for d in f.darts()]
        if limit is not None:
            tri = [d for d, g in across if G.faces[g].length == 3 and g != f.id]
            if len({G.edge_face[(d[1], d[0])] for d in tri}) > limit:
                out.extend(tri)
        else:
            small = 6 if cls == "g3" else 5
            if any(G.faces[g].length < small and g != f.id for _, g in across):
                out.extend(d for d, _ in across)
    if cls == "gcal" and not out:
        for f in G.faces:
            if f.length == 5 and G.adjacent_3face_count(f) > 3:
                out.extend(
                    d for d in f.darts() if G.faces[G.edge_face[(d[1], d[0])]].length == 3
                )
    return out


def in_class(G: PlaneGraph, cls: str) -> bool:
    rep = G.classify()
    return {
        "g1": rep.in_G1,
        "g2": rep.in_G2,
        "g3": rep.in_G3,
        "gcal": rep.in_Gcal,
        "no4": not rep.has_4cycle,
        "any": True,
    }[cls]


def repair_to_class(G: PlaneGraph, cls: str, rng: random.Random) -> PlaneGraph:
    """Delete edges until ``G`` lies in ``cls`` for its embedding."""
    rot = _rotation_lists(G)
    while True:
        bad = _violations(G, cls)
        if not bad:
            return G
        rng.shuffle(bad)
        for u, v in bad:
            if not _is_bridge(rot, u, v):
                _delete_edge(rot, u, v)
                break
        else:
            raise PreconditionError("cannot repair instance without disconnecting it")
        G = PlaneGraph(rot)


def random_in_class(seed: int, n: int, cls: str, rounds: int = 2) -> PlaneGraph:
    """Random plane graph in ``cls`` (g1, g2, g3, gcal, no4 or any).

    Alternates vertex insertions into random faces with class repair, so
    the result keeps a mix of degrees rather than collapsing to a tree.
    """
    rng = random.Random(seed)
    base = max(3, n // (rounds + 1))
    G = repair_to_class(random_triangulation(seed, base), cls, rng)
    x = G.n
    while x < n:
        rot = _rotation_lists(G)
        step = min(n - x, max(1, (n - base) // rounds))
        for _ in range(step):
            all_faces = PlaneGraph(rot).faces
            faces = [f for f in all_faces if len(set(f.walk)) == f.length >= 3]
            if faces:
                f = rng.choice(faces)
                spots = list(range(f.length))
            else:
                # repair left only faces whose walks repeat vertices
                f = rng.choice([f for f in all_faces if f.length >= 2])
                first = {}
                for i, w in enumerate(f.walk):
                    first.setdefault(w, i)
                spots = sorted(first.values())
            k = len(spots)
            m = rng.randint(min(2, k), min(k, 5))
            chosen = sorted(rng.sample(spots, m))
            _insert_vertex(rot, list(f.walk), chosen, x)
            x += 1
        G = repair_to_class(PlaneGraph(rot), cls, rng)
    return G


def carve(G: PlaneGraph, min_degree: int, covers, seed: int, pair_floor: int = 0) -> PlaneGraph | None:
    """Delete a set of edges chosen by a 0/1 program.

    Every vertex keeps degree at least ``min_degree`` and every edge set in
    ``covers`` loses at least one edge.  With ``pair_floor`` every kept edge
    has endpoint degrees summing to at least that value.  Random objective weights make the
    choice depend on ``seed``.  Returns ``None`` when the program is
    infeasible or the result is disconnected.
    """
    import numpy as np
    from scipy.optimize import Bounds, LinearConstraint, milp

    rng = random.Random(seed)
    edges = G.edges()
    idx = {e: i for i, e in enumerate(edges)}
    rows, lb, ub = [], [], []
    for v in G.vertices:
        row = np.zeros(len(edges))
        for u in G.neighbors(v):
            row[idx[(min(u, v), max(u, v))]] = 1
        rows.append(row)
        lb.append(0)
        ub.append(G.degree(v) - min_degree)
    for cover in covers:
        row = np.zeros(len(edges))
        for u, v in cover:
            row[idx[(min(u, v), max(u, v))]] = 1
        rows.append(row)
        lb.append(1)
        ub.append(np.inf)
    if pair_floor:
        for (u, v), i in idx.items():
            row = np.zeros(len(edges))
            for a in (u, v):
                for b in G.neighbors(a):
                    row[idx[(min(a, b), max(a, b))]] -= 1
            row[i] += pair_floor
            rows.append(row)
            lb.append(pair_floor - G.degree(u) - G.degree(v))
            ub.append(np.inf)
    cost = np.array([rng.random() for _ in edges])
    res = milp(
        cost,
        constraints=LinearConstraint(np.array(rows), lb, ub),
        integrality=np.ones(len(edges)),
        bounds=Bounds(0, 1),
    )
    if res.x is None:
        return None
    rot = _rotation_lists(G)
    for i, (u, v) in enumerate(edges):
        if res.x[i] > 0.5:
            _delete_edge(rot, u, v)
    if len(connected_components(rot)) > 1:
        return None
    return PlaneGraph(rot)


def shuffled_geodesic(seed: int, freq: int, min_degree: int, flips: int = 60) -> PlaneGraph:
    """Geodesic sphere after random edge flips that keep degrees >= min_degree."""
    rng = random.Random(seed)
    G = geodesic(freq)
    rot = _rotation_lists(G)
    for _ in range(flips):
        a, b = rng.choice(G.edges())
        if len(rot[a]) > min_degree and len(rot[b]) > min_degree and _flip(rot, G, a, b):
            G = PlaneGraph(rot)
    return G


def _tri_edges(G: PlaneGraph, f: int) -> list[tuple[int, int]]:
    return list(G.faces[f].darts())


def dense_instance(cls: str, seed: int, base: PlaneGraph | None = None, no_h4: bool = False) -> PlaneGraph | None:
    """Instance of ``cls`` whose minimum degree meets the class's structural floor.

    Floors: g1 5, g2 4, gcal 3, no4 4.  The base triangulation is carved
    with :func:`carve`.  Deleting edges never creates a 3-face, so the
    cover constraints below are exact:

    * g1: each 3-face or one of its 3-face neighbours loses an edge;
    * g2: for each pair of 3-face neighbours, one of the three faces does;
    * gcal: every 3-face loses an edge (no 3-faces remain);
    * no4: every 4-cycle loses an edge.

    ``no_h4`` (gcal only) also forbids edges joining two 3-vertices.
    """
    if base is None:
        if cls == "g1":
            base = geodesic(3)
        elif cls == "g2":
            base = geodesic(2 + seed % 2)
        elif cls == "gcal":
            base = shuffled_geodesic(seed, 2, 4)
        else:
            base = shuffled_geodesic(seed, 2, 5, flips=seed % 7)
    covers = []
    if cls in ("g1", "g2"):
        for f in base.faces:
            if f.length != 3:
                continue
            nbrs = [g for g in base.faces_across(f) if base.faces[g].length == 3 and g != f.id]
            mine = _tri_edges(base, f.id)
            if cls == "g1" and len(nbrs) == 3:
                covers.append(mine + [e for g in nbrs for e in _tri_edges(base, g)])
            elif cls == "g2":
                for i in range(len(nbrs)):
                    for j in range(i + 1, len(nbrs)):
                        covers.append(mine + _tri_edges(base, nbrs[i]) + _tri_edges(base, nbrs[j]))
        floor = 5 if cls == "g1" else 4
    elif cls == "gcal":
        covers = [_tri_edges(base, f.id) for f in base.faces if f.length == 3]
        floor = 3
    elif cls == "no4":
        adj = base.adjacency
        seen = set()
        for w in base.vertices:
            nb = sorted(adj[w])
            for i, a in enumerate(nb):
                for b in nb[i + 1:]:
                    for x in adj[a] & adj[b]:
                        if x <= w:
                            continue
                        key = (w, x, a, b)
                        if key not in seen:
                            seen.add(key)
                            covers.append([(w, a), (a, x), (x, b), (b, w)])
        floor = 4
    else:
        raise PreconditionError(f"unknown class {cls!r}")
    return carve(base, floor, covers, seed, pair_floor=7 if no_h4 and cls == "gcal" else 0)


def dense_g1(seed: int, freq: int = 3) -> PlaneGraph | None:
    """Minimum degree 5 graph in the first class, carved from a geodesic sphere."""
    return dense_instance("g1", seed, geodesic(freq))


# lists and colorings


def uniform_lists(G, colors) -> dict[int, tuple[int, ...]]:
    cs = tuple(sorted(colors))
    return {v: cs for v in _vertices(G)}


def random_lists(G, size: int, palette: int, seed: int) -> dict[int, tuple[int, ...]]:
    rng = random.Random(seed)
    return {v: tuple(sorted(rng.sample(range(1, palette + 1), size))) for v in _vertices(G)}


def _vertices(G):
    return G.vertices if isinstance(G, PlaneGraph) else sorted(G)


def _adj(G) -> Mapping[int, frozenset[int]]:
    return G.adjacency if isinstance(G, PlaneGraph) else G


def degeneracy_order(adj: Mapping[int, frozenset[int]]) -> list[int]:
    """Smallest-last order: each vertex has few neighbours later in the list."""
    deg = {v: len(adj[v]) for v in adj}
    alive = set(adj)
    order = []
    while alive:
        v = min(alive, key=lambda x: (deg[x], x))
        order.append(v)
        alive.remove(v)
        for u in adj[v]:
            if u in alive:
                deg[u] -= 1
    return order[::-1]


def random_coloring(G, lists, seed: int, restarts: int = 200) -> dict[int, int]:
    """Random proper list coloring by randomized greedy with restarts."""
    adj = _adj(G)
    rng = random.Random(seed)
    order = degeneracy_order(adj)
    for _ in range(restarts):
        col: dict[int, int] = {}
        for v in order:
            avail = [c for c in lists[v] if all(col.get(u) != c for u in adj[v])]
            if not avail:
                break
            col[v] = rng.choice(avail)
        else:
            return col
        rng.shuffle(order)
    raise PreconditionError("no proper list coloring found by randomized greedy")


# FamilySpec dispatch

_FAMILIES: dict[str, Callable[..., PlaneGraph]] = {
    "grid": grid,
    "cube": cube,
    "octahedron": octahedron,
    "icosahedron": icosahedron,
    "dodecahedron": dodecahedron,
    "cuboctahedron": cuboctahedron,
    "rhombicuboctahedron": rhombicuboctahedron,
    "icosidodecahedron": icosidodecahedron,
    "truncated-tetrahedron": truncated_tetrahedron,
    "geodesic": geodesic,
    "stacked-diamond-chain": stacked_diamond_chain,
    "fan": fan,
    "triangulated-polygon": triangulated_polygon,
    "path": path,
    "cycle": cycle,
    "random-planar": random_planar,
    "random-triangulation": random_triangulation,
    "random-in-class": random_in_class,
}


def frozen_embed(p: int, k: int) -> PlaneGraph:
    """Plane embedding of the frozen-family graph when it is connected and planar."""
    from .bounded_independence import frozen_family

    w = frozen_family(p, k)
    g = nx.Graph()
    g.add_nodes_from(w.graph)
    g.add_edges_from((u, v) for u in w.graph for v in w.graph[u] if u < v)
    if not nx.is_connected(g):
        raise PreconditionError(f"frozen family graph for p={p}, k={k} is disconnected")
    return from_networkx(g)


_FAMILIES["frozen-family-embed"] = frozen_embed


def families() -> list[str]:
    return sorted(_FAMILIES)


def generate(spec: FamilySpec) -> PlaneGraph:
    try:
        fn = _FAMILIES[spec.family]
    except KeyError:
        raise PreconditionError(f"unknown family {spec.family!r}") from None
    try:
        return fn(**spec.params)
    except TypeError as exc:
        raise PreconditionError(f"bad parameters for {spec.family}: {exc}") from None
