"""Finders for the reducible configurations that drive the recursions.

Every finder is a deterministic scan over vertices and edges in increasing
id order.  ``find_reduction`` applies a strategy's degree floor first and
then its configuration list in fixed order; ``None`` means no configuration
was found.

Path notation: an ``x(p)3``-path is a path on ``p + 2`` vertices whose first
vertex has degree ``x``, whose ``p`` interior vertices have degree 4 and
whose last vertex has degree 3.  Paths are stored as vertex tuples starting
at the shared initial vertex.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Iterator

from .errors import PreconditionError
from .plane_graph import PlaneGraph

DEGREE_FLOOR = {"g1": 4, "g2": 3, "gcal": 2, "no4": 3}
STRATEGY_KINDS = {
    "g1": ("DiamondH",),
    "g2": ("H1", "H2", "H3"),
    "gcal": ("H4", "H5", "H6"),
    "no4": ("Shen",),
}
KINDS = ("LowDegree", "DiamondH", "H1", "H2", "H3", "H4", "H5", "H6", "Shen")

# caps on interior 4-vertices for the path families
H5_MAX_P = 3
H6_MAX_P = 4


@dataclass(frozen=True)
class Configuration:
    """Tagged witness of a reducible structure.

    ``roles`` holds labelled vertices in a fixed order, ``paths`` the
    explicit paths for H5 and H6, ``threshold`` the degree floor for
    LowDegree.  ``trimmed`` marks H5/H6 witnesses produced by
    :func:`minimize_H5` or :func:`minimize_H6`.
    """

    kind: str
    roles: tuple[tuple[str, int], ...] = ()
    paths: tuple[tuple[int, ...], ...] = ()
    threshold: int | None = None
    trimmed: bool = False

    def role(self, name: str) -> int:
        for r, v in self.roles:
            if r == name:
                return v
        raise KeyError(name)

    @property
    def vertices(self) -> tuple[int, ...]:
        seen: dict[int, None] = {}
        for _, v in self.roles:
            seen.setdefault(v)
        for p in self.paths:
            for v in p:
                seen.setdefault(v)
        return tuple(seen)

    def to_text(self) -> str:
        parts = [self.kind]
        parts += [f"{r}={v}" for r, v in self.roles]
        parts += [f"P{i + 1}=" + ",".join(map(str, p)) for i, p in enumerate(self.paths)]
        if self.threshold is not None:
            parts.append(f"threshold={self.threshold}")
        if self.trimmed:
            parts.append("trimmed=true")
        return "; ".join(parts)

    @classmethod
    def from_text(cls, text: str) -> "Configuration":
        items = [s.strip() for s in text.strip().split(";")]
        kind = items[0]
        if kind not in KINDS:
            raise ValueError(f"unknown configuration kind {kind!r}")
        roles, paths = [], []
        threshold, trimmed = None, False
        for item in items[1:]:
            key, _, val = item.partition("=")
            key = key.strip()
            if not _:
                raise ValueError(f"malformed configuration field {item!r}")
            if key == "threshold":
                threshold = int(val)
            elif key == "trimmed":
                trimmed = val.strip() == "true"
            elif key.startswith("P") and key[1:].isdigit():
                paths.append(tuple(int(x) for x in val.split(",")))
            else:
                roles.append((key, int(val)))
        return cls(kind, tuple(roles), tuple(paths), threshold, trimmed)


# small helpers


def _deg(G: PlaneGraph) -> dict[int, int]:
    return {v: len(nb) for v, nb in G.rotation.items()}


def triangles(G: PlaneGraph) -> Iterator[tuple[int, int, int]]:
    """All 3-cycles ``(a, b, c)`` with ``a < b < c`` in lexicographic order."""
    adj = G.adjacency
    for a in G.vertices:
        higher = sorted(u for u in adj[a] if u > a)
        for i, b in enumerate(higher):
            for c in higher[i + 1:]:
                if c in adj[b]:
                    yield (a, b, c)


def diamonds(G: PlaneGraph) -> Iterator[tuple[int, int, int, int]]:
    """Diamonds as ``(a, b, x, y)``: mid-edge ``ab`` (a < b), apexes x, y.

    ``x`` is the apex of the face on the dart ``(a, b)``.
    """
    for a, b in G.edges():
        f1, f2 = G.face_of(a, b), G.face_of(b, a)
        if f1.length != 3 or f2.length != 3 or f1.id == f2.id:
            continue
        x = next(w for w in f1.walk if w not in (a, b))
        y = next(w for w in f2.walk if w not in (a, b))
        if x != y:
            yield (a, b, x, y)


def _key(vertices) -> tuple:
    return (tuple(sorted(vertices)), tuple(vertices))


def _first(candidates) -> Configuration | None:
    best = None
    for key, conf in candidates:
        if best is None or key < best[0]:
            best = (key, conf)
    return None if best is None else best[1]


# individual finders


def find_low_degree(G: PlaneGraph, threshold: int) -> Configuration | None:
    v = min(G.vertices, key=lambda x: (G.degree(x), x))
    if G.degree(v) <= threshold:
        return Configuration("LowDegree", (("v", v),), threshold=threshold)
    return None


def find_diamond_h(G: PlaneGraph) -> Configuration | None:
    deg = _deg(G)

    def gen():
        for a, b, x, y in diamonds(G):
            ds = sorted(deg[w] for w in (a, b, x, y))
            if ds[:3] == [5, 5, 5] and ds[3] <= 6:
                conf = Configuration(
                    "DiamondH", (("mid1", a), ("mid2", b), ("apex1", x), ("apex2", y))
                )
                yield _key((a, b, x, y)), conf

    return _first(gen())


def find_h1(G: PlaneGraph) -> Configuration | None:
    deg = _deg(G)
    for u, v in G.edges():
        if deg[u] == 4 and deg[v] == 4:
            return Configuration("H1", (("u", u), ("v", v)))
    return None


def find_h2(G: PlaneGraph) -> Configuration | None:
    deg = _deg(G)
    for t in triangles(G):
        ds = sorted(deg[w] for w in t)
        if ds == [4, 5, 5]:
            u = next(w for w in t if deg[w] == 4)
            v, w = sorted(x for x in t if x != u)
            return Configuration("H2", (("u", u), ("v", v), ("w", w)))
    return None


def find_h3(G: PlaneGraph) -> Configuration | None:
    deg = _deg(G)

    def gen():
        for t in triangles(G):
            if sorted(deg[w] for w in t) != [4, 5, 6]:
                continue
            u = next(w for w in t if deg[w] == 4)
            v = next(w for w in t if deg[w] == 5)
            w = next(x for x in t if deg[x] == 6)
            for x in sorted(G.adjacency[w]):
                if x not in t and deg[x] == 4:
                    conf = Configuration("H3", (("u", u), ("v", v), ("w", w), ("x", x)))
                    yield _key((u, v, w, x)), conf

    return _first(gen())


def find_h4(G: PlaneGraph) -> Configuration | None:
    deg = _deg(G)
    for u, v in G.edges():
        if deg[u] == 3 and deg[v] == 3:
            return Configuration("H4", (("u", u), ("v", v)))
    return None


def x_p_3_paths(G: PlaneGraph, start: int, max_p: int) -> list[tuple[int, ...]]:
    """All simple paths from ``start`` through 4-vertices ending at a 3-vertex.

    At most ``max_p`` interior vertices; sorted by (length, ids).
    """
    deg = _deg(G)
    out: list[tuple[int, ...]] = []

    def grow(path: list[int]) -> None:
        for x in sorted(G.adjacency[path[-1]]):
            if x in path:
                continue
            if deg[x] == 3:
                out.append(tuple(path + [x]))
            elif deg[x] == 4 and len(path) - 1 < max_p:
                path.append(x)
                grow(path)
                path.pop()

    grow([start])
    out.sort(key=lambda p: (len(p), p))
    return out


def _group_by_second(paths) -> dict[int, list[tuple[int, ...]]]:
    groups: dict[int, list[tuple[int, ...]]] = {}
    for p in paths:
        groups.setdefault(p[1], []).append(p)
    return groups


def _order_paths(paths) -> tuple[tuple[int, ...], ...]:
    return tuple(sorted(paths, key=lambda p: (-len(p), p)))


def find_h5(G: PlaneGraph) -> Configuration | None:
    """Minimum-order H5 witness (two 4(p)3-paths, p <= 3, distinct second vertices)."""
    deg = _deg(G)

    def gen():
        for c in G.vertices:
            if deg[c] != 4:
                continue
            paths = x_p_3_paths(G, c, H5_MAX_P)
            for p1, p2 in combinations(paths, 2):
                if p1[1] == p2[1]:
                    continue
                union = set(p1) | set(p2)
                conf = Configuration("H5", (("v1", c),), _order_paths((p1, p2)))
                yield (len(union), tuple(sorted(union)), conf.paths), conf

    return _first(gen())


def _h6_ok(center_adj: frozenset[int], chosen) -> bool:
    """The extra condition on 5(4)3-paths: a 5(0)3-path to their end is chosen."""
    direct = {p[1] for p in chosen if len(p) == 2}
    for p in chosen:
        if len(p) == 6 and p[-1] not in direct:
            return False
    return True


def _h6_at(G: PlaneGraph, c: int, must_include=None) -> tuple | None:
    groups = _group_by_second(x_p_3_paths(G, c, H6_MAX_P))
    keys = sorted(groups)
    adj_c = G.adjacency[c]
    for combo in combinations(keys, 4):
        if must_include is not None and must_include[1] not in combo:
            continue
        lists = [
            [must_include] if must_include is not None and k == must_include[1] else groups[k]
            for k in combo
        ]
        chosen: list[tuple[int, ...]] = []

        def back(i: int) -> bool:
            if i == len(lists):
                return _h6_ok(adj_c, chosen)
            for p in lists[i]:
                chosen.append(p)
                if back(i + 1):
                    return True
                chosen.pop()
            return False

        if back(0):
            return tuple(chosen)
    return None


def find_h6(G: PlaneGraph) -> Configuration | None:
    deg = _deg(G)
    for c in G.vertices:
        if deg[c] != 5:
            continue
        chosen = _h6_at(G, c)
        if chosen is not None:
            return Configuration("H6", (("v1", c),), _order_paths(chosen))
    return None


def find_shen(G: PlaneGraph) -> Configuration | None:
    """4-vertex on two edge-disjoint 3-faces whose other vertices are mostly 4-vertices."""
    deg = _deg(G)

    def gen():
        for v in G.vertices:
            if deg[v] != 4:
                continue
            tris = sorted(
                {G.faces[f].id for f in G.corner_faces(v) if G.faces[f].length == 3}
            )
            for f, g in combinations(tris, 2):
                e1 = {frozenset(d) for d in G.faces[f].darts()}
                e2 = {frozenset(d) for d in G.faces[g].darts()}
                if e1 & e2:
                    continue
                s1 = sorted(w for w in G.faces[f].walk if w != v)
                s2 = sorted(w for w in G.faces[g].walk if w != v)
                if len(set(s1) | set(s2)) != 4:
                    continue
                if sum(deg[w] != 4 for w in s1 + s2) > 1:
                    continue
                # first triangle all 4-vertices, b1 a 4-vertex of the second
                if any(deg[w] != 4 for w in s1):
                    s1, s2 = s2, s1
                s2.sort(key=lambda w: (deg[w] != 4, w))
                conf = Configuration(
                    "Shen",
                    (("v", v), ("a1", s1[0]), ("a2", s1[1]), ("b1", s2[0]), ("b2", s2[1])),
                )
                yield _key((v, *s1, *s2)), conf

    return _first(gen())


_FINDERS = {
    "DiamondH": find_diamond_h,
    "H1": find_h1,
    "H2": find_h2,
    "H3": find_h3,
    "H4": find_h4,
    "H5": find_h5,
    "H6": find_h6,
    "Shen": find_shen,
}


def find_reduction(G: PlaneGraph, strategy: str) -> Configuration | None:
    """Low-degree vertex below the strategy's floor, else its first configuration."""
    if strategy not in DEGREE_FLOOR:
        raise PreconditionError(f"unknown strategy {strategy!r}")
    low = find_low_degree(G, DEGREE_FLOOR[strategy])
    if low is not None:
        return low
    for kind in STRATEGY_KINDS[strategy]:
        conf = _FINDERS[kind](G)
        if conf is not None:
            return conf
    return None


# facial path search used by long-distance routing


def _facial_continuations(G: PlaneGraph, v: int, u: int, max_len: int = 6):
    """Vertex sequences leaving ``u`` away from ``v`` along 6-faces at edge vu.

    Yields ``(face_id, sequence)`` where the sequence starts after ``u``.
    """
    f = G.face_of(v, u)
    if f.length <= max_len:
        darts = f.darts()
        i = darts.index((v, u))
        k = len(darts)
        yield f.id, [f.walk[(i + 1 + s) % k] for s in range(1, k)]
    g = G.face_of(u, v)
    if g.length <= max_len:
        darts = g.darts()
        j = darts.index((u, v))
        k = len(darts)
        yield g.id, [g.walk[(j - s) % k] for s in range(1, k)]


def find_facial_x_p_3_path(G: PlaneGraph, start_edge: tuple[int, int], max_p: int = H5_MAX_P):
    """Follow the facial walks of the 6-faces at ``start_edge = (v, u)``.

    Returns the unique path ``(u, ..., w)`` ending at a 3-vertex with at
    most ``max_p`` interior 4-vertices, an H5 :class:`Configuration` when
    two different such paths exist, or ``None``.
    """
    v, u = start_edge
    if not G.has_edge(v, u):
        raise PreconditionError(f"{v}-{u} is not an edge")
    if G.degree(u) != 4:
        raise PreconditionError(f"vertex {u} does not have degree 4")
    found: list[tuple[int, ...]] = []
    for _, seq in _facial_continuations(G, v, u):
        path = [u]
        for x in seq:
            if x == v or x in path:
                break
            dx = G.degree(x)
            if dx == 3:
                path.append(x)
                if tuple(path) not in found:
                    found.append(tuple(path))
                break
            if dx == 4 and len(path) - 1 < max_p:
                path.append(x)
                continue
            break
    if not found:
        return None
    if len(found) == 1:
        return found[0]
    return Configuration("H5", (("v1", u),), _order_paths(found[:2]))


# validation and trimming


def _is_path(G: PlaneGraph, p) -> bool:
    return len(set(p)) == len(p) and all(G.has_edge(a, b) for a, b in zip(p, p[1:]))


def _check_x_p_3(G: PlaneGraph, p, x: int, max_p: int) -> bool:
    if not _is_path(G, p) or len(p) < 2 or len(p) - 2 > max_p:
        return False
    return (
        G.degree(p[0]) == x
        and G.degree(p[-1]) == 3
        and all(G.degree(w) == 4 for w in p[1:-1])
    )


def validate_configuration(G: PlaneGraph, conf: Configuration) -> bool:
    """Check a configuration against its kind's defining invariants."""
    try:
        return _validate(G, conf)
    except (KeyError, ValueError, StopIteration):
        return False


def _validate(G: PlaneGraph, conf: Configuration) -> bool:
    deg = _deg(G)
    adj = G.adjacency
    if any(v not in deg for v in conf.vertices):
        return False
    k = conf.kind
    if k == "LowDegree":
        return conf.threshold is not None and deg[conf.role("v")] <= conf.threshold
    if k == "DiamondH":
        a, b = conf.role("mid1"), conf.role("mid2")
        x, y = conf.role("apex1"), conf.role("apex2")
        if (a, b, x, y) not in set(diamonds(G)) and (b, a, y, x) not in set(diamonds(G)):
            return False
        ds = sorted(deg[w] for w in (a, b, x, y))
        return ds[:3] == [5, 5, 5] and ds[3] <= 6
    if k in ("H1", "H4"):
        u, v = conf.role("u"), conf.role("v")
        want = 4 if k == "H1" else 3
        return v in adj[u] and deg[u] == want and deg[v] == want
    if k == "H2":
        u, v, w = conf.role("u"), conf.role("v"), conf.role("w")
        return (
            v in adj[u] and w in adj[u] and w in adj[v]
            and (deg[u], deg[v], deg[w]) == (4, 5, 5)
        )
    if k == "H3":
        u, v, w, x = (conf.role(r) for r in "uvwx")
        return (
            v in adj[u] and w in adj[u] and w in adj[v] and x in adj[w]
            and x not in (u, v)
            and (deg[u], deg[v], deg[w], deg[x]) == (4, 5, 6, 4)
        )
    if k == "Shen":
        v = conf.role("v")
        a1, a2, b1, b2 = (conf.role(r) for r in ("a1", "a2", "b1", "b2"))
        if deg[v] != 4 or len({a1, a2, b1, b2, v}) != 5:
            return False
        tri = [G.faces[f] for f in G.corner_faces(v) if G.faces[f].length == 3]
        sets = [set(f.walk) for f in tri]
        if {v, a1, a2} not in sets or {v, b1, b2} not in sets:
            return False
        return sum(deg[w] != 4 for w in (a1, a2, b1, b2)) <= 1
    if k in ("H5", "H6"):
        c = conf.role("v1")
        want_deg, n_paths, max_p = (4, 2, H5_MAX_P) if k == "H5" else (5, 4, H6_MAX_P)
        if deg[c] != want_deg or len(conf.paths) != n_paths:
            return False
        if conf.trimmed:
            return _validate_trimmed(G, conf, c)
        if any(p[0] != c or not _check_x_p_3(G, p, want_deg, max_p) for p in conf.paths):
            return False
        if len({p[1] for p in conf.paths}) != n_paths:
            return False
        return k == "H5" or _h6_ok(adj[c], conf.paths)
    return False


def _validate_trimmed(G: PlaneGraph, conf: Configuration, c: int) -> bool:
    """Trimmed paths: prefixes starting at c, disjoint apart from c, at most
    four vertices after c, each end either a 3-vertex or adjacent to a vertex
    of a later path."""
    paths = conf.paths
    for i, p in enumerate(paths):
        if p[0] != c or not _is_path(G, p) or len(p) > 5:
            return False
        if any(G.degree(w) != 4 for w in p[1:-1]):
            return False
        later = set().union(*map(set, paths[i + 1:])) - {c} if i + 1 < len(paths) else set()
        if set(p[1:]) & later:
            return False
        for q in paths[:i]:
            if set(p[1:]) & set(q[1:]):
                return False
        if len(p) > 1:
            end = p[-1]
            if G.degree(end) == 3:
                continue
            if G.degree(end) == 4 and G.adjacency[end] & later:
                continue
            return False
    return True


def _trim_sequence(paths) -> tuple[tuple[int, ...], ...]:
    """Cut each path just before its first vertex lying on a later path.

    Paths are processed from last to first, so each cut is made against the
    already trimmed later paths and the cut-off end vertex stays adjacent to
    a vertex that is removed with the configuration.
    """
    out: list[tuple[int, ...]] = []
    later: set[int] = set()
    for p in reversed(paths):
        cut = len(p)
        for j in range(1, len(p)):
            if p[j] in later:
                cut = j
                break
        q = tuple(p[:cut])
        out.append(q)
        later.update(q[1:])
    return tuple(reversed(out))


def _minimize(G: PlaneGraph, conf: Configuration, kind: str) -> Configuration:
    if conf.kind != kind or conf.trimmed or not validate_configuration(G, conf):
        raise PreconditionError(f"not a valid untrimmed {kind} witness")
    c = conf.role("v1")
    best = None
    for order in permutations(_order_paths(conf.paths)):
        trimmed = _trim_sequence(order)
        cand = Configuration(kind, conf.roles, trimmed, trimmed=True)
        if not _validate_trimmed(G, cand, c):
            continue
        size = len(cand.vertices)
        key = (size, tuple(sorted(cand.vertices)))
        if best is None or key < best[0]:
            best = (key, cand)
    if best is None:
        raise PreconditionError(f"{kind} witness admits no valid trimming")
    return best[1]


def minimize_H5(G: PlaneGraph, witness: Configuration) -> Configuration:
    """Trim an H5 witness so the two paths meet only at the initial vertex."""
    return _minimize(G, witness, "H5")


def minimize_H6(G: PlaneGraph, witness: Configuration) -> Configuration:
    """Trim an H6 witness so no path meets a later one."""
    return _minimize(G, witness, "H6")


# coverage, used to localise negative charge


def covered_vertices(G: PlaneGraph, strategy: str) -> set[int]:
    """Vertices lying on at least one configuration of the strategy's list."""
    deg = _deg(G)
    out: set[int] = set()
    for kind in STRATEGY_KINDS[strategy]:
        if kind == "DiamondH":
            for a, b, x, y in diamonds(G):
                ds = sorted(deg[w] for w in (a, b, x, y))
                if ds[:3] == [5, 5, 5] and ds[3] <= 6:
                    out.update((a, b, x, y))
        elif kind in ("H1", "H4"):
            want = 4 if kind == "H1" else 3
            for u, v in G.edges():
                if deg[u] == want and deg[v] == want:
                    out.update((u, v))
        elif kind == "H2":
            for t in triangles(G):
                if sorted(deg[w] for w in t) == [4, 5, 5]:
                    out.update(t)
        elif kind == "H3":
            for t in triangles(G):
                if sorted(deg[w] for w in t) == [4, 5, 6]:
                    w = next(x for x in t if deg[x] == 6)
                    xs = [x for x in G.adjacency[w] if x not in t and deg[x] == 4]
                    if xs:
                        out.update(t)
                        out.update(xs)
        elif kind == "H5":
            for c in G.vertices:
                if deg[c] == 4:
                    paths = x_p_3_paths(G, c, H5_MAX_P)
                    if len(_group_by_second(paths)) >= 2:
                        for p in paths:
                            out.update(p)
        elif kind == "H6":
            for c in G.vertices:
                if deg[c] != 5:
                    continue
                for p in x_p_3_paths(G, c, H6_MAX_P):
                    if not set(p) <= out and _h6_at(G, c, must_include=p) is not None:
                        out.update(p)
        elif kind == "Shen":
            for v in G.vertices:
                if deg[v] != 4:
                    continue
                sub = _shen_at(G, v)
                if sub:
                    out.update(sub)
    return out


def _shen_at(G: PlaneGraph, v: int) -> set[int]:
    deg = _deg(G)
    tris = sorted({f for f in G.corner_faces(v) if G.faces[f].length == 3})
    got: set[int] = set()
    for f, g in combinations(tris, 2):
        e1 = {frozenset(d) for d in G.faces[f].darts()}
        e2 = {frozenset(d) for d in G.faces[g].darts()}
        if e1 & e2:
            continue
        others = (set(G.faces[f].walk) | set(G.faces[g].walk)) - {v}
        if len(others) == 4 and sum(deg[w] != 4 for w in others) <= 1:
            got |= others | {v}
    return got
