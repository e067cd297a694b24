"""Plane graphs given by rotation systems.

A plane embedding is stored as a rotation system: for every vertex the
clockwise cyclic order of its neighbours.  Faces are traced with the
next-edge rule: after the dart ``(u, v)`` the walk continues with
``(v, w)`` where ``w`` follows ``u`` in the rotation of ``v``.  A cut edge
is traversed twice by the face that contains it, so it contributes two to
that face's length.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .errors import EmbeddingError

Dart = tuple[int, int]


@dataclass(frozen=True)
class Face:
    """A face with its closed boundary walk.

    ``walk[i] -> walk[i+1]`` (cyclically) are the darts of the face.  For the
    single face of a one-vertex graph the walk is ``(v,)`` and the length 0.
    """

    id: int
    walk: tuple[int, ...]
    length: int

    def darts(self) -> list[Dart]:
        if self.length == 0:
            return []
        w = self.walk
        return [(w[i], w[(i + 1) % len(w)]) for i in range(len(w))]


@dataclass(frozen=True)
class ClassReport:
    min_degree: int
    in_G1: bool
    in_G2: bool
    in_G3: bool
    in_Gcal: bool
    has_4cycle: bool

    def to_text(self) -> str:
        def b(x):
            return "true" if x else "false"

        return "\n".join(
            [
                f"min_degree: {self.min_degree}",
                f"in_G1: {b(self.in_G1)}",
                f"in_G2: {b(self.in_G2)}",
                f"in_G3: {b(self.in_G3)}",
                f"in_Gcal: {b(self.in_Gcal)}",
                f"has_4cycle: {b(self.has_4cycle)}",
            ]
        )


class PlaneGraph:
    """Immutable connected simple plane graph.

    Vertex ids are arbitrary non-negative integers; after
    :meth:`delete_vertices` the surviving vertices keep their ids.
    """

    def __init__(self, rotation: Mapping[int, Sequence[int]]):
        rot = {int(v): tuple(int(u) for u in nb) for v, nb in rotation.items()}
        _check_rotation(rot)
        self.rotation: dict[int, tuple[int, ...]] = rot
        self._index = {
            v: {u: i for i, u in enumerate(nb)} for v, nb in rot.items()
        }
        self.adjacency: dict[int, frozenset[int]] = {
            v: frozenset(nb) for v, nb in rot.items()
        }
        self.faces: tuple[Face, ...]
        self.edge_face: dict[Dart, int]
        self._trace_faces()
        euler = self.n - self.num_edges + len(self.faces)
        if euler != 2:
            genus = (2 - euler) // 2
            raise EmbeddingError(
                f"rotation system is not planar (Euler characteristic {euler}, genus {genus})"
            )

    # basic queries

    @property
    def n(self) -> int:
        return len(self.rotation)

    @property
    def vertices(self) -> list[int]:
        return sorted(self.rotation)

    @property
    def num_edges(self) -> int:
        return sum(len(nb) for nb in self.rotation.values()) // 2

    def degree(self, v: int) -> int:
        return len(self.rotation[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.rotation[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency.get(u, ())

    def edges(self) -> list[tuple[int, int]]:
        return sorted((u, v) for u, nb in self.rotation.items() for v in nb if u < v)

    def min_degree(self) -> int:
        return min(len(nb) for nb in self.rotation.values())

    def next_dart(self, dart: Dart) -> Dart:
        u, v = dart
        rv = self.rotation[v]
        return (v, rv[(self._index[v][u] + 1) % len(rv)])

    def face_of(self, u: int, v: int) -> Face:
        """Face containing the dart ``(u, v)``."""
        return self.faces[self.edge_face[(u, v)]]

    def corner_faces(self, v: int) -> list[int]:
        """Face ids at the corners of ``v`` in rotation order.

        Corner ``i`` lies between ``rotation[v][i]`` and ``rotation[v][i+1]``.
        """
        rv = self.rotation[v]
        if not rv:
            return [0]
        return [self.edge_face[(v, rv[(i + 1) % len(rv)])] for i in range(len(rv))]

    def _trace_faces(self) -> None:
        faces: list[Face] = []
        edge_face: dict[Dart, int] = {}
        if self.num_edges == 0:
            (v,) = self.rotation
            self.faces = (Face(0, (v,), 0),)
            self.edge_face = {}
            return
        for u in sorted(self.rotation):
            for v in self.rotation[u]:
                if (u, v) in edge_face:
                    continue
                fid = len(faces)
                walk = []
                d = (u, v)
                while d not in edge_face:
                    edge_face[d] = fid
                    walk.append(d[0])
                    d = self.next_dart(d)
                faces.append(Face(fid, tuple(walk), len(walk)))
        self.faces = tuple(faces)
        self.edge_face = edge_face

    # face adjacency

    def faces_across(self, f: Face | int) -> list[int]:
        """Face ids on the other side of each dart of ``f`` (with repeats)."""
        face = self.faces[f] if isinstance(f, int) else f
        return [self.edge_face[(b, a)] for a, b in face.darts()]

    def adjacent_3face_count(self, f: Face | int) -> int:
        """Number of distinct 3-faces other than ``f`` sharing an edge with ``f``."""
        face = self.faces[f] if isinstance(f, int) else f
        return len(
            {g for g in self.faces_across(face) if g != face.id and self.faces[g].length == 3}
        )

    def classify(self) -> ClassReport:
        tri = [f for f in self.faces if f.length == 3]
        adj_counts = [self.adjacent_3face_count(f) for f in tri]
        in_g1 = all(c <= 2 for c in adj_counts)
        in_g2 = all(c <= 1 for c in adj_counts)
        in_g3 = True
        ok_cal = True
        for f in tri:
            for g in self.faces_across(f):
                if g == f.id:
                    continue
                length = self.faces[g].length
                if length < 6:
                    in_g3 = False
                if length < 5:
                    ok_cal = False
        for f in self.faces:
            if f.length == 5 and self.adjacent_3face_count(f) > 3:
                ok_cal = False
        return ClassReport(
            min_degree=self.min_degree(),
            in_G1=in_g1,
            in_G2=in_g2,
            in_G3=in_g3,
            in_Gcal=ok_cal,
            has_4cycle=has_4cycle(self.adjacency),
        )

    # deletion

    def restricted_rotation(self, removed: Iterable[int]) -> dict[int, tuple[int, ...]]:
        gone = set(removed)
        return {
            v: tuple(u for u in nb if u not in gone)
            for v, nb in self.rotation.items()
            if v not in gone
        }

    def delete_vertices(self, removed: Iterable[int]) -> "PlaneGraph":
        """The plane graph ``G - S`` with the restricted rotation system."""
        rot = self.restricted_rotation(removed)
        if not rot:
            raise EmbeddingError("deleting these vertices leaves an empty graph")
        if len(connected_components(rot)) > 1:
            raise EmbeddingError("deleting these vertices disconnects the graph")
        return PlaneGraph(rot)

    def split_delete(self, removed: Iterable[int]) -> list["PlaneGraph"]:
        """Components of ``G - S`` as separate plane graphs (possibly none)."""
        rot = self.restricted_rotation(removed)
        return [
            PlaneGraph({v: rot[v] for v in comp}) for comp in connected_components(rot)
        ]

    def __repr__(self) -> str:
        return f"PlaneGraph(n={self.n}, m={self.num_edges}, faces={len(self.faces)})"

    def __eq__(self, other) -> bool:
        return isinstance(other, PlaneGraph) and self.rotation == other.rotation

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.rotation.items())))


def build(rotation: Mapping[int, Sequence[int]]) -> PlaneGraph:
    """Build a plane graph from a clockwise rotation system."""
    return PlaneGraph(rotation)


def _check_rotation(rot: dict[int, tuple[int, ...]]) -> None:
    if not rot:
        raise EmbeddingError("empty rotation system")
    for v, nb in rot.items():
        if v < 0:
            raise EmbeddingError(f"negative vertex id {v}")
        if v in nb:
            raise EmbeddingError(f"self-loop at vertex {v}")
        if len(set(nb)) != len(nb):
            raise EmbeddingError(f"repeated neighbor in rotation of vertex {v}")
        for u in nb:
            if u not in rot:
                raise EmbeddingError(f"edge {v}-{u} leads to unknown vertex {u}")
            if v not in rot[u]:
                raise EmbeddingError(f"asymmetric rotation: {u} in rotation of {v} but not vice versa")
    if len(connected_components(rot)) > 1:
        raise EmbeddingError("graph is disconnected")


def connected_components(adj: Mapping[int, Iterable[int]]) -> list[list[int]]:
    """Connected components as sorted vertex lists, ordered by smallest vertex."""
    seen: set[int] = set()
    comps = []
    for s in sorted(adj):
        if s in seen:
            continue
        seen.add(s)
        comp = [s]
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    comp.append(y)
                    queue.append(y)
        comps.append(sorted(comp))
    return comps


def has_4cycle(adj: Mapping[int, Iterable[int]]) -> bool:
    """True iff the graph contains a 4-cycle as a subgraph.

    A 4-cycle exists exactly when two distinct vertices have two common
    neighbours.
    """
    seen_pairs: set[tuple[int, int]] = set()
    for w in adj:
        for a, b in combinations(sorted(adj[w]), 2):
            if (a, b) in seen_pairs:
                return True
            seen_pairs.add((a, b))
    return False
