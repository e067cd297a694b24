"""Line-oriented text formats.

Blank lines and lines starting with ``#`` are ignored everywhere.

* rotation: ``plane <n>`` then ``v: u1 u2 ...`` in clockwise order
* graph: ``graph <n>`` then ``v: u1 u2 ...`` (no embedding)
* lists: ``v: c1 c2 ...``
* coloring: ``v c``
* sequence: ``seq <n> <steps>``, ``checksum <start> <end>``, ``start v c``
  lines for the initial coloring, then ``v old new`` lines
"""
from __future__ import annotations

import zlib
from typing import Iterable, Mapping

from .errors import EmbeddingError, ParseError
from .plane_graph import PlaneGraph
from .recolor_core import RecolorSequence


def _lines(text: str) -> list[tuple[int, list[str]]]:
    out = []
    for no, raw in enumerate(text.splitlines(), 1):
        s = raw.split("#", 1)[0].strip()
        if s:
            out.append((no, s.split()))
    return out


def _int(tok: str, no: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"line {no}: expected an integer, got {tok!r}") from None


def _header(lines, word: str, arity: int) -> list[int]:
    if not lines:
        raise ParseError(f"empty input, expected '{word}' header")
    no, toks = lines[0]
    if toks[0] != word or len(toks) != arity + 1:
        raise ParseError(f"line {no}: expected header '{word}' with {arity} number(s)")
    return [_int(t, no) for t in toks[1:]]


def _vertex_lines(lines) -> dict[int, list[int]]:
    out: dict[int, list[int]] = {}
    for no, toks in lines:
        if not toks[0].endswith(":"):
            raise ParseError(f"line {no}: expected 'v: ...'")
        v = _int(toks[0][:-1], no)
        if v in out:
            raise ParseError(f"line {no}: vertex {v} listed twice")
        out[v] = [_int(t, no) for t in toks[1:]]
    return out


def _emit_vertex_lines(mapping: Mapping[int, Iterable[int]]) -> list[str]:
    return [f"{v}: " + " ".join(map(str, mapping[v])) if mapping[v] else f"{v}:" for v in sorted(mapping)]


# rotation / graph


def parse_rotation(text: str) -> PlaneGraph:
    lines = _lines(text)
    (n,) = _header(lines, "plane", 1)
    rot = _vertex_lines(lines[1:])
    if len(rot) != n:
        raise ParseError(f"header says {n} vertices, found {len(rot)}")
    try:
        return PlaneGraph(rot)
    except EmbeddingError as exc:
        raise ParseError(f"invalid rotation system: {exc}") from None


def emit_rotation(G: PlaneGraph) -> str:
    return "\n".join([f"plane {G.n}"] + _emit_vertex_lines(G.rotation)) + "\n"


def parse_graph(text: str) -> dict[int, frozenset[int]]:
    """Abstract graph; a rotation file is accepted too."""
    lines = _lines(text)
    if lines and lines[0][1][0] == "plane":
        return dict(parse_rotation(text).adjacency)
    (n,) = _header(lines, "graph", 1)
    raw = _vertex_lines(lines[1:])
    if len(raw) != n:
        raise ParseError(f"header says {n} vertices, found {len(raw)}")
    for v, nb in raw.items():
        for u in nb:
            if u not in raw or v not in raw[u]:
                raise ParseError(f"edge {v}-{u} is not listed symmetrically")
            if u == v:
                raise ParseError(f"self-loop at vertex {v}")
    return {v: frozenset(nb) for v, nb in raw.items()}


def emit_graph(adj: Mapping[int, Iterable[int]]) -> str:
    return "\n".join([f"graph {len(adj)}"] + _emit_vertex_lines({v: sorted(nb) for v, nb in adj.items()}))


def load_graph_any(text: str):
    """PlaneGraph for rotation files, adjacency mapping for abstract graphs."""
    lines = _lines(text)
    if lines and lines[0][1][0] == "plane":
        return parse_rotation(text)
    return parse_graph(text)


# lists / colorings


def parse_lists(text: str) -> dict[int, tuple[int, ...]]:
    out = {}
    for v, cs in _vertex_lines(_lines(text)).items():
        if not cs:
            raise ParseError(f"vertex {v} has an empty list")
        out[v] = tuple(sorted(set(cs)))
    return out


def emit_lists(L: Mapping[int, Iterable[int]]) -> str:
    return "\n".join(_emit_vertex_lines({v: sorted(set(cs)) for v, cs in L.items()})) + "\n"


def parse_coloring(text: str) -> dict[int, int]:
    out: dict[int, int] = {}
    for no, toks in _lines(text):
        if len(toks) != 2:
            raise ParseError(f"line {no}: expected 'v c'")
        v, c = _int(toks[0], no), _int(toks[1], no)
        if v in out:
            raise ParseError(f"line {no}: vertex {v} colored twice")
        out[v] = c
    return out


def emit_coloring(c: Mapping[int, int]) -> str:
    return "\n".join(f"{v} {c[v]}" for v in sorted(c)) + "\n"


def coloring_checksum(c: Mapping[int, int]) -> str:
    return f"{zlib.crc32(emit_coloring(c).encode()):08x}"


# sequences


def emit_sequence(seq: RecolorSequence) -> str:
    lines = [
        f"seq {len(seq.start)} {len(seq.steps)}",
        f"checksum {coloring_checksum(seq.start)} {coloring_checksum(seq.end)}",
    ]
    lines += [f"start {v} {seq.start[v]}" for v in sorted(seq.start)]
    lines += [f"{v} {a} {b}" for v, a, b in seq.steps]
    return "\n".join(lines) + "\n"


def parse_sequence(text: str) -> RecolorSequence:
    lines = _lines(text)
    n, m = _header(lines, "seq", 2)
    start: dict[int, int] = {}
    steps = []
    checksum = None
    for no, toks in lines[1:]:
        if toks[0] == "checksum":
            if len(toks) != 3:
                raise ParseError(f"line {no}: expected 'checksum <start> <end>'")
            checksum = (toks[1], toks[2], no)
        elif toks[0] == "start":
            if len(toks) != 3:
                raise ParseError(f"line {no}: expected 'start v c'")
            start[_int(toks[1], no)] = _int(toks[2], no)
        elif len(toks) == 3:
            steps.append(tuple(_int(t, no) for t in toks))
        else:
            raise ParseError(f"line {no}: expected 'v old new'")
    if len(start) != n:
        raise ParseError(f"header says {n} vertices, found {len(start)} start lines")
    if len(steps) != m:
        raise ParseError(f"header says {m} steps, found {len(steps)}")
    seq = RecolorSequence(start, tuple(steps))
    if checksum is not None:
        a, b, no = checksum
        if a != coloring_checksum(seq.start) or b != coloring_checksum(seq.end):
            raise ParseError(f"line {no}: checksum does not match the sequence")
    return seq
