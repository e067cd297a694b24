"""Recursive recoloring for the planar classes plus the degenerate baseline.

Each strategy repeatedly finds a reduction (a low-degree vertex or a
configuration), deletes it and continues on the components that remain.
Deleted vertices are then added back in reverse, each group in its own
fixed order, with :func:`~planrecolor.recolor_core.extend_vertex` against
the vertices present at that moment.  Every vertex depends only on the
steps of its present neighbours, so processing the components one after
another gives the same per-vertex counts as the nested recursion.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Mapping

from .config_finder import (
    Configuration,
    find_reduction,
    minimize_H5,
    minimize_H6,
)
from .errors import PreconditionError, StructureNotFound
from .plane_graph import PlaneGraph, connected_components
from .recolor_core import (
    RecolorSequence,
    adjacency,
    extend_vertex,
    extension_bound,
    validate,
)

log = logging.getLogger(__name__)

STRATEGIES = ("g1", "g2", "gcal", "no4")
BUDGETS = {"g1": 190, "g2": 13, "gcal": 242, "no4": 29}
LIST_FLOORS = {"g1": 10, "g2": 9, "gcal": 7, "no4": 8}
_CLASS_FLAG = {"g1": "in_G1", "g2": "in_G2", "gcal": "in_Gcal"}


@dataclass
class BudgetCertificate:
    strategy: str
    counts: dict[int, int]
    budget: int
    vertex_bounds: dict[int, int] = field(default_factory=dict)
    reductions: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def max_count(self) -> int:
        return max(self.counts.values(), default=0)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    @property
    def ok(self) -> bool:
        within = all(self.counts[v] <= b for v, b in self.vertex_bounds.items())
        return within and self.max_count <= self.budget and self.total <= self.budget * len(self.counts)

    def to_text(self) -> str:
        lines = [
            f"strategy {self.strategy}",
            f"budget {self.budget}",
            f"max_count {self.max_count}",
            f"total {self.total}",
            f"ok {'true' if self.ok else 'false'}",
        ]
        for v in sorted(self.counts):
            b = self.vertex_bounds.get(v)
            lines.append(f"count {v} {self.counts[v]}" + (f" {b}" if b is not None else ""))
        lines += [f"reduction {r}" for r in self.reductions]
        lines += [f"note {n}" for n in self.notes]
        return "\n".join(lines)


def in_strategy_class(G: PlaneGraph, strategy: str) -> bool:
    rep = G.classify()
    if strategy == "no4":
        return not rep.has_4cycle
    return getattr(rep, _CLASS_FLAG[strategy])


def readd_order(G: PlaneGraph, conf: Configuration) -> list[int]:
    """Deleted vertices of a reduction in the order they are added back."""
    k = conf.kind
    r = conf.role
    if k == "LowDegree":
        return [r("v")]
    if k == "DiamondH":
        mids, apexes = [r("mid1"), r("mid2")], [r("apex1"), r("apex2")]
        quad = mids + apexes
        low = [w for w in quad if G.degree(w) == 6]
        v1 = low[0] if low else mids[0]
        if v1 in mids:
            return [v1, mids[1 - mids.index(v1)]] + apexes
        return [v1, apexes[1 - apexes.index(v1)]] + mids
    if k == "H1":
        return [r("v"), r("u")]
    if k == "H2":
        return [r("v"), r("w"), r("u")]
    if k == "H3":
        return [r("w"), r("v"), r("x"), r("u")]
    if k == "H4":
        return [r("v"), r("u")]
    if k in ("H5", "H6"):
        order = [r("v1")]
        for p in conf.paths:
            order += [w for w in p[1:] if w not in order]
        return order
    if k == "Shen":
        return [r("a1"), r("a2"), r("b1"), r("v")]
    raise ValueError(f"unknown configuration kind {k!r}")


def _trimmed(G: PlaneGraph, conf: Configuration, notes: list[str]) -> Configuration:
    if conf.kind not in ("H5", "H6") or conf.trimmed:
        return conf
    try:
        return minimize_H5(G, conf) if conf.kind == "H5" else minimize_H6(G, conf)
    except PreconditionError:
        notes.append(f"{conf.kind} witness at {conf.role('v1')} kept untrimmed")
        return conf


def _check_inputs(G: PlaneGraph, L, alpha, beta, floor: int) -> None:
    for name, col in (("alpha", alpha), ("beta", beta)):
        bad = validate(G, L, col)
        if bad:
            raise PreconditionError(f"{name} is not a proper L-coloring: {bad}")
    short = [v for v in G.vertices if len(set(L[v])) < floor]
    if short:
        raise PreconditionError(f"list of vertex {short[0]} has fewer than {floor} colors")


def _rebuild(adj: Mapping[int, frozenset[int]], L, alpha, beta, order: list[int]) -> tuple[RecolorSequence, dict[int, int]]:
    """Add vertices in ``order`` one at a time; also returns each vertex's extension bound."""
    seq = RecolorSequence({})
    present: set[int] = set()
    bounds: dict[int, int] = {}
    for v in order:
        nbrs = adj[v] & present
        t = sum(1 for u, _, _ in seq.steps if u in nbrs)
        bounds[v] = extension_bound(t, len(set(L[v])), len(nbrs))
        seq = extend_vertex({v: nbrs}, L, v, seq, alpha[v], beta[v])
        present.add(v)
    return seq, bounds


def recolor(G: PlaneGraph, L, alpha, beta, strategy: str) -> tuple[RecolorSequence, BudgetCertificate]:
    """Recoloring sequence from ``alpha`` to ``beta`` with a per-vertex budget certificate.

    Raises :class:`StructureNotFound` with the offending subgraph when some
    subinstance has no reduction.
    """
    if strategy not in STRATEGIES:
        raise PreconditionError(f"unknown strategy {strategy!r}")
    _check_inputs(G, L, alpha, beta, LIST_FLOORS[strategy])
    notes: list[str] = []
    if not in_strategy_class(G, strategy):
        msg = f"input graph is outside the class for strategy {strategy}"
        log.warning(msg)
        notes.append(msg)

    reductions: list[str] = []
    peel: list[list[int]] = []
    work = [G]
    while work:
        H = work.pop()
        if H.n == 1:
            peel.append([H.vertices[0]])
            continue
        conf = find_reduction(H, strategy)
        if conf is None:
            raise StructureNotFound(
                f"no reduction for strategy {strategy} on a subgraph with {H.n} vertices",
                graph=H,
                strategy=strategy,
            )
        conf = _trimmed(H, conf, notes)
        group = readd_order(H, conf)
        reductions.append(conf.to_text())
        peel.append(group)
        comps = H.split_delete(group)
        for C in comps:
            if C.n > 1 and not in_strategy_class(C, strategy):
                notes.append(
                    f"subgraph on {C.n} vertices left the class after deleting {','.join(map(str, group))}"
                )
        work.extend(reversed(comps))

    order = [v for group in reversed(peel) for v in group]
    seq, bounds = _rebuild(G.adjacency, L, alpha, beta, order)
    cert = BudgetCertificate(strategy, dict(seq.counts), BUDGETS[strategy], bounds, reductions, notes)
    return seq, cert


def degeneracy_peel(adj: Mapping[int, frozenset[int]], d: int) -> list[int] | None:
    """Repeatedly remove a smallest-degree vertex; ``None`` if some step exceeds ``d``."""
    deg = {v: len(nb) for v, nb in adj.items()}
    alive = set(adj)
    out = []
    while alive:
        v = min(alive, key=lambda x: (deg[x], x))
        if deg[v] > d:
            return None
        out.append(v)
        alive.discard(v)
        for u in adj[v]:
            if u in alive:
                deg[u] -= 1
    return out


def recolor_degenerate(G, L, alpha, beta, d: int) -> tuple[RecolorSequence, BudgetCertificate]:
    """Baseline for d-degenerate graphs with lists of size at least 2d+2; budget d+1."""
    adj = adjacency(G)
    for name, col in (("alpha", alpha), ("beta", beta)):
        bad = validate(adj, L, col)
        if bad:
            raise PreconditionError(f"{name} is not a proper L-coloring: {bad}")
    short = [v for v in sorted(adj) if len(set(L[v])) < 2 * d + 2]
    if short:
        raise PreconditionError(f"list of vertex {short[0]} has fewer than {2 * d + 2} colors")
    peel = degeneracy_peel(adj, d)
    if peel is None:
        raise PreconditionError(f"graph is not {d}-degenerate")
    order = list(reversed(peel))
    seq, bounds = _rebuild(adj, L, alpha, beta, order)
    comps = len(connected_components(adj))
    cert = BudgetCertificate(f"degenerate{d}", dict(seq.counts), d + 1, bounds,
                             notes=[f"{comps} component(s)"] if comps > 1 else [])
    return seq, cert
