"""Balanced charging, diamond statistics and the three discharging plans.

All charges are integers counting sixths, so every transfer (1/6, 1/3,
1/2, 2/3) is exact.  Elements are addressed as ``("vertex", v)`` or
``("face", f)``.

Plans:

* ``T1`` (minimum degree 5, first class): every vertex pays 1/3 to each
  incident 3-face corner; a 6-vertex pays 1/6 and a 7+-vertex 1/3 to each
  5-neighbour ``u`` such that ``vu`` is the mid-edge of a special diamond at
  the payer.
* ``T2`` (minimum degree 4, second class): a 5-vertex pays 1/3 per 3-face
  corner; a 6+-vertex pays a 3-face 2/3, 1/2 or 1/3 depending on the
  degrees of the face's other two vertices.
* ``T4`` (minimum degree 3, class of triangles beside 5+-faces): a
  5+-vertex pays 1/3 through every incident edge, routed to a 3-vertex
  directly or along a facial path of 4-vertices; faces pay adjacent 3-faces
  and (7+-faces) nearby 3-vertices.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .config_finder import Configuration, find_facial_x_p_3_path
from .plane_graph import PlaneGraph

Element = tuple[str, int]
PLANS = ("T1", "T2", "T4")
PLAN_HYPOTHESIS = {"T1": (5, "in_G1"), "T2": (4, "in_G2"), "T4": (3, "in_Gcal")}


@dataclass
class ChargeLedger:
    vertex_charge: dict[int, int]
    face_charge: dict[int, int]

    @property
    def total(self) -> int:
        return sum(self.vertex_charge.values()) + sum(self.face_charge.values())

    def get(self, el: Element) -> int:
        kind, i = el
        return self.vertex_charge[i] if kind == "vertex" else self.face_charge[i]

    def add(self, el: Element, amount: int) -> None:
        kind, i = el
        if kind == "vertex":
            self.vertex_charge[i] += amount
        else:
            self.face_charge[i] += amount

    def copy(self) -> "ChargeLedger":
        return ChargeLedger(dict(self.vertex_charge), dict(self.face_charge))


@dataclass
class DiamondStats:
    w_t: dict[int, int]
    w_d: dict[int, int]

    def w(self, v: int) -> int:
        return self.w_t[v] + self.w_d[v]


@dataclass(frozen=True)
class Transfer:
    source: Element
    sink: Element
    amount: int
    rule: str
    path: tuple[int, ...] | None = None

    def to_text(self) -> str:
        s = f"transfer {self.rule} {self.source[0]} {self.source[1]} -> {self.sink[0]} {self.sink[1]} {self.amount}"
        if self.path:
            s += " path " + ",".join(map(str, self.path))
        return s


@dataclass
class DischargeReport:
    plan: str
    ledger: ChargeLedger
    negative_elements: list[Element]
    transfers: list[Transfer]
    hypothesis_ok: bool
    notes: list[str] = field(default_factory=list)
    h5_witnesses: list[Configuration] = field(default_factory=list)

    def to_text(self) -> str:
        lines = [f"plan {self.plan}", f"hypothesis {'ok' if self.hypothesis_ok else 'violated'}"]
        for v in sorted(self.ledger.vertex_charge):
            lines.append(f"vertex {v} {self.ledger.vertex_charge[v]}")
        for f in sorted(self.ledger.face_charge):
            lines.append(f"face {f} {self.ledger.face_charge[f]}")
        lines.append(f"total {self.ledger.total}")
        lines.append(
            "negative " + " ".join(f"{k}:{i}" for k, i in self.negative_elements)
        )
        lines += [t.to_text() for t in self.transfers]
        lines += [f"witness {c.to_text()}" for c in self.h5_witnesses]
        lines += [f"note {n}" for n in self.notes]
        return "\n".join(lines)


def balanced_charges(G: PlaneGraph) -> ChargeLedger:
    """Vertex charge d(v)-4 and face charge d(f)-4, in sixths."""
    return ChargeLedger(
        {v: 6 * (G.degree(v) - 4) for v in G.vertices},
        {f.id: 6 * (f.length - 4) for f in G.faces},
    )


def _apex(G: PlaneGraph, face_id: int, a: int, b: int) -> int:
    return next(w for w in G.faces[face_id].walk if w not in (a, b))


def special_mid_edges(G: PlaneGraph, v: int) -> list[tuple[int, bool]]:
    """Mid-edges ``vu`` of diamonds at ``v`` whose diamond is special at ``v``.

    Returns ``(u, ambiguous)`` pairs; ``ambiguous`` is set when both other
    diamond edges at ``v`` lie on 4+-faces.
    """
    out = []
    for u in G.neighbors(v):
        f1, f2 = G.edge_face[(v, u)], G.edge_face[(u, v)]
        if f1 == f2 or G.faces[f1].length != 3 or G.faces[f2].length != 3:
            continue
        x, y = _apex(G, f1, v, u), _apex(G, f2, v, u)
        if x == y:
            continue
        flags = []
        for w in (x, y):
            sides = (G.faces[G.edge_face[(v, w)]], G.faces[G.edge_face[(w, v)]])
            flags.append(any(s.length >= 4 for s in sides))
        if any(flags):
            out.append((u, all(flags)))
    return out


def diamond_stats(G: PlaneGraph) -> DiamondStats:
    w_t, w_d = {}, {}
    for v in G.vertices:
        w_t[v] = sum(1 for f in G.corner_faces(v) if G.faces[f].length == 3) if G.degree(v) else 0
        w_d[v] = len(special_mid_edges(G, v))
    return DiamondStats(w_t, w_d)


def _hypothesis(G: PlaneGraph, plan: str) -> bool:
    floor, flag = PLAN_HYPOTHESIS[plan]
    return G.min_degree() >= floor and getattr(G.classify(), flag)


def run_discharge(G: PlaneGraph, plan: str) -> DischargeReport:
    """Apply a plan's rules to the balanced charges and audit the result."""
    if plan not in PLANS:
        raise ValueError(f"unknown plan {plan!r}")
    ledger = balanced_charges(G)
    transfers: list[Transfer] = []
    notes: list[str] = []
    witnesses: list[Configuration] = []

    def send(src: Element, dst: Element, amount: int, rule: str, path=None) -> None:
        ledger.add(src, -amount)
        ledger.add(dst, amount)
        transfers.append(Transfer(src, dst, amount, rule, path))

    if plan == "T1":
        _plan_t1(G, send, notes)
    elif plan == "T2":
        _plan_t2(G, send)
    else:
        _plan_t4(G, send, notes, witnesses)

    ok = _hypothesis(G, plan)
    if not ok:
        notes.append("input is outside the plan's hypothesis")
    negative = [("vertex", v) for v in G.vertices if ledger.vertex_charge[v] < 0]
    negative += [("face", f.id) for f in G.faces if ledger.face_charge[f.id] < 0]
    return DischargeReport(plan, ledger, negative, transfers, ok, notes, witnesses)


def _corner_sends(G: PlaneGraph, v: int, send, amount: int, rule: str) -> None:
    if G.degree(v) == 0:
        return
    for f in G.corner_faces(v):
        if G.faces[f].length == 3:
            send(("vertex", v), ("face", f), amount, rule)


def _plan_t1(G: PlaneGraph, send, notes) -> None:
    for v in G.vertices:
        _corner_sends(G, v, send, 2, "R1")
    for v in G.vertices:
        d = G.degree(v)
        if d < 6:
            continue
        amount, rule = (1, "R2") if d == 6 else (2, "R3")
        for u, ambiguous in special_mid_edges(G, v):
            if G.degree(u) != 5:
                continue
            if ambiguous:
                notes.append(f"edge {v}-{u} qualifies through two special diamonds; paid once")
            send(("vertex", v), ("vertex", u), amount, rule)


def _plan_t2(G: PlaneGraph, send) -> None:
    for v in G.vertices:
        d = G.degree(v)
        if d == 5:
            _corner_sends(G, v, send, 2, "R1")
        elif d >= 6:
            for f in G.corner_faces(v):
                face = G.faces[f]
                if face.length != 3:
                    continue
                a, b = sorted(G.degree(w) for w in face.walk if w != v)
                if a == 4 and b == 5:
                    amount = 4
                elif a == 4 and b >= 6:
                    amount = 3
                elif a >= 5:
                    amount = 2
                else:
                    continue
                send(("vertex", v), ("face", f), amount, "R2")


def _plan_t4(G: PlaneGraph, send, notes, witnesses) -> None:
    deg = {v: G.degree(v) for v in G.vertices}
    # R1: every 5+-vertex pays 1/3 through each incident edge
    for v in G.vertices:
        if deg[v] < 5:
            continue
        for u in G.neighbors(v):
            if deg[u] == 3:
                send(("vertex", v), ("vertex", u), 2, "R1a", (v, u))
            elif deg[u] == 4:
                res = find_facial_x_p_3_path(G, (v, u), 3)
                if isinstance(res, Configuration):
                    witnesses.append(res)
                    notes.append(f"two facial paths from edge {v}-{u}; routed along the first")
                    res = res.paths[0]
                if res is not None:
                    send(("vertex", v), ("vertex", res[-1]), 2, "R1c", (v,) + tuple(res))
            # 5+-neighbours and degree <= 2 neighbours: the unit stays with v
    # R2-R4: faces
    for f in G.faces:
        d = f.length
        if d < 5:
            continue
        for a, b in f.darts():
            g = G.edge_face[(b, a)]
            if g != f.id and G.faces[g].length == 3:
                rule = {5: "R2", 6: "R2", 7: "R3b"}.get(d, "R4b")
                send(("face", f.id), ("face", g), 2, rule)
        if d == 7:
            paid = set()
            for a, b in f.darts():
                for x, y in ((a, b), (b, a)):
                    if deg[x] == 3 and deg[y] == 4 and x not in paid:
                        paid.add(x)
                        send(("face", f.id), ("vertex", x), 2, "R3a")
        elif d >= 8:
            for x in f.walk:
                if deg[x] == 3:
                    send(("face", f.id), ("vertex", x), 2, "R4a")
