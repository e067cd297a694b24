"""Command-line front end.

Exit codes: 0 success, 2 precondition failure, 3 no configuration found,
4 parse error, 5 produced output failed re-validation.
"""
from __future__ import annotations

import argparse
import inspect
import logging
import sys
from collections import Counter
from pathlib import Path

from . import formats, instances
from .bounded_independence import frozen_family, recolor_bounded
from .charge_audit import run_discharge
from .config_finder import find_reduction
from .errors import CapExceeded, EmbeddingError, ParseError, PreconditionError, StructureNotFound
from .oracle import build_recoloring_graph, distance
from .plane_graph import PlaneGraph
from .recolor_core import validate_sequence
from .recolor_planar import BudgetCertificate, recolor, recolor_degenerate

EXIT_OK, EXIT_PRE, EXIT_STRUCT, EXIT_PARSE, EXIT_INVALID = 0, 2, 3, 4, 5
PLAN_FOR = {"g1": "T1", "g2": "T2", "gcal": "T4"}
STRATEGIES = ("g1", "g2", "gcal", "no4", "degenerate", "bounded")


class InvalidOutput(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise PreconditionError(f"cannot read {path}: {exc.strerror}") from None


def _need(args, name: str):
    val = getattr(args, name)
    if val is None:
        raise PreconditionError(f"--{name.replace('_', '-')} is required for {args.command}")
    return val


def _plane(args) -> PlaneGraph:
    return formats.parse_rotation(_read(_need(args, "graph")))


def _write(args, text: str, suffix: str = "") -> None:
    if args.out:
        Path(args.out + suffix).write_text(text if text.endswith("\n") else text + "\n")
    else:
        print(text.rstrip("\n"))


def cmd_classify(args) -> int:
    print(_plane(args).classify().to_text())
    return EXIT_OK


def cmd_stats(args) -> int:
    G = _plane(args)
    faces = Counter(f.length for f in G.faces)
    degs = Counter(G.degree(v) for v in G.vertices)
    print(f"vertices: {G.n}")
    print(f"edges: {G.num_edges}")
    print(f"faces: {len(G.faces)}")
    print("face_lengths: " + " ".join(f"{k}x{faces[k]}" for k in sorted(faces)))
    print("degrees: " + " ".join(f"{k}x{degs[k]}" for k in sorted(degs)))
    return EXIT_OK


def cmd_audit(args) -> int:
    strategy = _need(args, "strategy")
    if strategy not in PLAN_FOR:
        raise PreconditionError(f"no discharging plan for strategy {strategy}")
    print(run_discharge(_plane(args), PLAN_FOR[strategy]).to_text())
    return EXIT_OK


def cmd_find_config(args) -> int:
    G = _plane(args)
    conf = find_reduction(G, _need(args, "strategy"))
    if conf is None:
        print("none")
        return EXIT_STRUCT
    print(conf.to_text())
    return EXIT_OK


def cmd_recolor(args) -> int:
    strategy = _need(args, "strategy")
    alpha = formats.parse_coloring(_read(_need(args, "from_")))
    beta = formats.parse_coloring(_read(_need(args, "to")))
    if strategy == "bounded":
        G = formats.load_graph_any(_read(_need(args, "graph")))
        p, k, ell = _need(args, "p"), _need(args, "k"), _need(args, "ell")
        seq = recolor_bounded(G, p, k, ell, alpha, beta, cap=args.cap or 30)
        adj = G.adjacency if isinstance(G, PlaneGraph) else G
        L = {v: tuple(range(1, ell + 1)) for v in adj}
        cert = BudgetCertificate("bounded", dict(seq.counts), 4)
    else:
        L = formats.parse_lists(_read(_need(args, "lists")))
        if strategy == "degenerate":
            G = formats.load_graph_any(_read(_need(args, "graph")))
            seq, cert = recolor_degenerate(G, L, alpha, beta, _need(args, "d"))
        elif strategy in PLAN_FOR or strategy == "no4":
            G = _plane(args)
            seq, cert = recolor(G, L, alpha, beta, strategy)
        else:
            raise PreconditionError(f"unknown strategy {strategy}")
    bad = validate_sequence(G, L, seq, beta)
    if bad or not cert.ok:
        raise InvalidOutput(f"output failed re-validation: {bad or 'budget exceeded'}")
    _write(args, formats.emit_sequence(seq))
    if args.out:
        Path(args.out + ".cert").write_text(cert.to_text() + "\n")
    else:
        print(cert.to_text())
    return EXIT_OK


def cmd_oracle(args) -> int:
    G = formats.load_graph_any(_read(_need(args, "graph")))
    L = formats.parse_lists(_read(_need(args, "lists")))
    cap = args.cap or 10**6
    stats = build_recoloring_graph(G, L, cap)
    print(stats.to_text())
    if args.from_ and args.to:
        a = formats.parse_coloring(_read(args.from_))
        b = formats.parse_coloring(_read(args.to))
        d = distance(G, L, a, b, cap)
        print(f"distance: {d}")
    return EXIT_OK


def cmd_frozen(args) -> int:
    w = frozen_family(_need(args, "p"), _need(args, "k"))
    graph_text = formats.emit_graph(w.graph)
    col_text = formats.emit_coloring(w.coloring)
    if args.out:
        Path(args.out + ".graph").write_text(graph_text + "\n")
        Path(args.out + ".col").write_text(col_text)
    else:
        print(graph_text)
        print(col_text.rstrip("\n"))
    print(f"# colors {w.num_colors} frozen {str(w.is_frozen).lower()}", file=sys.stderr)
    return EXIT_OK


def _parse_params(items) -> dict:
    out = {}
    for item in items or ():
        key, sep, val = item.partition("=")
        if not sep:
            raise PreconditionError(f"--param expects key=value, got {item!r}")
        try:
            out[key] = int(val)
        except ValueError:
            try:
                out[key] = float(val)
            except ValueError:
                out[key] = val
    return out


def cmd_gen(args) -> int:
    family = _need(args, "family")
    params = _parse_params(args.param)
    try:
        fn = instances._FAMILIES[family]
    except KeyError:
        raise PreconditionError(
            f"unknown family {family!r}; choose from {', '.join(instances.families())}"
        ) from None
    accepted = inspect.signature(fn).parameters
    for name, val in (("n", args.n), ("seed", args.seed), ("p", args.p), ("k", args.k)):
        if val is not None and name in accepted:
            params.setdefault(name, val)
    G = instances.generate(instances.FamilySpec(family, params))
    _write(args, formats.emit_rotation(G))
    if args.colors:
        L = instances.uniform_lists(G, range(1, args.colors + 1))
        seed = args.seed or 0
        if not args.out:
            raise PreconditionError("--colors needs --out to place the list and coloring files")
        Path(args.out + ".lists").write_text(formats.emit_lists(L))
        Path(args.out + ".a.col").write_text(formats.emit_coloring(instances.random_coloring(G, L, seed)))
        Path(args.out + ".b.col").write_text(formats.emit_coloring(instances.random_coloring(G, L, seed + 1)))
    return EXIT_OK


COMMANDS = {
    "classify": cmd_classify,
    "audit": cmd_audit,
    "stats": cmd_stats,
    "find-config": cmd_find_config,
    "recolor": cmd_recolor,
    "oracle": cmd_oracle,
    "frozen": cmd_frozen,
    "gen": cmd_gen,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="planrecolor", description="List recoloring of plane graphs.")
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("--strategy", choices=STRATEGIES)
    ap.add_argument("--graph")
    ap.add_argument("--lists")
    ap.add_argument("--from", dest="from_")
    ap.add_argument("--to")
    ap.add_argument("--out")
    ap.add_argument("--seed", type=int)
    ap.add_argument("--cap", type=int)
    ap.add_argument("--p", type=int)
    ap.add_argument("--k", type=int)
    ap.add_argument("--ell", type=int)
    ap.add_argument("--d", type=int)
    ap.add_argument("--family")
    ap.add_argument("--n", type=int)
    ap.add_argument("--param", action="append", metavar="KEY=VALUE")
    ap.add_argument("--colors", type=int, help="with gen: also write uniform lists and two colorings")
    ap.add_argument("-v", "--verbose", action="store_true")
    return ap


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR, format="%(levelname)s %(message)s")
    try:
        return COMMANDS[args.command](args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except StructureNotFound as exc:
        print(f"structure not found: {exc}", file=sys.stderr)
        if exc.graph is not None and args.out:
            Path(args.out + ".snf.rot").write_text(formats.emit_rotation(exc.graph))
        return EXIT_STRUCT
    except (PreconditionError, EmbeddingError, CapExceeded) as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        return EXIT_PRE
    except InvalidOutput as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INVALID


def main() -> None:
    sys.exit(run())
