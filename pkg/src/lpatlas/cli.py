"""Command-line front end.

Exit codes: 0 success, 2 usage error, 3 bad input, 4 internal inconsistency.
Graph arguments name a file (text, JSON or wire format); a string that is not
an existing file is parsed as a wire string such as ``"1,1;1,0"``.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from typing import List, Optional

from .atlas import Atlas, build_atlas, load_atlas
from .errors import InputError, InternalInconsistency, LpAtlasError
from .graph import Graph, from_wire, parse_graph
from .invariants import render_raw, signature
from .orbits import burnside_breakdown, orbit_representatives, orbits
from .reference import all_rows
from .shift import inverse_shift, moves, preferred_order, reduce, shift
from .tables import FORMATS, write_tables

ATLAS_ENV = "LPATLAS_ATLAS"

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_INTERNAL = 0, 2, 3, 4

log = logging.getLogger("lpatlas")


def read_graph(arg: str) -> Graph:
    if arg == "-":
        return parse_graph(sys.stdin.read())
    if os.path.exists(arg):
        with open(arg) as fh:
            return parse_graph(fh.read())
    if "," in arg or ";" in arg or arg.strip() in ("0", "1"):
        return from_wire(arg)
    raise InputError(f"{arg}: no such file")


def get_atlas(path: Optional[str]) -> Atlas:
    path = path or os.environ.get(ATLAS_ENV)
    if path:
        log.info("loading atlas from %s", path)
        return load_atlas(path)
    log.info("building atlas in memory")
    return build_atlas(3)


def emit(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True))


# -- subcommands ---------------------------------------------------------------


def cmd_count_orbits(args) -> int:
    b = burnside_breakdown(args.n, args.allow_large)
    direct = len(orbits(args.n, args.allow_large))
    if args.json:
        emit({"n": args.n, "count": b.count, "enumerated": direct,
              "classes": [{"cycle_type": c.label, "size": c.size, "fixed": c.fixed}
                          for c in b.classes],
              "total_fixed": b.total_fixed, "group_order": b.group_order})
    else:
        print(b.count)
        print(b.formula())
        for c in b.classes:
            print(f"  {c.label:<10} size {c.size:<3} fixes {c.fixed}")
        print(f"direct enumeration: {direct}")
    return EXIT_OK if direct == b.count else EXIT_INTERNAL


def cmd_list_orbits(args) -> int:
    reps = orbits(args.n, args.allow_large)
    if args.json:
        emit([{"matrix": o.representative.wire(), "orbit_size": o.size} for o in reps])
    else:
        for o in reps:
            print(o.representative.wire())
    return EXIT_OK


def cmd_reduce(args) -> int:
    reps = orbit_representatives(args.n)
    if args.order == "published":
        reps = preferred_order(reps, [r.graph for r in all_rows() if r.graph.n == args.n])
    kept = reduce(reps)
    if args.json:
        emit({"n": args.n, "order": args.order, "count": len(kept),
              "representatives": [g.wire() for g in kept]})
    else:
        for g in kept:
            print(g.wire())
        print(f"{len(kept)} representatives", file=sys.stderr)
    return EXIT_OK


def cmd_shift(args) -> int:
    g = read_graph(args.graph)
    if args.i is None and args.j is None:
        out = [{"move": kind, "i": i, "j": j, "result": h.wire()} for kind, i, j, h in moves(g)]
        if args.json:
            emit(out)
        else:
            for m in out:
                print(f"{m['move']} {m['i']} {m['j']}: {m['result']}")
        return EXIT_OK
    if args.i is None or args.j is None:
        raise InputError("give both --i and --j")
    fn = inverse_shift if args.inverse else shift
    h = fn(args.i, args.j, g)
    if h is None:
        raise InputError(f"move ({args.i}, {args.j}) does not apply to {g}")
    if args.json:
        emit({"input": g.wire(), "result": h.wire()})
    else:
        print(h.wire())
    return EXIT_OK


def cmd_invariants(args) -> int:
    g = read_graph(args.graph)
    atlas = get_atlas(args.atlas) if g.n <= 3 else None
    sig = signature(g, atlas.resolver if atlas else None)
    name = atlas.named_algebra(g) if atlas else None
    if args.json:
        out = sig.to_json()
        out["matrix"] = g.wire()
        out["algebra_name"] = None if name is None else str(name)
        emit(out)
        return EXIT_OK
    rows = [
        ("matrix", g.wire()),
        ("k0", str(sig.k0)),
        ("soc", str(sig.soc)),
        ("l_mod_soc", sig.l_mod_soc),
        ("unit_raw", render_raw(sig.unit.raw)),
        ("unit_canonical", str(sig.unit.canonical)),
        ("iln", str(sig.iln)),
        ("hs", str(sig.hs)),
        ("l_mod_i", sig.l_mod_i or "-"),
        ("mt3_plus_l", "T" if sig.mt3_plus_l else "F"),
    ]
    rows += [(k, str(v)) for k, v in sig.diagnostics.items()]
    if name is not None:
        rows.append(("algebra", str(name)))
    for k, v in rows:
        print(f"{k}: {v}")
    return EXIT_OK


def cmd_classify(args) -> int:
    g = read_graph(args.graph)
    atlas = get_atlas(args.atlas)
    res = atlas.classify(g)
    cls = atlas.by_id[res.class_id]
    if args.json:
        out = res.to_json()
        out["table_anchor"] = cls.table_anchor
        out["algebra_name"] = None if cls.algebra_name is None else str(cls.algebra_name)
        emit(out)
    else:
        print(res.class_id)
        print(f"representative: {res.representative.wire()}")
        print(f"moves: {' '.join(f'{k}({i},{j})' for k, i, j in res.path) or 'none'}")
        print(f"anchor: {cls.table_anchor}")
        print(f"algebra: {cls.algebra_name.cell() if cls.algebra_name else '---'}")
    return EXIT_OK


def cmd_atlas_build(args) -> int:
    atlas = build_atlas(args.max_n)
    text = atlas.dumps()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        print(f"{len(atlas.classes)} classes written to {args.out}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_atlas_tables(args) -> int:
    atlas = get_atlas(args.atlas)
    for path in write_tables(atlas, args.format, args.out_dir):
        print(path)
    return EXIT_OK


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lpatlas",
                                description="Leavitt path algebras of small graphs")
    p.add_argument("-v", "--verbose", action="count", default=0)
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("count-orbits", help="Burnside count of n-vertex graphs")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--allow-large", action="store_true", help="permit n = 5")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_count_orbits)

    c = sub.add_parser("list-orbits", help="canonical representative of every orbit")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--allow-large", action="store_true")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_list_orbits)

    c = sub.add_parser("reduce", help="shift-reduce the orbit representatives")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--order", choices=("lex", "published"), default="lex",
                   help="sweep order: ascending canonical forms, or steered to the reference rows")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_reduce)

    c = sub.add_parser("shift", help="apply a shift move, or list all moves")
    c.add_argument("graph")
    c.add_argument("--i", type=int)
    c.add_argument("--j", type=int)
    c.add_argument("--inverse", action="store_true")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_shift)

    c = sub.add_parser("invariants", help="print the invariant tuple of a graph")
    c.add_argument("graph")
    c.add_argument("--atlas", help=f"atlas JSON (default: ${ATLAS_ENV} or build in memory)")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_invariants)

    c = sub.add_parser("classify", help="find the atlas class of a graph")
    c.add_argument("graph")
    c.add_argument("--atlas", help=f"atlas JSON (default: ${ATLAS_ENV} or build in memory)")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_classify)

    a = sub.add_parser("atlas", help="build the atlas or emit its tables")
    asub = a.add_subparsers(dest="atlas_command", required=True)
    b = asub.add_parser("build")
    b.add_argument("--max-n", type=int, default=3, choices=(1, 2, 3))
    b.add_argument("--out")
    b.set_defaults(func=cmd_atlas_build)
    t = asub.add_parser("tables")
    t.add_argument("--format", choices=FORMATS, default="md")
    t.add_argument("--out-dir", required=True)
    t.add_argument("--atlas")
    t.set_defaults(func=cmd_atlas_tables)
    return p


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2),
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InternalInconsistency as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except LpAtlasError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())
