"""Batch command-line front end.

Exit status: 0 success, 1 a "not expressible" (or "invalid") verdict,
2 input error, 3 resource limit. Every report is deterministic.

Caps may also come from the ``EXPRESSO_LIMITS`` environment variable, e.g.
``EXPRESSO_LIMITS="max_depth=2,instance_cap=5000"``; flags win.
"""

from __future__ import annotations

import argparse
import os
import sys
from collections.abc import Sequence
from pathlib import Path

from . import fixtures
from .errors import ExpressoError, ParseError, ResourceLimit
from .expressibility import CRITERIA, cross_check, decide
from .formats import (
    dump_group_table,
    dump_instances,
    dump_relation,
    parse_gdb,
    parse_instances,
    parse_rdb,
    parse_relation,
)
from .graphmodel import validate
from .partitions import cp_set, format_partition_set, op_set
from .permgroup import DEFAULT_SUBGROUP_CAP, aut, cgr
from .relalg import DEFAULT_MAX_DEPTH, DEFAULT_RELATION_CAP, bi_closure_bounded
from .setpartition import _sort_key
from .stability import (
    DEFAULT_INSTANCE_CAP,
    InstanceSet,
    bi_closure_graph,
    canonical_partition,
    decide_expressible_graph,
    expressible_by_partition,
    pbi_partition,
)

EXIT_OK, EXIT_NO, EXIT_INPUT, EXIT_LIMIT = 0, 1, 2, 3

_CRITERION_FLAGS = {
    "paredaens": "paredaens",
    "aut": "aut_equality",
    "op": "orbit_partition",
    "cp": "cycle_partition",
}

_LIMIT_KEYS = {
    "max_arity": int,
    "max_depth": int,
    "relation_cap": int,
    "k_max": int,
    "instance_cap": int,
    "subgroup_cap": int,
}
_DEFAULTS = {
    "max_arity": None,
    "max_depth": DEFAULT_MAX_DEPTH,
    "relation_cap": DEFAULT_RELATION_CAP,
    "k_max": None,
    "instance_cap": DEFAULT_INSTANCE_CAP,
    "subgroup_cap": DEFAULT_SUBGROUP_CAP,
}


def _env_limits(text: str | None) -> dict:
    out: dict = {}
    if not text:
        return out
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        key, sep, value = item.partition("=")
        key = key.strip().replace("-", "_")
        if not sep or key not in _LIMIT_KEYS:
            raise ParseError(f"bad EXPRESSO_LIMITS entry {item!r}", source="EXPRESSO_LIMITS")
        try:
            out[key] = _LIMIT_KEYS[key](value)
        except ValueError:
            raise ParseError(f"bad value in EXPRESSO_LIMITS entry {item!r}",
                             source="EXPRESSO_LIMITS") from None
    return out


def _limits(args) -> dict:
    lim = dict(_DEFAULTS)
    lim.update(_env_limits(os.environ.get("EXPRESSO_LIMITS")))
    for key in _LIMIT_KEYS:
        v = getattr(args, key, None)
        if v is not None:
            lim[key] = v
    return lim


def _read(path: str) -> tuple[str, str]:
    """Contents and display name; ``bundled:<file>`` reads a packaged fixture."""
    if path.startswith("bundled:"):
        name = path.split(":", 1)[1]
        handle = fixtures.data_path(name)
        if not handle.is_file():
            raise ParseError(f"no bundled file {name!r}", source=path)
        return handle.read_text(encoding="utf-8"), name
    try:
        return Path(path).read_text(encoding="utf-8"), path
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc.strerror}", source=path) from None


def _rdb(path):
    return parse_rdb(*_read(path))


def _rel(path):
    return parse_relation(*_read(path))


def _gdb(path):
    db = parse_gdb(*_read(path))
    problems = validate(db)
    if problems:
        raise ParseError("invalid graph database: " + "; ".join(problems), source=path)
    return db


def _instance_set(args) -> InstanceSet:
    db = _gdb(args.db)
    insts = parse_instances(*_read(args.instances)) if args.instances else [db.ext_instance()]
    return InstanceSet(db, insts)


# --- verbs ---------------------------------------------------------------------------


def cmd_aut(args, out) -> int:
    group = aut(_rdb(args.db))
    if args.cycles:
        out.write("".join(g.cycle_notation() + "\n" for g in group.sorted_elements()))
    else:
        out.write(dump_group_table(group))
    return EXIT_OK


def cmd_cgr(args, out) -> int:
    out.write(dump_relation(cgr(_rdb(args.db)), "cgr"))
    return EXIT_OK


def cmd_partitions(args, out) -> int:
    db = _rdb(args.db)
    lim = _limits(args)
    if args.kind in ("op", "both"):
        out.write("# OP\n" + format_partition_set(op_set(db, lim["subgroup_cap"])))
    if args.kind in ("cp", "both"):
        out.write("# CP\n" + format_partition_set(cp_set(db)))
    return EXIT_OK


def cmd_decide(args, out) -> int:
    db, s = _rdb(args.db), _rel(args.target)
    names = CRITERIA if args.criterion == "all" else (_CRITERION_FLAGS[args.criterion],)
    verdicts = [decide(s, db, c) for c in names]
    for v in verdicts:
        out.write(v.line() + "\n")
    if len({v.expressible for v in verdicts}) > 1:
        out.write("criteria disagree\n")
    return EXIT_OK if all(v.expressible for v in verdicts) else EXIT_NO


def cmd_cross_check(args, out) -> int:
    db, s = _rdb(args.db), _rel(args.target)
    lim = _limits(args)
    report = cross_check(s, db, bounded=args.bounded, max_arity=lim["max_arity"],
                         max_depth=lim["max_depth"], relation_cap=lim["relation_cap"])
    for line in report.lines():
        out.write(line + "\n")
    out.write("unanimous\n")
    return EXIT_OK if report.expressible else EXIT_NO


def cmd_closure(args, out) -> int:
    db = _rdb(args.db)
    lim = _limits(args)
    rels = bi_closure_bounded(db, lim["max_arity"], lim["max_depth"], lim["relation_cap"])
    if args.target:
        s = _rel(args.target)
        out.write(("yes" if s in rels else "unknown") + "\n")
        return EXIT_OK
    ordered = sorted(rels, key=lambda r: (r.arity, len(r), r.rows()))
    out.write(f"# {len(ordered)} relations\n")
    for i, r in enumerate(ordered, start=1):
        out.write(dump_relation(r, f"C{i}"))
    return EXIT_OK


def cmd_validate(args, out) -> int:
    db = parse_gdb(*_read(args.db))
    problems = validate(db)
    if not problems:
        out.write("valid\n")
        return EXIT_OK
    out.write("".join(f"violation: {p}\n" for p in problems))
    return EXIT_NO


def cmd_canonical(args, out) -> int:
    I = _instance_set(args)
    out.write(f"{canonical_partition(I, _limits(args)['k_max'])}\n")
    return EXIT_OK


def cmd_graph_decide(args, out) -> int:
    I = _instance_set(args)
    lim = _limits(args)
    targets = parse_instances(*_read(args.target))
    status = EXIT_OK
    for g in targets:
        verdict = exact = None
        if args.method in ("canonical", "both"):
            v = decide_expressible_graph(g, I, lim["k_max"])
            out.write(v.line() + "\n")
            verdict = v.expressible
        if args.method in ("closure", "both"):
            exact = expressible_by_partition(g, I, lim["instance_cap"])
            word = "expressible" if exact else "not-expressible"
            out.write(f"closure {word} {pbi_partition(I, lim['instance_cap'])}\n")
            if verdict is not None and verdict != exact:
                out.write("methods disagree\n")
        if not (verdict if exact is None else exact):
            status = EXIT_NO
    return status


def cmd_graph_closure(args, out) -> int:
    I = _instance_set(args)
    lim = _limits(args)
    insts = sorted(bi_closure_graph(I, lim["instance_cap"]),
                   key=lambda f: [(_sort_key(n), sorted(map(_sort_key, ys))) for n, ys in f.items()])
    out.write(f"# {len(insts)} instances; P^BI {pbi_partition(I, lim['instance_cap'])}\n")
    out.write(dump_instances(insts))
    return EXIT_OK


# --- argument parsing ----------------------------------------------------------------


def _positive(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="expresso", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="verb", required=True)

    def add(name, func, help_, db_help="relational database (.rdb)"):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--db", required=True, help=db_help)
        sp.set_defaults(func=func)
        return sp

    sp = add("aut", cmd_aut, "automorphism group as a cogroup table")
    sp.add_argument("--cycles", action="store_true", help="print cycle notation instead")
    add("cgr", cmd_cgr, "cogroup relation as a relation file")
    sp = add("partitions", cmd_partitions, "orbit and cycle partition sets")
    sp.add_argument("--kind", choices=("op", "cp", "both"), default="both")
    sp.add_argument("--subgroup-cap", type=_positive, dest="subgroup_cap")
    sp = add("decide", cmd_decide, "decide whether a relation is expressible")
    sp.add_argument("--target", required=True, help="relation file (.rel)")
    sp.add_argument("--criterion", choices=("paredaens", "aut", "op", "cp", "all"),
                    default="all")
    sp = add("cross-check", cmd_cross_check, "run all criteria and require agreement")
    sp.add_argument("--target", required=True, help="relation file (.rel)")
    sp.add_argument("--bounded", action="store_true", help="also consult the bounded closure")
    for sp_ in (sp, add("closure", cmd_closure, "bounded expressible-relation closure")):
        sp_.add_argument("--max-arity", type=_positive, dest="max_arity")
        sp_.add_argument("--max-depth", type=_positive, dest="max_depth")
        sp_.add_argument("--relation-cap", type=_positive, dest="relation_cap")
    sub.choices["closure"].add_argument("--target", help="only report whether this relation "
                                        "appears (yes/unknown)")

    gdb_help = "graph database (.gdb)"
    add("validate", cmd_validate, "well-formedness of a graph database", gdb_help)
    graph = [add("canonical", cmd_canonical, "canonical partition", gdb_help),
             add("graph-decide", cmd_graph_decide, "decide whether instances are expressible",
                 gdb_help),
             add("graph-closure", cmd_graph_closure, "exact closure of the instance algebra",
                 gdb_help)]
    for sp_ in graph:
        sp_.add_argument("--instances", help="instance file; defaults to the whole extension")
        sp_.add_argument("--k-max", type=_positive, dest="k_max",
                         help="truncate stability at this walk length (default: exact)")
        sp_.add_argument("--instance-cap", type=_positive, dest="instance_cap")
    sub.choices["graph-decide"].add_argument("--target", required=True, help="instance file")
    sub.choices["graph-decide"].add_argument(
        "--method", choices=("canonical", "closure", "both"), default="both")
    return p


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args, out)
    except ResourceLimit as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (ExpressoError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
