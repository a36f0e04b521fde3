"""Line-oriented text formats for databases, relations, instances and partitions.

Relational database (``.rdb``)::

    # comments and blank lines are ignored
    domain 4
    relation R1 arity 2
    1 2
    2 1

A relation file (``.rel``) is a single ``relation <name> arity <a>`` block.

Graph database (``.gdb``)::

    schema
    vertex a
    vertex b
    edge e1 a b
    structure
    vertex x1 of a
    vertex y1 of b
    edge x1 y1 true

Instances are ``name: {v1,v2}`` lines; several instances in one file are
separated by ``---`` lines. Partitions use the brace form ``{1,2}{3,4}``.
"""

from __future__ import annotations

import re
from collections.abc import Iterable

from .errors import ParseError
from .graphmodel import GraphDatabase, Instance, Schema, Structure
from .permgroup import PermutationGroup
from .relalg import Relation, RelationalDatabase
from .setpartition import Partition, _sort_key

__all__ = [
    "parse_rdb",
    "dump_rdb",
    "parse_relation",
    "dump_relation",
    "parse_gdb",
    "dump_gdb",
    "parse_instances",
    "dump_instances",
    "parse_partition",
    "dump_group_table",
    "parse_group_table",
]


def _lines(text: str):
    """(line number, tokens, raw line) for every meaningful line."""
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line.split(), raw


def _int(tok: str, no: int, raw: str, source) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected an integer, got {tok!r}", no, raw.find(tok) + 1, source) from None


def _relation_blocks(text: str, source, allow_domain: bool):
    n = None
    blocks: list[tuple[str, int, list, int]] = []
    for no, toks, raw in _lines(text):
        if toks[0] == "domain":
            if not allow_domain:
                raise ParseError("unexpected 'domain' header in a relation file", no, 1, source)
            if len(toks) != 2 or n is not None or blocks:
                raise ParseError("'domain n' must appear once, before any relation", no, 1, source)
            n = _int(toks[1], no, raw, source)
        elif toks[0] == "relation":
            if len(toks) != 4 or toks[2] != "arity":
                raise ParseError("expected 'relation <name> arity <a>'", no, 1, source)
            blocks.append((toks[1], _int(toks[3], no, raw, source), [], no))
        else:
            if not blocks:
                raise ParseError("tuple before any 'relation' header", no, 1, source)
            name, arity, rows, _ = blocks[-1]
            row = tuple(_int(t, no, raw, source) for t in toks)
            if len(row) != arity:
                raise ParseError(f"tuple has {len(row)} components, relation {name} has arity "
                                 f"{arity}", no, 1, source)
            rows.append(row)
    rels = {}
    for name, arity, rows, no in blocks:
        if not rows:
            raise ParseError(f"relation {name} has no tuples", no, 1, source)
        if name in rels:
            raise ParseError(f"relation {name} defined twice", no, 1, source)
        rels[name] = Relation(arity, rows)
    return n, rels


def parse_rdb(text: str, source: str | None = None) -> RelationalDatabase:
    n, rels = _relation_blocks(text, source, allow_domain=True)
    if n is None:
        raise ParseError("missing 'domain n' header", None, None, source)
    if not rels:
        raise ParseError("database has no relations", None, None, source)
    for name, r in rels.items():
        for t in r.tuples:
            bad = [x for x in t if not 1 <= x <= n]
            if bad:
                raise ParseError(f"relation {name}: elements {bad} outside 1..{n}", None, None,
                                 source)
    try:
        return RelationalDatabase(rels, universe=range(1, n + 1))
    except ValueError as exc:
        raise ParseError(str(exc), None, None, source) from exc


def _dump_block(name: str, r: Relation) -> str:
    body = "".join(" ".join(map(str, t)) + "\n" for t in r.rows())
    return f"relation {name} arity {r.arity}\n{body}"


def dump_rdb(db: RelationalDatabase) -> str:
    return f"domain {db.n}\n" + "".join(_dump_block(n, r) for n, r in db.named)


def parse_relation(text: str, source: str | None = None) -> Relation:
    _, rels = _relation_blocks(text, source, allow_domain=False)
    if len(rels) != 1:
        raise ParseError(f"expected exactly one relation, found {len(rels)}", None, None, source)
    return next(iter(rels.values()))


def dump_relation(r: Relation, name: str = "S") -> str:
    return _dump_block(name, r)


_BOOL = {"true": True, "false": False}


def parse_gdb(text: str, source: str | None = None) -> GraphDatabase:
    section = None
    s_vertices: list[str] = []
    s_edges: list[tuple[str, str]] = []
    s_labels: list[str] = []
    t_vertices: list[str] = []
    ext: dict[str, list[str]] = {}
    colors: dict[tuple[str, str], bool] = {}
    for no, toks, raw in _lines(text):
        head = toks[0]
        if head in ("schema", "structure") and len(toks) == 1:
            section = head
        elif section is None:
            raise ParseError("expected a 'schema' or 'structure' section header", no, 1, source)
        elif head == "vertex" and section == "schema":
            if len(toks) != 2:
                raise ParseError("expected 'vertex <label>'", no, 1, source)
            s_vertices.append(toks[1])
        elif head == "edge" and section == "schema":
            if len(toks) != 4:
                raise ParseError("expected 'edge <label> <from> <to>'", no, 1, source)
            s_labels.append(toks[1])
            s_edges.append((toks[2], toks[3]))
        elif head == "vertex" and section == "structure":
            if len(toks) != 4 or toks[2] != "of":
                raise ParseError("expected 'vertex <label> of <schema-label>'", no, 1, source)
            t_vertices.append(toks[1])
            ext.setdefault(toks[3], []).append(toks[1])
        elif head == "edge" and section == "structure":
            if len(toks) != 4:
                raise ParseError("expected 'edge <from> <to> <true|false>'", no, 1, source)
            if toks[3] not in _BOOL:
                raise ParseError(f"color must be true or false, got {toks[3]!r}", no,
                                 raw.find(toks[3]) + 1, source)
            if (toks[1], toks[2]) in colors:
                raise ParseError(f"structure edge ({toks[1]},{toks[2]}) repeated", no, 1, source)
            colors[(toks[1], toks[2])] = _BOOL[toks[3]]
        else:
            raise ParseError(f"unknown directive {head!r} in {section} section", no, 1, source)
    for x in ext:
        if x not in s_vertices:
            raise ParseError(f"structure vertex assigned to unknown schema vertex {x!r}", None,
                             None, source)
    ext_full = {x: ext.get(x, []) for x in s_vertices}
    return GraphDatabase(Schema(tuple(s_vertices), tuple(s_edges), tuple(s_labels)),
                         Structure(t_vertices, colors), ext_full)


def _sorted(xs):
    return sorted(xs, key=_sort_key)


def dump_gdb(db: GraphDatabase) -> str:
    out = ["schema"]
    out += [f"vertex {v}" for v in db.schema.vertices]
    out += [f"edge {lab} {u} {v}" for lab, (u, v) in zip(db.schema.edge_labels, db.schema.edges)]
    out.append("structure")
    for x in db.schema.vertices:
        out += [f"vertex {y} of {x}" for y in _sorted(db.ext[x])]
    out += [f"edge {u} {v} {'true' if c else 'false'}" for (u, v), c in db.structure.colors]
    return "\n".join(out) + "\n"


_INSTANCE_LINE = re.compile(r"^\s*([^:\s]+)\s*:\s*\{([^}]*)\}\s*$")


def parse_instances(text: str, source: str | None = None) -> list[Instance]:
    """All instances in ``text``; ``---`` lines separate instances."""
    groups: list[list[tuple[int, str, list[str]]]] = [[]]
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line == "---":
            groups.append([])
            continue
        m = _INSTANCE_LINE.match(line)
        if not m:
            raise ParseError("expected 'name: {v1,v2,...}'", no, 1, source)
        vals = [v.strip() for v in m.group(2).split(",") if v.strip()]
        if not vals:
            raise ParseError(f"empty image for {m.group(1)!r}", no, raw.find("{") + 1, source)
        groups[-1].append((no, m.group(1), vals))
    out = []
    for g in groups:
        if not g:
            continue
        names = [n for _, n, _ in g]
        if len(set(names)) != len(names):
            raise ParseError("a name appears twice in one instance", g[0][0], 1, source)
        out.append(Instance({n: vals for _, n, vals in g}))
    if not out:
        raise ParseError("no instance found", None, None, source)
    return out


def dump_instances(instances: Iterable[Instance]) -> str:
    return "---\n".join(str(f) for f in instances)


_CLASS = re.compile(r"\{([^{}]*)\}")


def parse_partition(text: str, source: str | None = None) -> Partition:
    """Parse ``{1,2}{3,4}``; integer-looking elements become ints."""
    text = text.strip()
    if not text or _CLASS.sub("", text).strip():
        raise ParseError("expected brace-delimited classes like {1,2}{3}", 1, 1, source)
    classes = []
    for body in _CLASS.findall(text):
        items = [t.strip() for t in body.split(",") if t.strip()]
        if not items:
            raise ParseError("empty class", 1, 1, source)
        classes.append([int(t) if t.lstrip("-").isdigit() else t for t in items])
    try:
        return Partition(classes)
    except ValueError as exc:
        raise ParseError(str(exc), 1, 1, source) from exc


def dump_group_table(group: PermutationGroup) -> str:
    """One automorphism per line as its image sequence, identity first."""
    return group.to_table()


def parse_group_table(text: str, source: str | None = None) -> PermutationGroup:
    from .permgroup import Permutation

    perms = []
    for no, toks, raw in _lines(text):
        try:
            perms.append(Permutation(tuple(_int(t, no, raw, source) for t in toks)))
        except ValueError as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(str(exc), no, 1, source) from exc
    if not perms:
        raise ParseError("empty group table", None, None, source)
    try:
        group = PermutationGroup(perms[0].degree, frozenset(perms))
        group.check()
    except (ValueError, AssertionError) as exc:
        raise ParseError(f"not a permutation group: {exc}", None, None, source) from exc
    return group
