"""Two-layer graph databases and the instance algebra over them.

A database pairs a *schema* (a labeled, weakly connected digraph) with a
*structure* (a digraph whose edges are colored ``True``/``False``) through
an extension map sending each schema vertex ("name") to a nonempty set of
structure vertices ("values"). The extension images partition the
structure, and two values are joined by a structure edge exactly when their
names are joined by a schema edge.

Instances are restrictions of the extension whose domain induces a weakly
connected part of the schema. The algebra on instances (addition, product,
projection, difference and selection by colored schema patterns) never
creates values, so everything it can produce lives inside the database.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass

from .errors import (
    DomainMismatch,
    EmptyInstance,
    EmptySelection,
    InvalidGraphDatabase,
    InvalidInstance,
    NotSubdomain,
    NotWeaklyConnected,
)
from .setpartition import _sort_key

__all__ = [
    "Schema",
    "Structure",
    "GraphDatabase",
    "Instance",
    "Selector",
    "is_weakly_connected",
    "validate",
    "check_instance",
    "add",
    "mult",
    "project_inst",
    "diff",
    "simple_instances",
    "select",
    "all_selectors",
]


def _sorted(xs):
    return tuple(sorted(xs, key=_sort_key))


def is_weakly_connected(vertices: Iterable, edges: Iterable[tuple]) -> bool:
    """Weak connectivity of ``vertices`` using only ``edges`` between them."""
    vs = set(vertices)
    if not vs:
        return False
    adj: dict = {v: set() for v in vs}
    for u, w in edges:
        if u in vs and w in vs and u != w:
            adj[u].add(w)
            adj[w].add(u)
    start = next(iter(vs))
    seen = {start}
    stack = [start]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == vs


@dataclass(frozen=True)
class Schema:
    """Schema vertices are identified by their labels; edges are ordered pairs.

    ``edge_labels`` maps each edge to its label (``"u->v"`` by default).
    """

    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]
    edge_labels: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        labels = tuple(self.edge_labels) or tuple(f"{u}->{v}" for u, v in self.edges)
        if len(labels) != len(self.edges):
            raise InvalidGraphDatabase("one label per schema edge is required")
        object.__setattr__(self, "edge_labels", labels)

    def edge_label(self, u: str, v: str) -> str:
        return self.edge_labels[self.edges.index((u, v))]

    def induces_connected(self, names: Iterable[str]) -> bool:
        return is_weakly_connected(names, self.edges)


@dataclass(frozen=True)
class Structure:
    """Structure vertices plus a color for every structure edge.

    Vertices and edges are kept in natural sort order, so equal structures
    compare equal regardless of input order.
    """

    vertices: tuple[str, ...]
    colors: tuple[tuple[tuple[str, str], bool], ...]

    def __init__(self, vertices: Iterable[str], colors: Mapping[tuple[str, str], bool]
                 | Iterable[tuple[tuple[str, str], bool]]):
        items = colors.items() if isinstance(colors, Mapping) else colors
        object.__setattr__(self, "vertices", _sorted(vertices))
        object.__setattr__(self, "colors", tuple(sorted(
            ((tuple(e), c) for e, c in items),
            key=lambda p: (_sort_key(p[0][0]), _sort_key(p[0][1])))))

    @property
    def edges(self) -> tuple[tuple[str, str], ...]:
        return tuple(e for e, _ in self.colors)

    def color_map(self) -> dict[tuple[str, str], bool]:
        return dict(self.colors)


@dataclass(frozen=True, eq=False)
class GraphDatabase:
    """Schema, structure and the extension map between them.

    Construction does not validate; call :func:`validate` for a list of
    violations or :meth:`check` to raise on the first one.
    """

    schema: Schema
    structure: Structure
    ext: Mapping[str, frozenset[str]]

    def __post_init__(self):
        object.__setattr__(self, "ext", {k: frozenset(v) for k, v in self.ext.items()})
        object.__setattr__(self, "_mu", self.structure.color_map())
        object.__setattr__(self, "_name", {y: x for x, ys in self.ext.items() for y in ys})

    def check(self) -> GraphDatabase:
        problems = validate(self)
        if problems:
            raise InvalidGraphDatabase("; ".join(problems))
        return self

    def color(self, u: str, v: str) -> bool:
        return self._mu[(u, v)]

    def has_edge(self, u: str, v: str) -> bool:
        return (u, v) in self._mu

    def name(self, y: str) -> str:
        """Inverse image of a value under the extension map."""
        return self._name[y]

    def names(self, values: Iterable[str]) -> frozenset[str]:
        return frozenset(self._name[y] for y in values)

    def ext_instance(self) -> Instance:
        """The whole extension map as an instance."""
        return Instance(self.ext)

    def _key(self):
        return (self.schema, self.structure, tuple(sorted(self.ext.items())))

    def __eq__(self, other):
        return isinstance(other, GraphDatabase) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())


def validate(db: GraphDatabase) -> list[str]:
    """All well-formedness violations of ``db`` (empty when valid)."""
    out = []
    sch, st = db.schema, db.structure
    if len(set(sch.vertices)) != len(sch.vertices):
        out.append("schema vertex labels are not distinct")
    if len(set(sch.edges)) != len(sch.edges):
        out.append("schema edges are repeated")
    if len(set(sch.edge_labels)) != len(sch.edge_labels):
        out.append("schema edge labels are not distinct")
    sv = set(sch.vertices)
    for u, v in sch.edges:
        if u not in sv or v not in sv:
            out.append(f"schema edge ({u},{v}) uses an unknown vertex")
    if sv and not sch.induces_connected(sv):
        out.append("schema is not weakly connected")
    if not sv:
        out.append("schema has no vertices")
    if len(set(st.vertices)) != len(st.vertices):
        out.append("structure vertex labels are not distinct")
    tv = set(st.vertices)
    seen_edges = set()
    for (u, v), c in st.colors:
        if u not in tv or v not in tv:
            out.append(f"structure edge ({u},{v}) uses an unknown vertex")
        if (u, v) in seen_edges:
            out.append(f"structure edge ({u},{v}) is repeated")
        seen_edges.add((u, v))
        if not isinstance(c, bool):
            out.append(f"structure edge ({u},{v}) has color {c!r} outside {{true,false}}")
    # extension condition 1: the images partition the structure vertices
    if set(db.ext) != sv:
        out.append("extension is not defined on exactly the schema vertices")
    covered: dict[str, str] = {}
    for x, ys in db.ext.items():
        if not ys:
            out.append(f"Ext({x}) is empty")
        for y in ys:
            if y not in tv:
                out.append(f"Ext({x}) contains unknown structure vertex {y}")
            if y in covered:
                out.append(f"structure vertex {y} is in Ext({covered[y]}) and Ext({x})")
            covered[y] = x
    missing = tv - set(covered)
    if missing:
        out.append(f"structure vertices {_sorted(missing)} are in no extension image")
    if out:
        return out
    # extension condition 2: (x, y) in E' iff (name x, name y) in E
    schema_edges = set(sch.edges)
    for u, w in itertools.product(sch.vertices, repeat=2):
        want = (u, w) in schema_edges
        for x in db.ext[u]:
            for y in db.ext[w]:
                if db.has_edge(x, y) != want:
                    kind = "missing" if want else "unexpected"
                    out.append(f"{kind} structure edge ({x},{y}) for schema pair ({u},{w})")
    return out


@dataclass(frozen=True)
class Instance:
    """A partial map from names to nonempty sets of values."""

    assignment: tuple[tuple[str, frozenset[str]], ...]

    def __init__(self, assignment: Mapping[str, Iterable[str]] | Iterable):
        items = assignment.items() if isinstance(assignment, Mapping) else assignment
        pairs = []
        for name, vals in items:
            vals = frozenset(vals)
            if not vals:
                raise InvalidInstance(f"image of {name!r} is empty")
            pairs.append((name, vals))
        if not pairs:
            raise EmptyInstance("an instance needs a nonempty domain")
        pairs.sort(key=lambda p: _sort_key(p[0]))
        if len({n for n, _ in pairs}) != len(pairs):
            raise InvalidInstance("duplicate name in instance")
        object.__setattr__(self, "assignment", tuple(pairs))

    @property
    def domain(self) -> frozenset[str]:
        return frozenset(n for n, _ in self.assignment)

    @property
    def image(self) -> frozenset[str]:
        return frozenset(y for _, ys in self.assignment for y in ys)

    def __getitem__(self, name: str) -> frozenset[str]:
        for n, ys in self.assignment:
            if n == name:
                return ys
        raise KeyError(name)

    def get(self, name: str, default=None):
        try:
            return self[name]
        except KeyError:
            return default

    def items(self) -> Iterator[tuple[str, frozenset[str]]]:
        return iter(self.assignment)

    def as_dict(self) -> dict[str, frozenset[str]]:
        return dict(self.assignment)

    def __le__(self, other: Instance) -> bool:
        """``self`` is a restriction of ``other``."""
        return all(n in other.domain and ys <= other[n] for n, ys in self.assignment)

    def __str__(self) -> str:
        return "".join(f"{n}: {{{','.join(_sorted(ys))}}}\n" for n, ys in self.assignment)

    def __repr__(self) -> str:
        body = ", ".join(f"{n}->{{{','.join(_sorted(ys))}}}" for n, ys in self.assignment)
        return f"Instance({body})"


def check_instance(db: GraphDatabase, f: Instance) -> None:
    """Raise unless ``f`` restricts the extension on a connected domain."""
    for name, ys in f.items():
        if name not in db.ext:
            raise InvalidInstance(f"{name!r} is not a schema vertex")
        if not ys <= db.ext[name]:
            raise InvalidInstance(f"f({name}) is not inside Ext({name})")
    if not db.schema.induces_connected(f.domain):
        raise NotWeaklyConnected(f"domain {_sorted(f.domain)} is not weakly connected")


@dataclass(frozen=True)
class Selector:
    """A weakly connected schema subgraph with a color on each of its edges."""

    vertices: frozenset[str]
    colors: tuple[tuple[tuple[str, str], bool], ...]

    def __init__(self, vertices: Iterable[str], colors: Mapping[tuple[str, str], bool]
                 | Iterable = ()):
        items = colors.items() if isinstance(colors, Mapping) else colors
        cs = tuple(sorted(((tuple(e), bool(c)) for e, c in items),
                          key=lambda p: (_sort_key(p[0][0]), _sort_key(p[0][1]))))
        vs = frozenset(vertices)
        for (u, v), _ in cs:
            if u not in vs or v not in vs:
                raise InvalidGraphDatabase(f"selector edge ({u},{v}) leaves its vertex set")
        if not is_weakly_connected(vs, [e for e, _ in cs]):
            raise NotWeaklyConnected("selector subgraph is not weakly connected")
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "colors", cs)

    @property
    def edges(self) -> tuple[tuple[str, str], ...]:
        return tuple(e for e, _ in self.colors)

    def check_against(self, schema: Schema) -> None:
        missing = self.vertices - set(schema.vertices)
        if missing:
            raise InvalidGraphDatabase(f"selector vertices {_sorted(missing)} not in schema")
        for e in self.edges:
            if e not in schema.edges:
                raise InvalidGraphDatabase(f"selector edge {e} is not a schema edge")

    def __repr__(self) -> str:
        es = ", ".join(f"{u}->{v}:{'T' if c else 'F'}" for (u, v), c in self.colors)
        return f"Selector({{{','.join(_sorted(self.vertices))}}}; {es})"


def _result(db: GraphDatabase, assignment: dict[str, frozenset[str]], what: str) -> Instance:
    assignment = {k: v for k, v in assignment.items() if v}
    if not assignment:
        raise EmptyInstance(f"{what} has an empty domain")
    if not db.schema.induces_connected(assignment):
        raise NotWeaklyConnected(f"{what} domain {_sorted(assignment)} is not weakly connected")
    return Instance(assignment)


def add(f1: Instance, f2: Instance) -> Instance:
    """Pointwise union; both operands must share their domain."""
    if f1.domain != f2.domain:
        raise DomainMismatch("addition needs equal domains")
    return Instance({n: ys | f2[n] for n, ys in f1.items()})


def mult(db: GraphDatabase, f1: Instance, f2: Instance) -> Instance:
    """Product: intersect on shared names, keep exclusive names as they are.

    Shared names whose images do not meet drop out of the domain.
    """
    out = {}
    for n in f1.domain | f2.domain:
        a, b = f1.get(n), f2.get(n)
        if a is not None and b is not None:
            out[n] = a & b
        else:
            out[n] = a if a is not None else b
    return _result(db, out, "product")


def project_inst(db: GraphDatabase, f: Instance, names: Iterable[str]) -> Instance:
    names = frozenset(names)
    if not names <= f.domain:
        raise NotSubdomain(f"{_sorted(names - f.domain)} outside the instance domain")
    return _result(db, {n: f[n] for n in names}, "projection")


def diff(db: GraphDatabase, f1: Instance, f2: Instance) -> Instance:
    if f1.domain != f2.domain:
        raise DomainMismatch("difference needs equal domains")
    return _result(db, {n: ys - f2[n] for n, ys in f1.items()}, "difference")


def _matches(db: GraphDatabase, sel: Selector, candidates: Mapping[str, Iterable[str]]
             ) -> Iterator[dict[str, str]]:
    order = _sorted(sel.vertices)
    # edges checked as soon as both endpoints are chosen
    pos = {v: i for i, v in enumerate(order)}
    checks: list[list] = [[] for _ in order]
    for (u, v), c in sel.colors:
        checks[max(pos[u], pos[v])].append((u, v, c))
    pick: dict[str, str] = {}
    cand = {v: _sorted(candidates[v]) for v in order}

    def rec(i):
        if i == len(order):
            yield dict(pick)
            return
        v = order[i]
        for y in cand[v]:
            pick[v] = y
            if all(db.color(pick[a], pick[b]) == c for a, b, c in checks[i]):
                yield from rec(i + 1)
        pick.pop(v, None)

    yield from rec(0)


def simple_instances(db: GraphDatabase, sel: Selector) -> set[Instance]:
    """Singleton-valued restrictions of Ext on the selector's vertices whose
    structure edges carry exactly the selector's colors."""
    sel.check_against(db.schema)
    return {Instance({v: [y] for v, y in m.items()}) for m in _matches(db, sel, db.ext)}


def select(db: GraphDatabase, f: Instance, sel: Selector) -> Instance:
    """Sum of the simple instances of ``sel`` that are restrictions of ``f``."""
    sel.check_against(db.schema)
    if not sel.vertices <= f.domain:
        raise DomainMismatch("selector vertices must lie in the instance domain")
    out: dict[str, set[str]] = {v: set() for v in sel.vertices}
    found = False
    for m in _matches(db, sel, {v: f[v] for v in sel.vertices}):
        found = True
        for v, y in m.items():
            out[v].add(y)
    if not found:
        raise EmptySelection(f"no simple instance of {sel!r} lies under the instance")
    return Instance(out)


def all_selectors(schema: Schema) -> list[Selector]:
    """Every colored weakly connected subgraph of the schema."""
    out = []
    verts = _sorted(schema.vertices)
    for r in range(1, len(verts) + 1):
        for vs in itertools.combinations(verts, r):
            inner = [e for e in schema.edges if e[0] in vs and e[1] in vs]
            for k in range(len(inner) + 1):
                for es in itertools.combinations(inner, k):
                    if not is_weakly_connected(vs, es):
                        continue
                    for cols in itertools.product((True, False), repeat=len(es)):
                        out.append(Selector(vs, dict(zip(es, cols))))
    return out
