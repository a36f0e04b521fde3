"""Seeded random generators for relational and graph test databases.

Used by the test-suite, the acceptance checks and the demos. Every
generator takes a :class:`random.Random` so runs are reproducible.
"""

from __future__ import annotations

import itertools
import random

from .graphmodel import GraphDatabase, Instance, Schema, Structure
from .permgroup import Permutation, PermutationGroup, group_closure, symmetric_group
from .relalg import Relation, RelationalDatabase

__all__ = [
    "random_relation",
    "random_database",
    "random_candidate",
    "random_subgroup",
    "random_subgroup_pair",
    "random_oriented_schema",
    "random_graph_database",
    "random_instance",
]


def random_relation(rng: random.Random, n: int, arity: int, size: int | None = None) -> Relation:
    """A nonempty relation over ``1..n``."""
    space = n ** arity
    if size is None:
        size = rng.randint(1, min(space, 6))
    rows = set()
    while len(rows) < min(size, space):
        rows.add(tuple(rng.randint(1, n) for _ in range(arity)))
    return Relation(arity, rows)


def random_database(rng: random.Random, max_n: int = 6, max_relations: int = 3,
                    max_arity: int = 3, symmetric_bias: float = 0.5) -> RelationalDatabase:
    """A database whose relations cover ``1..n``.

    With probability ``symmetric_bias`` the relations are closed under a
    random permutation, so automorphism groups are often nontrivial.
    """
    n = rng.randint(1, max_n)
    k = rng.randint(1, max_relations)
    rels = [random_relation(rng, n, rng.randint(1, max_arity)) for _ in range(k)]
    if rng.random() < symmetric_bias and n > 1:
        g = Permutation(rng.sample(range(1, n + 1), n))
        closed = []
        for r in rels:
            rows = set(r.tuples)
            for _ in range(g.order()):
                rows |= {tuple(g(x) for x in t) for t in rows}
            closed.append(Relation(r.arity, rows))
        rels = closed
    covered = {x for r in rels for t in r.tuples for x in t}
    missing = sorted(set(range(1, n + 1)) - covered)
    if missing:
        rels.append(Relation(1, [(x,) for x in missing]))
    return RelationalDatabase(rels)


def random_candidate(rng: random.Random, db: RelationalDatabase, max_arity: int = 3) -> Relation:
    """A candidate relation over the universe of ``db``.

    Half of the time it is built from automorphism-closed material (an
    orbit of a random tuple, or a projection of a database relation), so
    positive verdicts are well represented.
    """
    from .permgroup import aut

    n = db.n
    arity = rng.randint(1, max_arity)
    choice = rng.random()
    if choice < 0.35:
        t = tuple(rng.randint(1, n) for _ in range(arity))
        return Relation(arity, {tuple(g(x) for x in t) for g in aut(db).elements})
    if choice < 0.5:
        r = rng.choice(db.relations)
        idx = [rng.randint(1, r.arity) for _ in range(rng.randint(1, r.arity))]
        return Relation(len(idx), {tuple(t[j - 1] for j in idx) for t in r.tuples})
    return random_relation(rng, n, arity)


def random_subgroup(rng: random.Random, n: int, generators: int | None = None) -> PermutationGroup:
    """The group generated by a few random permutations of ``1..n``."""
    if generators is None:
        generators = rng.randint(0, 2)
    gens = [Permutation(rng.sample(range(1, n + 1), n)) for _ in range(generators)]
    return group_closure(gens, degree=n)


def random_subgroup_pair(rng: random.Random, n: int) -> tuple[PermutationGroup, PermutationGroup]:
    """``(H, G)`` with ``H <= G <= S_n``; ``H`` is generated by elements of ``G``."""
    g = random_subgroup(rng, n, rng.randint(1, 3)) if n > 1 else symmetric_group(n)
    elems = sorted(g.elements)
    h = group_closure(rng.sample(elems, rng.randint(0, min(2, len(elems)))), degree=n)
    return h, g


def random_oriented_schema(rng: random.Random, n_vertices: int,
                           extra_edge_prob: float = 0.3) -> Schema:
    """A weakly connected schema without loops or antiparallel pairs."""
    names = [chr(ord("a") + i) for i in range(n_vertices)]
    edges = set()
    for i in range(1, n_vertices):
        j = rng.randrange(i)
        edges.add((names[i], names[j]) if rng.random() < 0.5 else (names[j], names[i]))
    for u, v in itertools.combinations(names, 2):
        if (u, v) in edges or (v, u) in edges:
            continue
        if rng.random() < extra_edge_prob:
            edges.add((u, v) if rng.random() < 0.5 else (v, u))
    return Schema(tuple(names), tuple(sorted(edges)))


def random_graph_database(rng: random.Random, max_names: int = 4, max_values: int = 8,
                          types: int = 2, noise: float = 0.15) -> GraphDatabase:
    """A valid graph database with at most ``max_values`` structure vertices.

    Each value receives a hidden type; an edge's color is a random function
    of the schema edge and the two endpoint types, flipped with probability
    ``noise``. Types make large indistinguishable classes likely, noise
    breaks some of them.
    """
    k = rng.randint(2, max_names)
    schema = random_oriented_schema(rng, k)
    sizes = [1] * k
    for _ in range(rng.randint(0, max_values - k)):
        sizes[rng.randrange(k)] += 1
    ext = {x: [f"{x}{i + 1}" for i in range(s)] for x, s in zip(schema.vertices, sizes)}
    kind = {y: rng.randrange(types) for ys in ext.values() for y in ys}
    rule = {(e, s, t): rng.random() < 0.5
            for e in schema.edges for s in range(types) for t in range(types)}
    colors = {}
    for (u, w) in schema.edges:
        for x in ext[u]:
            for y in ext[w]:
                c = rule[((u, w), kind[x], kind[y])]
                colors[(x, y)] = (not c) if rng.random() < noise else c
    values = [y for ys in ext.values() for y in ys]
    return GraphDatabase(schema, Structure(values, colors), ext)


def random_instance(rng: random.Random, db: GraphDatabase) -> Instance:
    """A random instance: connected domain grown from a random name,
    random nonempty subsets of the extension images."""
    names = list(db.schema.vertices)
    adj = {x: set() for x in names}
    for u, v in db.schema.edges:
        if u != v:
            adj[u].add(v)
            adj[v].add(u)
    dom = {rng.choice(names)}
    target = rng.randint(1, len(names))
    while len(dom) < target:
        border = sorted({w for x in dom for w in adj[x]} - dom)
        if not border:
            break
        dom.add(rng.choice(border))
    out = {}
    for x in sorted(dom):
        vals = sorted(db.ext[x])
        out[x] = rng.sample(vals, rng.randint(1, len(vals)))
    return Instance(out)
