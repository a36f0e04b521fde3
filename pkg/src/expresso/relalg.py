"""Finite relations, relational databases and the five-operator algebra.

The algebra has two binary operators (union, cartesian product) and three
unary ones (projection, equality restriction, inequality restriction).
Restrictions can produce an empty tuple set mid-expression; such results are
represented by :class:`EmptyRelation`, which is legal inside a computation
but never accepted as a database relation or reported as an answer.
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Hashable, Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from typing import Literal

from .errors import (
    ArityMismatch,
    IndexOutOfRange,
    InvalidDatabase,
    InvalidRelation,
    ResourceLimit,
)

logger = logging.getLogger(__name__)

__all__ = [
    "Relation",
    "EmptyRelation",
    "RelationalDatabase",
    "union_rel",
    "product_rel",
    "project",
    "restrict_eq",
    "restrict_neq",
    "data_domain",
    "bi_closure_bounded",
    "is_expressible_bounded",
    "DEFAULT_MAX_DEPTH",
    "DEFAULT_RELATION_CAP",
]

DEFAULT_MAX_DEPTH = 4
DEFAULT_RELATION_CAP = 100_000


@dataclass(frozen=True)
class Relation:
    """A nonempty set of equal-length tuples of domain elements."""

    arity: int
    tuples: frozenset[tuple[int, ...]]

    def __init__(self, arity: int, tuples: Iterable[Sequence[int]]):
        if not isinstance(arity, int) or arity < 1:
            raise InvalidRelation(f"arity must be a positive integer, got {arity!r}")
        ts = frozenset(tuple(t) for t in tuples)
        for t in ts:
            if len(t) != arity:
                raise InvalidRelation(f"tuple {t} does not have arity {arity}")
        self._check_size(ts)
        object.__setattr__(self, "arity", arity)
        object.__setattr__(self, "tuples", ts)

    def _check_size(self, ts):
        if not ts:
            raise InvalidRelation("relations must be nonempty; use EmptyRelation")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]]) -> Relation:
        rows = [tuple(r) for r in rows]
        if not rows:
            raise InvalidRelation("cannot infer the arity of an empty row list")
        return cls(len(rows[0]), rows)

    @property
    def is_empty(self) -> bool:
        return not self.tuples

    def rows(self) -> list[tuple[int, ...]]:
        """Tuples in lexicographic order."""
        return sorted(self.tuples)

    def __len__(self) -> int:
        return len(self.tuples)

    def __iter__(self):
        return iter(self.rows())

    def __contains__(self, t) -> bool:
        return tuple(t) in self.tuples

    def __repr__(self) -> str:
        body = " ".join("(" + ",".join(map(str, t)) + ")" for t in self.rows())
        return f"{type(self).__name__}({self.arity}: {body})"


class EmptyRelation(Relation):
    """The empty tuple set of a given arity."""

    def __init__(self, arity: int):
        super().__init__(arity, ())

    def _check_size(self, ts):
        pass

    def __repr__(self) -> str:
        return f"EmptyRelation({self.arity})"


def _make(arity: int, tuples) -> Relation:
    tuples = frozenset(tuples)
    return Relation(arity, tuples) if tuples else EmptyRelation(arity)


def union_rel(r: Relation, s: Relation) -> Relation:
    if r.arity != s.arity:
        raise ArityMismatch(f"cannot unite arity {r.arity} with arity {s.arity}")
    return _make(r.arity, r.tuples | s.tuples)


def product_rel(r: Relation, s: Relation) -> Relation:
    return _make(r.arity + s.arity, (a + b for a in r.tuples for b in s.tuples))


def _check_position(r: Relation, j: int):
    if not 1 <= j <= r.arity:
        raise IndexOutOfRange(f"position {j} outside 1..{r.arity}")


def project(r: Relation, indices: Sequence[int]) -> Relation:
    """``r pi(f(1), ..., f(q))``; positions are 1-based and may repeat."""
    indices = tuple(indices)
    if not 1 <= len(indices) <= r.arity:
        raise IndexOutOfRange(f"projection length {len(indices)} outside 1..{r.arity}")
    for j in indices:
        _check_position(r, j)
    return _make(len(indices), (tuple(t[j - 1] for j in indices) for t in r.tuples))


def restrict_eq(r: Relation, j1: int, j2: int) -> Relation:
    _check_position(r, j1)
    _check_position(r, j2)
    return _make(r.arity, (t for t in r.tuples if t[j1 - 1] == t[j2 - 1]))


def restrict_neq(r: Relation, j1: int, j2: int) -> Relation:
    _check_position(r, j1)
    _check_position(r, j2)
    return _make(r.arity, (t for t in r.tuples if t[j1 - 1] != t[j2 - 1]))


def data_domain(rels: Relation | Iterable[Relation]) -> frozenset[int]:
    """Elements occurring in at least one tuple of the relation(s)."""
    if isinstance(rels, Relation):
        rels = [rels]
    return frozenset(x for r in rels for t in r.tuples for x in t)


@dataclass(frozen=True)
class RelationalDatabase:
    """A universe ``1..n`` together with named relations covering it.

    ``labels[i - 1]`` is the original label of element ``i`` when the
    database was built from arbitrary labels with :meth:`from_labelled`.
    """

    universe: frozenset[int]
    named: tuple[tuple[str, Relation], ...]
    labels: tuple = field(default=(), compare=False)

    def __init__(self, relations: Mapping[str, Relation] | Iterable[Relation],
                 universe: Iterable[int] | None = None, labels: Sequence = ()):
        if isinstance(relations, Mapping):
            named = tuple(relations.items())
        else:
            named = tuple((f"R{i + 1}", r) for i, r in enumerate(relations))
        if not named:
            raise InvalidDatabase("a database needs at least one relation")
        names = [n for n, _ in named]
        if len(set(names)) != len(names):
            raise InvalidDatabase("relation names must be distinct")
        for name, r in named:
            if not isinstance(r, Relation) or r.is_empty:
                raise InvalidDatabase(f"relation {name!r} must be a nonempty Relation")
        dom = data_domain(r for _, r in named)
        if universe is None:
            universe = dom
        universe = frozenset(universe)
        if dom - universe:
            raise InvalidDatabase(f"elements {sorted(dom - universe)} are outside the universe")
        if universe - dom:
            raise InvalidDatabase(
                f"universe elements {sorted(universe - dom)} occur in no relation")
        if universe != frozenset(range(1, len(universe) + 1)):
            raise InvalidDatabase("the universe must be 1..n; use from_labelled for other labels")
        object.__setattr__(self, "universe", universe)
        object.__setattr__(self, "named", named)
        object.__setattr__(self, "labels", tuple(labels) or tuple(sorted(universe)))

    @classmethod
    def from_labelled(cls, relations: Mapping[str, Iterable[Sequence[Hashable]]]
                      ) -> RelationalDatabase:
        """Canonicalize arbitrary labels to ``1..n`` (first-seen order)."""
        index: dict = {}
        for rows in relations.values():
            for row in rows:
                for x in row:
                    index.setdefault(x, len(index) + 1)
        rels = {name: Relation.from_rows([tuple(index[x] for x in row) for row in rows])
                for name, rows in relations.items()}
        return cls(rels, labels=tuple(index))

    @property
    def n(self) -> int:
        return len(self.universe)

    @property
    def relations(self) -> tuple[Relation, ...]:
        return tuple(r for _, r in self.named)

    def __getitem__(self, name: str) -> Relation:
        for n, r in self.named:
            if n == name:
                return r
        raise KeyError(name)

    def names(self) -> list[str]:
        return [n for n, _ in self.named]

    def adjoin(self, s: Relation, name: str = "S") -> RelationalDatabase:
        """This database with one more relation (universe unchanged)."""
        base = name
        k = 1
        while name in self.names():
            k += 1
            name = f"{base}{k}"
        return RelationalDatabase(dict(self.named) | {name: s}, self.universe, self.labels)


def _unary_results(r: Relation):
    m = r.arity
    for q in range(1, m + 1):
        for idx in itertools.product(range(1, m + 1), repeat=q):
            yield project(r, idx)
    for j1 in range(1, m + 1):
        for j2 in range(j1 + 1, m + 1):
            yield restrict_eq(r, j1, j2)
            yield restrict_neq(r, j1, j2)


def bi_closure_bounded(db: RelationalDatabase, max_arity: int | None = None,
                       max_depth: int = DEFAULT_MAX_DEPTH,
                       relation_cap: int = DEFAULT_RELATION_CAP) -> set[Relation]:
    """Relations reachable from ``db`` in at most ``max_depth`` operator rounds.

    Each round applies every operator to every combination involving at
    least one relation produced in the previous round; results wider than
    ``max_arity`` are discarded. The answer is sound (every member is
    expressible from ``db``) but, by construction, incomplete.
    Empty intermediates take part in the computation and are dropped from
    the returned set.
    """
    if max_arity is None:
        max_arity = 2 * max(r.arity for r in db.relations)
    if max_arity < max(r.arity for r in db.relations):
        raise ValueError("max_arity is below the widest database relation")
    known: set[Relation] = set(db.relations)
    frontier = set(known)
    for depth in range(max_depth):
        produced: set[Relation] = set()
        for r in frontier:
            produced.update(_unary_results(r))
        for r in frontier:
            for s in known:
                for a, b in ((r, s), (s, r)):
                    if a.arity == b.arity:
                        produced.add(union_rel(a, b))
                    if a.arity + b.arity <= max_arity:
                        produced.add(product_rel(a, b))
                if len(known) + len(produced) > relation_cap:
                    raise ResourceLimit(
                        f"closure exceeded {relation_cap} relations at depth {depth + 1}")
        frontier = produced - known
        known |= frontier
        logger.debug("depth %d: %d new relations, %d total", depth + 1, len(frontier), len(known))
        if len(known) > relation_cap:
            raise ResourceLimit(f"closure exceeded {relation_cap} relations")
        if not frontier:
            break
    return {r for r in known if not r.is_empty}


def is_expressible_bounded(s: Relation, db: RelationalDatabase, max_arity: int | None = None,
                           max_depth: int = DEFAULT_MAX_DEPTH,
                           relation_cap: int = DEFAULT_RELATION_CAP
                           ) -> Literal["yes", "unknown"]:
    """One-sided check: ``"yes"`` when ``s`` shows up in the bounded closure."""
    if max_arity is None:
        max_arity = max(2 * max(r.arity for r in db.relations), s.arity)
    closure = bi_closure_bounded(db, max_arity, max_depth, relation_cap)
    return "yes" if s in closure else "unknown"
