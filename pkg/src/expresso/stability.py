"""Stability, valid and canonical partitions, and the exact graph closure.

Two routes lead to the same partition of the values of an instance set:

* the *canonical partition* -- the coarsest partition whose classes are
  stable against every union of the other classes -- computed by
  enumerating candidate partitions;
* the *indistinguishability partition* ``P^BI`` -- values are equivalent
  when no instance expressible from the set tells them apart -- computed
  from the exact closure of the instance algebra.

Path dependencies quantify over colored walks of unbounded length. Walks are
compared only through their schema translation (a word of schema edge,
direction and color per step), so the condition "for every ``k``" is decided
exactly by a subset construction on pairs of walk endpoints; see
:func:`is_stable`.
"""

from __future__ import annotations

import itertools
import logging
from collections import deque
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from typing import Literal

from .errors import (
    DatabaseMismatch,
    GroundMismatch,
    InvalidInstance,
    NoMaximum,
    NotDisjoint,
    NotInImage,
    NotInSet,
    NotWeaklyConnected,
    ResourceLimit,
)
from .graphmodel import (
    GraphDatabase,
    Instance,
    all_selectors,
    check_instance,
    simple_instances,
)
from .setpartition import Partition, _sort_key, all_partitions

logger = logging.getLogger(__name__)

__all__ = [
    "PathSchema",
    "InstanceSet",
    "GraphVerdict",
    "is_split",
    "is_0_stable",
    "path_dependencies",
    "is_k_stable",
    "is_stable",
    "is_valid_partition",
    "valid_partitions",
    "canonical_partition",
    "bi_closure_graph",
    "pbi_partition",
    "expressible_by_partition",
    "decide_expressible_graph",
    "DEFAULT_INSTANCE_CAP",
    "EXHAUSTIVE_IMAGE_CAP",
]

DEFAULT_INSTANCE_CAP = 1_000_000
EXHAUSTIVE_IMAGE_CAP = 12
_MAX_NAMES = 16

Direction = Literal["forward", "backward"]


def _sorted(xs):
    return tuple(sorted(xs, key=_sort_key))


@dataclass(frozen=True)
class PathSchema:
    """A colored walk translated to schema names.

    ``edges[i]`` is the schema edge crossed at step ``i`` and
    ``directions[i]`` says whether it was crossed along or against its
    orientation.
    """

    names: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]
    directions: tuple[Direction, ...]
    colors: tuple[bool, ...]

    def __post_init__(self):
        if not (len(self.names) == len(self.edges) + 1 == len(self.directions) + 1
                == len(self.colors) + 1):
            raise ValueError("path schema components have inconsistent lengths")
        for i, ((u, v), d) in enumerate(zip(self.edges, self.directions)):
            ends = (u, v) if d == "forward" else (v, u)
            if ends != (self.names[i], self.names[i + 1]):
                raise ValueError(f"step {i} does not join {self.names[i]} to {self.names[i + 1]}")

    def __len__(self) -> int:
        return len(self.edges)

    def __str__(self) -> str:
        out = [self.names[0]]
        for (u, v), d, c, w in zip(self.edges, self.directions, self.colors, self.names[1:]):
            arrow = "->" if d == "forward" else "<-"
            out.append(f" {arrow}[{'T' if c else 'F'}] {w}")
        return "".join(out)


class InstanceSet:
    """A finite set of instances over one database, with cached analyses."""

    def __init__(self, db: GraphDatabase, instances: Iterable[Instance]):
        self.db = db
        self.instances: tuple[Instance, ...] = tuple(dict.fromkeys(instances))
        if not self.instances:
            raise InvalidInstance("an instance set needs at least one instance")
        for f in self.instances:
            try:
                check_instance(db, f)
            except (InvalidInstance, NotWeaklyConnected) as exc:
                raise DatabaseMismatch(f"{f!r} is not an instance of the database: {exc}") from exc
        self.image: frozenset[str] = frozenset().union(*(f.image for f in self.instances))
        self._stable_cache: dict = {}
        self._fail_cache: dict = {}
        self._closure = None

    @property
    def domain(self) -> frozenset[str]:
        return frozenset().union(*(f.domain for f in self.instances))

    def name_image(self, x: str) -> frozenset[str]:
        """Union of the images that the instances assign to the name ``x``."""
        return frozenset().union(*(f.get(x, frozenset()) for f in self.instances))

    def with_instance(self, g: Instance) -> InstanceSet:
        return InstanceSet(self.db, self.instances + (g,))

    def __iter__(self) -> Iterator[Instance]:
        return iter(self.instances)

    def __len__(self) -> int:
        return len(self.instances)

    def __repr__(self) -> str:
        return f"InstanceSet({list(self.instances)!r})"


def _check_in_image(A: frozenset, I: InstanceSet):
    outside = A - I.image
    if outside:
        raise NotInImage(f"{_sorted(outside)} are not in the image of the instance set")


def is_split(A: Iterable[str], I: InstanceSet) -> bool:
    """Some instance of ``I`` meets ``A`` without covering it."""
    A = frozenset(A)
    _check_in_image(A, I)
    return any(A & f.image and A - f.image for f in I)


def is_0_stable(A: Iterable[str], I: InstanceSet, strict: bool = True) -> bool:
    """``A`` lies in the image of one name and no instance tells its members apart.

    With ``strict=True`` (the default) the second condition is that ``A`` is
    not split: for every instance, ``A`` is inside its image or disjoint
    from it. ``strict=False`` also accepts an image strictly inside ``A``,
    the literal "one contains the other" wording; that variant lets an
    instance covering half of ``A`` keep ``A`` together, which contradicts
    the use of 0-stability in the uniqueness and expressiveness arguments.
    """
    A = frozenset(A)
    if not A:
        raise NotInImage("0-stability is defined for nonempty sets")
    _check_in_image(A, I)
    names = I.db.names(A)
    if len(names) != 1 or not A <= I.name_image(next(iter(names))):
        return False
    for f in I:
        img = f.image
        if not (A.isdisjoint(img) or A <= img or (not strict and img <= A)):
            return False
    return True


def _step_labels(db: GraphDatabase, Z: frozenset[str]):
    """For each value in ``Z``: step label -> successors inside ``Z``.

    A step label is ``(schema edge, direction, color)``.
    """
    out: dict[str, dict[tuple, set[str]]] = {z: {} for z in Z}
    for (u, v), c in db.structure.colors:
        if u in Z and v in Z:
            e = (db.name(u), db.name(v))
            out[u].setdefault((e, "forward", c), set()).add(v)
            out[v].setdefault((e, "backward", c), set()).add(u)
    return {z: {lab: frozenset(s) for lab, s in d.items()} for z, d in out.items()}


def path_dependencies(x: str, y: str, Z: Iterable[str], k: int, I: InstanceSet
                      ) -> set[PathSchema]:
    """Path schemata of the walks of length 1..k from ``x`` to ``y`` inside ``Z``.

    Explicit enumeration, exponential in ``k``; the stability tests use the
    equivalent automaton in :func:`_failure_depth`.
    """
    Z = frozenset(Z)
    _check_in_image(Z, I)
    for v in (x, y):
        if v not in Z:
            raise NotInSet(f"{v} is not in the path domain")
    if k < 1:
        raise ValueError("path length bound must be at least 1")
    db = I.db
    steps = _step_labels(db, Z)
    out: set[PathSchema] = set()

    def walk(v, labels, depth):
        if labels and v == y:
            names = [db.name(x)]
            for (e, d, _c) in labels:
                names.append(e[1] if d == "forward" else e[0])
            out.add(PathSchema(tuple(names), tuple(lab[0] for lab in labels),
                               tuple(lab[1] for lab in labels), tuple(lab[2] for lab in labels)))
        if depth == k:
            return
        for lab, succ in steps[v].items():
            for w in succ:
                walk(w, labels + (lab,), depth + 1)

    walk(x, (), 0)
    return out


_INF = float("inf")


def _failure_depth(A: frozenset, B: frozenset, I: InstanceSet) -> float:
    """Least ``k`` at which the path-dependency condition of k-stability fails.

    For fixed ``a1, a2`` we run the product of the two subset automata
    reading schema words: state ``(S1, S2)`` holds the walk endpoints from
    ``a1`` and from ``a2`` after the same word. ``b1`` may be matched by
    ``b2`` for all words up to length ``k`` exactly when ``b2`` lies in
    ``S2`` for every state of depth <= ``k`` whose ``S1`` contains ``b1``.
    Returns ``inf`` when the condition holds for every ``k``.
    """
    key = (A, B)
    if key in I._fail_cache:
        return I._fail_cache[key]
    Z = A | B
    steps = _step_labels(I.db, Z)

    def move(S, lab):
        out = frozenset()
        for v in S:
            nxt = steps[v].get(lab)
            if nxt:
                out |= nxt
        return out

    worst = _INF
    for a1 in _sorted(A):
        for a2 in _sorted(A):
            if a1 == a2:
                continue
            cand = {b: set(B) for b in B}
            start = (frozenset([a1]), frozenset([a2]))
            seen = {start}
            queue = deque([(start, 0)])
            failed = _INF
            while queue and failed == _INF:
                (S1, S2), depth = queue.popleft()
                if depth >= worst:
                    break
                labels = set()
                for v in S1:
                    labels.update(steps[v])
                for lab in labels:
                    T1 = move(S1, lab)
                    T2 = move(S2, lab)
                    for b in T1 & B:
                        cand[b] &= T2
                        if not cand[b]:
                            failed = depth + 1
                    state = (T1, T2)
                    if state not in seen:
                        seen.add(state)
                        queue.append((state, depth + 1))
            worst = min(worst, failed)
    I._fail_cache[key] = worst
    return worst


def _one_stable_colors(A: frozenset, B: frozenset, I: InstanceSet) -> bool:
    db = I.db
    out_colors = {a: set() for a in A}
    in_colors = {a: set() for a in A}
    for (u, v), c in db.structure.colors:
        if u in A and v in B:
            out_colors[u].add(c)
        if v in A and u in B:
            in_colors[v].add(c)
    every_out = set.union(*out_colors.values())
    every_in = set.union(*in_colors.values())
    return all(every_out <= out_colors[a] and every_in <= in_colors[a] for a in A)


def _check_pair(A, B, I):
    A, B = frozenset(A), frozenset(B)
    if A & B:
        raise NotDisjoint(f"{_sorted(A & B)} lie in both sets")
    if not A or not B:
        raise NotInImage("stability is defined for nonempty sets")
    _check_in_image(A | B, I)
    return A, B


def is_k_stable(A: Iterable[str], B: Iterable[str], I: InstanceSet, k: int) -> bool:
    """``A`` is k-stable with respect to ``B``: ``B`` cannot tell members of
    ``A`` apart using walks of length at most ``k``."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    A, B = _check_pair(A, B, I)
    if not is_0_stable(A, I):
        return False
    if k == 0:
        return True
    if not _one_stable_colors(A, B, I):
        return False
    return k == 1 or _failure_depth(A, B, I) > k


def is_stable(A: Iterable[str], B: Iterable[str], I: InstanceSet,
              k_max: int | None = None) -> bool:
    """k-stability for every ``k`` (or for every ``k <= k_max`` when given).

    The unbounded question is decided exactly: the candidate sets in
    :func:`_failure_depth` only shrink, so a failure at any length shows up
    within the finitely many reachable endpoint pairs.
    """
    A, B = _check_pair(A, B, I)
    key = (A, B, k_max)
    hit = I._stable_cache.get(key)
    if hit is None:
        if k_max is None:
            hit = (is_0_stable(A, I) and _one_stable_colors(A, B, I)
                   and _failure_depth(A, B, I) == _INF)
        else:
            hit = is_k_stable(A, B, I, k_max)
        I._stable_cache[key] = hit
    return hit


def _check_partition(P: Partition, I: InstanceSet):
    if P.ground != I.image:
        raise GroundMismatch("partition is not over the image of the instance set")


def is_valid_partition(P: Partition, I: InstanceSet, k_max: int | None = None) -> bool:
    """Every class is 0-stable and stable against every union of other classes.

    The explicit 0-stability requirement matters only for one-class
    partitions, where there are no other classes to test against.
    """
    _check_partition(P, I)
    classes = [frozenset(c) for c in P.classes]
    for i, A in enumerate(classes):
        if not is_0_stable(A, I):
            return False
        others = classes[:i] + classes[i + 1:]
        for r in range(1, len(others) + 1):
            for L in itertools.combinations(others, r):
                if not is_stable(A, frozenset().union(*L), I, k_max):
                    return False
    return True


def _zero_stable_blocks(I: InstanceSet) -> list[tuple[str, ...]]:
    """Coarsest grouping whose subsets are exactly the 0-stable candidates:
    same name and membership in the same instance images."""
    groups: dict = {}
    for y in I.image:
        key = (I.db.name(y), tuple(y in f.image for f in I))
        groups.setdefault(key, []).append(y)
    return [_sorted(g) for g in sorted(groups.values(), key=lambda g: min(map(_sort_key, g)))]


def valid_partitions(I: InstanceSet, k_max: int | None = None,
                     strategy: Literal["pruned", "exhaustive"] = "pruned") -> list[Partition]:
    """All valid partitions of ``Im(I)``.

    ``"exhaustive"`` filters every partition of the image. ``"pruned"``
    only enumerates partitions refining the 0-stable blocks, a necessary
    condition for validity, so both strategies return the same list.
    """
    if len(I.image) > EXHAUSTIVE_IMAGE_CAP:
        raise ResourceLimit(f"partition enumeration is capped at {EXHAUSTIVE_IMAGE_CAP} values")
    if strategy == "exhaustive":
        cands: Iterable[Partition] = all_partitions(_sorted(I.image))
    else:
        per_block = [list(all_partitions(b)) for b in _zero_stable_blocks(I)]
        cands = (Partition(c for p in combo for c in p.classes)
                 for combo in itertools.product(*per_block))
    return [p for p in cands if is_valid_partition(p, I, k_max)]


def canonical_partition(I: InstanceSet, k_max: int | None = None,
                        strategy: Literal["pruned", "exhaustive"] = "pruned") -> Partition:
    """The coarsest valid partition; raises :class:`NoMaximum` if the valid
    partitions have several maximal elements."""
    valid = valid_partitions(I, k_max, strategy)
    maximal = [p for p in valid if not any(p != q and p <= q for q in valid)]
    if len(maximal) != 1:
        raise NoMaximum(f"{len(maximal)} maximal valid partitions: "
                        + ", ".join(str(p) for p in maximal))
    top = maximal[0]
    if not all(p <= top for p in valid):
        raise NoMaximum("the maximal valid partition is not a maximum")
    return top


# --- exact closure of the instance algebra -------------------------------------------


class _Codec:
    """Instances as tuples of per-name bitmasks (0 = name undefined)."""

    def __init__(self, db: GraphDatabase):
        self.db = db
        self.names = _sorted(db.schema.vertices)
        if len(self.names) > _MAX_NAMES:
            raise ResourceLimit(f"exact closure supports at most {_MAX_NAMES} schema vertices")
        self.index = {x: i for i, x in enumerate(self.names)}
        self.values = [_sorted(db.ext[x]) for x in self.names]
        self.bit = {y: (self.index[x], 1 << j)
                    for x in self.names for j, y in enumerate(self.values[self.index[x]])}
        n = len(self.names)
        adj = [0] * n
        for u, v in db.schema.edges:
            if u != v:
                adj[self.index[u]] |= 1 << self.index[v]
                adj[self.index[v]] |= 1 << self.index[u]
        self.connected = [False] * (1 << n)
        for mask in range(1, 1 << n):
            start = mask & -mask
            seen = start
            frontier = start
            while frontier:
                low = frontier & -frontier
                frontier ^= low
                nb = adj[low.bit_length() - 1] & mask & ~seen
                seen |= nb
                frontier |= nb
            self.connected[mask] = seen == mask

    def encode(self, f: Instance) -> tuple[int, ...]:
        code = [0] * len(self.names)
        for _x, ys in f.items():
            for y in ys:
                i, b = self.bit[y]
                code[i] |= b
        return tuple(code)

    def decode(self, code: tuple[int, ...]) -> Instance:
        out = {}
        for i, m in enumerate(code):
            if m:
                out[self.names[i]] = [y for j, y in enumerate(self.values[i]) if m >> j & 1]
        return Instance(out)

    @staticmethod
    def domain(code) -> int:
        return sum(1 << i for i, m in enumerate(code) if m)


def _selector_table(codec: _Codec):
    """Distinct nonempty selections: (vertex mask, simple instances as codes)."""
    db = codec.db
    table = {}
    for sel in all_selectors(db.schema):
        simple = frozenset(codec.encode(s) for s in simple_instances(db, sel))
        if simple:
            mask = sum(1 << codec.index[v] for v in sel.vertices)
            table[(mask, simple)] = None
    return [(mask, [tuple((i, m) for i, m in enumerate(s) if m) for s in simple])
            for mask, simple in table]


def _closure_codes(I: InstanceSet, instance_cap: int) -> tuple[_Codec, set]:
    codec = _Codec(I.db)
    selectors = _selector_table(codec)
    conn = codec.connected
    known = {codec.encode(f) for f in I}
    frontier = list(known)
    by_domain: dict[int, list] = {}
    for c in known:
        by_domain.setdefault(codec.domain(c), []).append(c)
    rounds = 0
    while frontier:
        rounds += 1
        produced = set()
        for f in frontier:
            dom = codec.domain(f)
            # projections onto connected proper subdomains
            sub = (dom - 1) & dom
            while sub:
                if conn[sub]:
                    produced.add(tuple(m if sub >> i & 1 else 0 for i, m in enumerate(f)))
                sub = (sub - 1) & dom
            for smask, simple in selectors:
                if smask & ~dom:
                    continue
                res = [0] * len(f)
                for s in simple:
                    if all(f[i] & b for i, b in s):
                        for i, b in s:
                            res[i] |= b
                if any(res):
                    produced.add(tuple(res))
            for g in by_domain.get(dom, ()):
                produced.add(tuple(a | b for a, b in zip(f, g)))
                for x, y in ((f, g), (g, f)):
                    d = tuple(a & ~b for a, b in zip(x, y))
                    if conn[codec.domain(d)] if any(d) else False:
                        produced.add(d)
            for g in known:
                p = tuple((a & b) if (a and b) else (a | b) for a, b in zip(f, g))
                pd = codec.domain(p)
                if pd and conn[pd]:
                    produced.add(p)
            if len(known) + len(produced) > instance_cap:
                raise ResourceLimit(f"closure exceeded {instance_cap} instances")
        new = produced - known
        known |= new
        for c in new:
            by_domain.setdefault(codec.domain(c), []).append(c)
        frontier = list(new)
        logger.debug("closure round %d: %d new, %d total", rounds, len(new), len(known))
    return codec, known


def _closure(I: InstanceSet, instance_cap: int):
    if I._closure is None:
        I._closure = _closure_codes(I, instance_cap)
    if len(I._closure[1]) > instance_cap:
        raise ResourceLimit(f"closure exceeded {instance_cap} instances")
    return I._closure


def bi_closure_graph(I: InstanceSet, instance_cap: int = DEFAULT_INSTANCE_CAP) -> set[Instance]:
    """Every instance expressible from ``I``: the least set containing ``I``
    and closed under addition, product, projection, difference and selection
    by every selector."""
    codec, codes = _closure(I, instance_cap)
    return {codec.decode(c) for c in codes}


def pbi_partition(I: InstanceSet, instance_cap: int = DEFAULT_INSTANCE_CAP) -> Partition:
    """Values of ``Im(I)`` grouped by the expressible images containing them."""
    codec, codes = _closure(I, instance_cap)
    sig: dict[str, int] = {}
    for y in I.image:
        sig[y] = 0
    for k, c in enumerate(sorted(codes)):
        for y in sig:
            i, b = codec.bit[y]
            if c[i] & b:
                sig[y] |= 1 << k
    return Partition.from_labels(sig)


def expressible_by_partition(g: Instance, I: InstanceSet,
                             instance_cap: int = DEFAULT_INSTANCE_CAP) -> bool:
    """Membership test through ``P^BI``: every ``g(x)`` must be a union of
    classes. (Connectivity of ``Dom(g)`` is part of being an instance.)"""
    check_instance(I.db, g)
    if not g.image <= I.image:
        return False
    p = pbi_partition(I, instance_cap)
    return all(p.is_union_of_classes(ys) for _, ys in g.items())


@dataclass(frozen=True)
class GraphVerdict:
    expressible: bool
    before: Partition
    after: Partition | None
    reason: str = ""

    def line(self) -> str:
        word = "expressible" if self.expressible else "not-expressible"
        out = f"canonical {word} {self.before}"
        if self.after is not None and not self.expressible:
            out += f" -> {self.after}"
        if self.reason:
            out += f" ({self.reason})"
        return out


def decide_expressible_graph(g: Instance, I: InstanceSet,
                             k_max: int | None = None) -> GraphVerdict:
    """``g`` is expressible from ``I`` iff adjoining it leaves the canonical
    partition unchanged."""
    try:
        check_instance(I.db, g)
    except (InvalidInstance, NotWeaklyConnected) as exc:
        raise DatabaseMismatch(f"{g!r} is not an instance of the database: {exc}") from exc
    before = canonical_partition(I, k_max)
    if not g.image <= I.image:
        outside = ",".join(_sorted(g.image - I.image))
        return GraphVerdict(False, before, None, f"values {{{outside}}} outside Im(I)")
    after = canonical_partition(I.with_instance(g), k_max)
    return GraphVerdict(before == after, before, after)
