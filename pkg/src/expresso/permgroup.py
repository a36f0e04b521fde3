"""Permutations of ``{1..n}``, permutation groups and database automorphisms.

Composition follows ``(g * h)(x) == g(h(x))``: the right factor acts first.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from .errors import (
    DegreeMismatch,
    ElementOutOfRange,
    NonDivisor,
    NotASubgroup,
    ResourceLimit,
)
from .relalg import Relation, RelationalDatabase, data_domain
from .setpartition import Partition

__all__ = [
    "Permutation",
    "PermutationGroup",
    "is_compatible",
    "aut",
    "aut_exhaustive",
    "cgr",
    "group_closure",
    "symmetric_group",
    "subgroups",
    "orbits",
    "cycles",
    "stabilizer",
    "index",
    "DEFAULT_SUBGROUP_CAP",
]

DEFAULT_SUBGROUP_CAP = 5040


@dataclass(frozen=True, order=True)
class Permutation:
    """A bijection on ``1..n``; ``images[i - 1]`` is the image of ``i``."""

    images: tuple[int, ...]

    def __init__(self, images: Sequence[int]):
        images = tuple(images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"{images} is not a permutation of 1..{len(images)}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(range(1, n + 1))

    @classmethod
    def from_cycles(cls, n: int, *cycs: Sequence[int]) -> Permutation:
        """``Permutation.from_cycles(4, (1, 2), (3, 4))`` is (1 2)(3 4)."""
        img = list(range(1, n + 1))
        for c in cycs:
            for a, b in zip(c, c[1:] + type(c)(c[:1])):
                if not 1 <= a <= n:
                    raise ElementOutOfRange(f"{a} outside 1..{n}")
                img[a - 1] = b
        return cls(img)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x - 1]

    def __mul__(self, other: Permutation) -> Permutation:
        if self.degree != other.degree:
            raise DegreeMismatch(f"degrees {self.degree} and {other.degree} differ")
        im = self.images
        return Permutation._raw(tuple(im[y - 1] for y in other.images))

    @classmethod
    def _raw(cls, images: tuple[int, ...]) -> Permutation:
        p = object.__new__(cls)
        object.__setattr__(p, "images", images)
        return p

    def inverse(self) -> Permutation:
        inv = [0] * self.degree
        for i, y in enumerate(self.images, start=1):
            inv[y - 1] = i
        return Permutation._raw(tuple(inv))

    def __pow__(self, k: int) -> Permutation:
        result = Permutation.identity(self.degree)
        base = self if k >= 0 else self.inverse()
        for _ in range(abs(k)):
            result = result * base
        return result

    def is_identity(self) -> bool:
        return all(y == i for i, y in enumerate(self.images, start=1))

    def cycle_list(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its least element."""
        seen = set()
        out = []
        for i in range(1, self.degree + 1):
            if i in seen:
                continue
            cyc = [i]
            seen.add(i)
            j = self(i)
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = self(j)
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycle_list())) if not self.is_identity() else 1

    def apply(self, t: Sequence[int]) -> tuple[int, ...]:
        """Componentwise image of a tuple."""
        return tuple(self.images[x - 1] for x in t)

    def cycle_notation(self) -> str:
        cyc = self.cycle_list()
        if not cyc:
            return "Identity"
        return " ".join("(" + " ".join(map(str, c)) + ")" for c in cyc)

    def __str__(self) -> str:
        return " ".join(map(str, self.images))

    def __repr__(self) -> str:
        return f"Permutation({self.cycle_notation()}, n={self.degree})"


@dataclass(frozen=True)
class PermutationGroup:
    """A finite group of permutations of ``1..degree``.

    Construct through :func:`group_closure`, :func:`aut` or
    :func:`symmetric_group`, which guarantee the group laws; :meth:`check`
    re-verifies them from scratch.
    """

    degree: int
    elements: frozenset[Permutation]

    def __post_init__(self):
        for g in self.elements:
            if g.degree != self.degree:
                raise DegreeMismatch(f"{g!r} does not have degree {self.degree}")

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.sorted_elements())

    def __contains__(self, g) -> bool:
        return g in self.elements

    def sorted_elements(self) -> list[Permutation]:
        """Identity first, then the rest in lexicographic image order."""
        return sorted(self.elements)

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def issubgroup(self, other: PermutationGroup) -> bool:
        return self.degree == other.degree and self.elements <= other.elements

    def check(self) -> None:
        """Raise ``AssertionError`` unless identity, closure and inverses hold."""
        els = self.elements
        assert self.identity() in els, "identity missing"
        for g in els:
            assert g.inverse() in els, f"inverse of {g!r} missing"
            for h in els:
                assert g * h in els, f"{g!r} * {h!r} missing"
        assert math.factorial(self.degree) % len(els) == 0, "order does not divide n!"

    def to_table(self) -> str:
        """One permutation per line as images of ``1..n``, identity first."""
        return "\n".join(str(g) for g in self.sorted_elements()) + "\n"

    def __repr__(self) -> str:
        return f"PermutationGroup(degree={self.degree}, order={len(self)})"


def is_compatible(psi: Permutation, r: Relation) -> bool:
    """True iff ``psi`` maps every tuple of ``r`` onto a tuple of ``r``."""
    dom = data_domain(r)
    if dom and max(dom) > psi.degree:
        raise DegreeMismatch(f"relation mentions {max(dom)} but degree is {psi.degree}")
    return all(psi.apply(t) in r.tuples for t in r.tuples)


def aut_exhaustive(db: RelationalDatabase) -> PermutationGroup:
    """Filter all ``n!`` permutations; the reference the search is checked against."""
    n = db.n
    els = frozenset(
        p for p in map(Permutation._raw, itertools.permutations(range(1, n + 1)))
        if all(is_compatible(p, r) for r in db.relations))
    return PermutationGroup(n, els)


def aut(db: RelationalDatabase) -> PermutationGroup:
    """All permutations of the universe compatible with every relation.

    Backtracking over partial assignments. Elements are assigned in
    decreasing order of how many tuples they occur in; a branch is cut as
    soon as a tuple whose components are all assigned lands outside its
    relation. Images must also preserve per-relation occurrence counts,
    which any automorphism does.
    """
    n = db.n
    rels = [r.tuples for r in db.relations]
    participation = {x: 0 for x in range(1, n + 1)}
    # signature of an element: how often it occurs at each position of each relation
    signature = {x: [] for x in range(1, n + 1)}
    for ri, ts in enumerate(rels):
        arity = len(next(iter(ts)))
        counts = {x: [0] * arity for x in range(1, n + 1)}
        for t in ts:
            for pos, x in enumerate(t):
                participation[x] += 1
                counts[x][pos] += 1
        for x in range(1, n + 1):
            signature[x].append(tuple(counts[x]))
    signature = {x: tuple(v) for x, v in signature.items()}
    order = sorted(range(1, n + 1), key=lambda x: (-participation[x], x))
    rank = {x: i for i, x in enumerate(order)}
    # checks[i]: tuples that become fully assigned once order[i] is assigned
    checks: list[list[tuple[int, tuple[int, ...]]]] = [[] for _ in range(n)]
    for ri, ts in enumerate(rels):
        for t in ts:
            checks[max(rank[x] for x in t)].append((ri, t))

    images: dict[int, int] = {}
    used: set[int] = set()
    found: list[Permutation] = []

    def extend(i: int) -> None:
        if i == n:
            found.append(Permutation._raw(tuple(images[x] for x in range(1, n + 1))))
            return
        x = order[i]
        for y in range(1, n + 1):
            if y in used or signature[y] != signature[x]:
                continue
            images[x] = y
            ok = all(tuple(images[z] for z in t) in rels[ri] for ri, t in checks[i])
            if ok:
                used.add(y)
                extend(i + 1)
                used.discard(y)
            del images[x]

    extend(0)
    return PermutationGroup(n, frozenset(found))


def cgr(db: RelationalDatabase) -> Relation:
    """The cogroup relation: one row ``(psi(1), ..., psi(n))`` per automorphism."""
    return Relation(db.n, (g.images for g in aut(db).elements))


def group_closure(perms: Iterable[Permutation], degree: int | None = None) -> PermutationGroup:
    """Smallest group containing ``perms``."""
    gens = list(dict.fromkeys(perms))
    degrees = {g.degree for g in gens}
    if degree is not None:
        degrees.add(degree)
    if len(degrees) > 1:
        raise DegreeMismatch(f"mixed degrees {sorted(degrees)}")
    if not degrees:
        raise ValueError("degree is required when no permutations are given")
    n = degrees.pop()
    e = Permutation.identity(n)
    gens = [g for g in gens if not g.is_identity()]
    elements = {e}
    queue = [e]
    while queue:
        nxt = []
        for x in queue:
            for g in gens:
                y = g * x
                if y not in elements:
                    elements.add(y)
                    nxt.append(y)
        queue = nxt
    return PermutationGroup(n, frozenset(elements))


def symmetric_group(n: int) -> PermutationGroup:
    return PermutationGroup(
        n, frozenset(map(Permutation._raw, itertools.permutations(range(1, n + 1)))))


class _Table:
    """Index-based view of a group with a full multiplication table."""

    def __init__(self, group: PermutationGroup):
        self.els = group.sorted_elements()
        idx = {g.images: i for i, g in enumerate(self.els)}
        ims = [g.images for g in self.els]
        self.mul = [[idx[tuple(a[y - 1] for y in b)] for b in ims] for a in ims]
        self.identity = idx[group.identity().images]
        self.inv = [row.index(self.identity) for row in self.mul]

    def power_class(self, g: int) -> list[int]:
        """Elements generating the same cyclic group as ``g``."""
        powers = [self.identity]
        x = g
        while x != self.identity:
            powers.append(x)
            x = self.mul[x][g]
        order = len(powers)
        return [powers[k] for k in range(1, order) if math.gcd(k, order) == 1]

    def join(self, base: frozenset[int], gens: list[int], extra: int) -> frozenset[int]:
        """Group generated by subgroup ``base`` (generated by ``gens``) and ``extra``.

        The result is a union of left cosets ``x * base``; generators are
        only applied to coset representatives.
        """
        mul = self.mul
        allgens = gens + [extra]
        elements = set(base)
        reps = [self.identity]
        i = 0
        while i < len(reps):
            x = reps[i]
            i += 1
            for s in allgens:
                y = mul[s][x]
                if y not in elements:
                    row = mul[y]
                    elements.update(row[h] for h in base)
                    reps.append(y)
        return frozenset(elements)


def subgroups(group: PermutationGroup, cap: int = DEFAULT_SUBGROUP_CAP) -> set[PermutationGroup]:
    """Every subgroup of ``group``.

    Breadth-first from the trivial group: each known subgroup ``H`` is
    joined with one extra element ``g`` at a time and results are
    deduplicated by element set. ``<H, g>`` only depends on the double coset
    ``HgH`` and on the cyclic group ``<g>``, so one representative per such
    class is tried.
    """
    if len(group) > cap:
        raise ResourceLimit(f"group of order {len(group)} exceeds subgroup cap {cap}")
    t = _Table(group)
    mul = t.mul
    order = len(t.els)
    trivial = frozenset([t.identity])
    found: dict[frozenset[int], list[int]] = {trivial: []}
    frontier = [trivial]
    while frontier:
        nxt = []
        for h in frontier:
            gens = found[h]
            hl = list(h)
            tried = bytearray(order)
            for x in h:
                tried[x] = 1
            for g in range(order):
                if tried[g]:
                    continue
                for p in t.power_class(g):
                    if tried[p]:
                        continue
                    for a in hl:
                        row = mul[mul[a][p]]
                        for b in hl:
                            tried[row[b]] = 1
                k = t.join(h, gens, g)
                if k not in found:
                    found[k] = gens + [g]
                    nxt.append(k)
        frontier = nxt
    return {PermutationGroup(group.degree, frozenset(t.els[i] for i in k)) for k in found}


def orbits(group: PermutationGroup) -> Partition:
    """Orbits of ``group`` on ``1..degree``."""
    n = group.degree
    parent = list(range(n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in group.elements:
        for x in range(1, n + 1):
            a, b = find(x), find(g(x))
            if a != b:
                parent[b] = a
    return Partition.from_labels({x: find(x) for x in range(1, n + 1)})


def cycles(psi: Permutation) -> Partition:
    cyc = psi.cycle_list()
    moved = {x for c in cyc for x in c}
    return Partition(cyc + [[x] for x in range(1, psi.degree + 1) if x not in moved])


def stabilizer(group: PermutationGroup, x: int) -> PermutationGroup:
    if not 1 <= x <= group.degree:
        raise ElementOutOfRange(f"{x} outside 1..{group.degree}")
    return PermutationGroup(group.degree, frozenset(g for g in group.elements if g(x) == x))


def index(group: PermutationGroup, sub: PermutationGroup) -> int:
    """``(G : H)``, the number of cosets of ``sub`` in ``group``."""
    if not sub.issubgroup(group):
        raise NotASubgroup("second argument is not contained in the first")
    q, r = divmod(len(group), len(sub))
    if r:
        raise NonDivisor(f"|H| = {len(sub)} does not divide |G| = {len(group)}")
    return q
