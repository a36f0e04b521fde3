"""Set partitions of a finite ground set and the refinement order on them."""

from __future__ import annotations

from collections.abc import Hashable, Iterable, Iterator
from dataclasses import dataclass

from .errors import GroundMismatch

__all__ = [
    "Partition",
    "refines",
    "all_partitions",
    "build_orbit",
    "poset_extrema",
    "join",
]


def _sort_key(x):
    # ints sort numerically; strings naturally ("x2" < "x10")
    if isinstance(x, str):
        head = x.rstrip("0123456789")
        tail = x[len(head):]
        return (1, head, int(tail) if tail else -1, x)
    return (0, x)


@dataclass(frozen=True)
class Partition:
    """A partition stored in canonical form.

    Elements are sorted inside each class and classes are sorted by their
    least element, so two partitions of the same ground set compare equal
    exactly when they have the same classes.
    """

    classes: tuple[tuple[Hashable, ...], ...]

    def __init__(self, classes: Iterable[Iterable[Hashable]]):
        blocks = []
        seen: set = set()
        for cls in classes:
            block = tuple(sorted(set(cls), key=_sort_key))
            if not block:
                raise ValueError("partition classes must be nonempty")
            overlap = seen.intersection(block)
            if overlap:
                raise ValueError(f"classes overlap on {sorted(overlap, key=_sort_key)}")
            seen.update(block)
            blocks.append(block)
        blocks.sort(key=lambda b: _sort_key(b[0]))
        object.__setattr__(self, "classes", tuple(blocks))

    @classmethod
    def singletons(cls, ground: Iterable[Hashable]) -> Partition:
        return cls([x] for x in ground)

    @classmethod
    def whole(cls, ground: Iterable[Hashable]) -> Partition:
        return cls([list(ground)])

    @classmethod
    def from_labels(cls, labels: dict) -> Partition:
        """Build a partition from an element -> class-label mapping."""
        groups: dict = {}
        for x, lab in labels.items():
            groups.setdefault(lab, []).append(x)
        return cls(groups.values())

    @property
    def ground(self) -> frozenset:
        return frozenset(x for c in self.classes for x in c)

    def class_of(self, x) -> frozenset:
        for c in self.classes:
            if x in c:
                return frozenset(c)
        raise KeyError(x)

    def block_map(self) -> dict:
        """Element -> index of its class."""
        return {x: i for i, c in enumerate(self.classes) for x in c}

    def is_union_of_classes(self, subset: Iterable) -> bool:
        s = set(subset)
        return all(s.isdisjoint(c) or s.issuperset(c) for c in self.classes)

    def __len__(self) -> int:
        return len(self.classes)

    def __iter__(self) -> Iterator[tuple]:
        return iter(self.classes)

    def __le__(self, other: Partition) -> bool:
        return refines(self, other)

    def sort_key(self):
        return tuple(tuple(_sort_key(x) for x in c) for c in self.classes)

    def __str__(self) -> str:
        return "".join("{" + ",".join(str(x) for x in c) + "}" for c in self.classes)

    def __repr__(self) -> str:
        return f"Partition({self})"


def refines(p1: Partition, p2: Partition) -> bool:
    """True iff every class of ``p1`` lies inside some class of ``p2``."""
    if p1.ground != p2.ground:
        raise GroundMismatch("partitions are over different ground sets")
    where = p2.block_map()
    return all(len({where[x] for x in c}) == 1 for c in p1.classes)


def join(p1: Partition, p2: Partition) -> Partition:
    """Finest partition that both arguments refine."""
    if p1.ground != p2.ground:
        raise GroundMismatch("partitions are over different ground sets")
    parent = {x: x for x in p1.ground}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in (p1, p2):
        for c in p.classes:
            r = find(c[0])
            for y in c[1:]:
                parent[find(y)] = r
    return Partition.from_labels({x: find(x) for x in parent})


def all_partitions(ground: Iterable[Hashable]) -> Iterator[Partition]:
    """Every partition of ``ground``, via restricted-growth strings."""
    elems = sorted(set(ground), key=_sort_key)
    n = len(elems)
    if n == 0:
        return
    rgs = [0] * n

    def rec(i: int, top: int) -> Iterator[Partition]:
        if i == n:
            blocks: list[list] = [[] for _ in range(top + 1)]
            for x, b in zip(elems, rgs):
                blocks[b].append(x)
            yield Partition(blocks)
            return
        for b in range(top + 2):
            rgs[i] = b
            yield from rec(i + 1, max(top, b))

    rgs[0] = 0
    yield from rec(1, 0)


def build_orbit(x, cps: Iterable[Partition]) -> frozenset:
    """Grow ``{x}`` until it is a union of classes of every partition given.

    Runs the repeat-until-unmodified loop: for each partition take the
    smallest union of its classes covering the current set, and stop once a
    full pass adds nothing.
    """
    cps = list(cps)
    if not cps:
        return frozenset([x])
    ground = cps[0].ground
    if any(p.ground != ground for p in cps):
        raise GroundMismatch("cycle partitions are over different ground sets")
    if x not in ground:
        raise GroundMismatch(f"{x!r} is not in the ground set")
    result = {x}
    modified = True
    while modified:
        modified = False
        for p in cps:
            cover = set()
            for c in p.classes:
                if result.intersection(c):
                    cover.update(c)
            if cover - result:
                result |= cover
                modified = True
    return frozenset(result)


def poset_extrema(ps: Iterable[Partition]) -> tuple[Partition | None, Partition | None]:
    """Return ``(minimum, maximum)`` of a set of partitions under refinement.

    Either slot is ``None`` when no element is comparable to, and below
    (resp. above), all the others.
    """
    ps = list(dict.fromkeys(ps))
    if not ps:
        raise ValueError("empty set of partitions")
    ground = ps[0].ground
    if any(p.ground != ground for p in ps):
        raise GroundMismatch("partitions are over different ground sets")
    minimum = next((p for p in ps if all(refines(p, q) for q in ps)), None)
    maximum = next((p for p in ps if all(refines(q, p) for q in ps)), None)
    return minimum, maximum
