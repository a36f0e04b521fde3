"""Orbit-partition and cycle-partition sets of a relational database.

``OP`` collects the orbit partitions of every subgroup of the automorphism
group; ``CP`` the cycle partitions of every single automorphism. Both are
also available straight from their defining conditions (data-domain
compatibility plus an automorphism witness), which the test-suite uses to
cross-check the group-theoretic constructions.
"""

from __future__ import annotations

import functools

from .errors import ResourceLimit
from .permgroup import (
    DEFAULT_SUBGROUP_CAP,
    PermutationGroup,
    aut,
    cycles,
    orbits,
    subgroups,
)
from .relalg import RelationalDatabase, data_domain
from .setpartition import (
    Partition,
    all_partitions,
    build_orbit,
    join,
    poset_extrema,
    refines,
)

__all__ = [
    "Partition",
    "refines",
    "join",
    "all_partitions",
    "build_orbit",
    "poset_extrema",
    "orbit_partition_set",
    "orbit_partition_set_direct",
    "cycle_partition_set",
    "op_set",
    "op_set_direct",
    "cp_set",
    "cp_set_direct",
    "domain_compatible",
    "format_partition_set",
    "DIRECT_GROUND_CAP",
]

DIRECT_GROUND_CAP = 12


@functools.lru_cache(maxsize=256)
def _subgroup_orbit_set(group: PermutationGroup, cap: int) -> frozenset[Partition]:
    return frozenset(orbits(h) for h in subgroups(group, cap))


def orbit_partition_set(group: PermutationGroup,
                        cap: int = DEFAULT_SUBGROUP_CAP) -> frozenset[Partition]:
    """``{orbits(H) : H <= group}`` by explicit subgroup enumeration."""
    return _subgroup_orbit_set(group, cap)


def _preserves_classes(g, partition: Partition) -> bool:
    where = partition.block_map()
    return all(where[g(x)] == where[x] for x in where)


def orbit_partition_set_direct(group: PermutationGroup) -> frozenset[Partition]:
    """Orbit partitions from the defining condition, no subgroup search.

    A partition qualifies when the automorphisms fixing each of its classes
    setwise move every element onto every other element of its class.
    """
    n = group.degree
    if n > DIRECT_GROUND_CAP:
        raise ResourceLimit(f"direct enumeration is capped at ground sets of {DIRECT_GROUND_CAP}")
    out = set()
    elements = list(group.elements)
    for p in all_partitions(range(1, n + 1)):
        keep = PermutationGroup(n, frozenset(g for g in elements if _preserves_classes(g, p)))
        if orbits(keep) == p:
            out.add(p)
    return frozenset(out)


def cycle_partition_set(group: PermutationGroup) -> frozenset[Partition]:
    return frozenset(cycles(g) for g in group.elements)


def domain_compatible(partition: Partition, db: RelationalDatabase) -> bool:
    """Each class is disjoint from, or inside, the data domain of every relation."""
    doms = [data_domain(r) for r in db.relations]
    return all(d.isdisjoint(c) or d.issuperset(c) for d in doms for c in partition.classes)


def op_set(db: RelationalDatabase, cap: int = DEFAULT_SUBGROUP_CAP) -> frozenset[Partition]:
    """``OP(db)``: orbit partitions of all subgroups of ``Aut(db)``."""
    return orbit_partition_set(aut(db), cap)


def op_set_direct(db: RelationalDatabase) -> frozenset[Partition]:
    """``OP(db)`` from the two defining conditions over all partitions of ``U``."""
    return frozenset(p for p in orbit_partition_set_direct(aut(db)) if domain_compatible(p, db))


def cp_set(db: RelationalDatabase) -> frozenset[Partition]:
    """``CP(db)``: the cycle partitions of the automorphisms of ``db``."""
    return cycle_partition_set(aut(db))


def cp_set_direct(db: RelationalDatabase) -> frozenset[Partition]:
    """``CP(db)`` from its definition: one automorphism whose powers connect
    every pair inside a class while fixing every class setwise."""
    group = aut(db)
    n = db.n
    if n > DIRECT_GROUND_CAP:
        raise ResourceLimit(f"direct enumeration is capped at ground sets of {DIRECT_GROUND_CAP}")
    out = set()
    for p in all_partitions(range(1, n + 1)):
        if not domain_compatible(p, db):
            continue
        for g in group.elements:
            if _preserves_classes(g, p) and all(
                    build_orbit(c[0], [cycles(g)]) == frozenset(c) for c in p.classes):
                out.add(p)
                break
    return frozenset(out)


def format_partition_set(ps) -> str:
    """One partition per line in brace form, finest-first then lexicographic."""
    return "".join(f"{p}\n" for p in sorted(ps, key=lambda p: (-len(p), p.sort_key())))
