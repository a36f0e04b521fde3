"""Four interchangeable tests for whether a relation is expressible.

* ``paredaens``: every automorphism of the database respects ``S`` and
  ``D(S)`` lies inside ``D(db)``;
* ``aut_equality``: adjoining ``S`` leaves the automorphism group unchanged;
* ``orbit_partition``: adjoining ``S`` leaves ``OP`` unchanged;
* ``cycle_partition``: adjoining ``S`` leaves ``CP`` unchanged.

All four must agree; :func:`cross_check` runs them side by side.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Literal

from .errors import CriteriaDisagreement, UniverseMismatch
from .partitions import cp_set, op_set
from .permgroup import DEFAULT_SUBGROUP_CAP, aut, is_compatible
from .relalg import (
    DEFAULT_MAX_DEPTH,
    DEFAULT_RELATION_CAP,
    Relation,
    RelationalDatabase,
    data_domain,
    is_expressible_bounded,
)

Criterion = Literal["paredaens", "aut_equality", "orbit_partition", "cycle_partition"]
CRITERIA: tuple[Criterion, ...] = ("paredaens", "aut_equality", "orbit_partition",
                                   "cycle_partition")

__all__ = [
    "Verdict",
    "CrossCheckReport",
    "CRITERIA",
    "decide",
    "decide_paredaens",
    "decide_aut_equality",
    "decide_orbit",
    "decide_cycle",
    "cross_check",
]


@dataclass(frozen=True)
class Verdict:
    expressible: bool
    criterion: str
    witness: Any = None

    def __post_init__(self):
        if not self.expressible and self.witness is None:
            raise ValueError("a negative verdict needs a witness")

    def line(self) -> str:
        word = "expressible" if self.expressible else "not-expressible"
        out = f"{self.criterion} {word}"
        if self.witness is not None:
            out += f" {_format_witness(self.witness)}"
        return out


def _format_witness(w) -> str:
    if hasattr(w, "cycle_notation"):
        return w.cycle_notation()
    return str(w)


def _check_universe(s: Relation, db: RelationalDatabase):
    outside = data_domain(s) - db.universe
    if outside:
        raise UniverseMismatch(f"elements {sorted(outside)} are outside the database universe")


def decide_paredaens(s: Relation, db: RelationalDatabase) -> Verdict:
    _check_universe(s, db)
    missing = data_domain(s) - data_domain(db.relations)
    if missing:
        return Verdict(False, "paredaens", f"D(S) not in D(R): {sorted(missing)}")
    for g in aut(db).sorted_elements():
        if not is_compatible(g, s):
            return Verdict(False, "paredaens", g)
    return Verdict(True, "paredaens")


def decide_aut_equality(s: Relation, db: RelationalDatabase) -> Verdict:
    _check_universe(s, db)
    before = aut(db)
    after = aut(db.adjoin(s))
    if before == after:
        return Verdict(True, "aut_equality")
    # adjoining a relation can only remove automorphisms
    lost = min(before.elements - after.elements)
    return Verdict(False, "aut_equality", lost)


def _first_difference(a, b):
    return min(a ^ b, key=lambda p: p.sort_key())


def decide_orbit(s: Relation, db: RelationalDatabase,
                 cap: int = DEFAULT_SUBGROUP_CAP) -> Verdict:
    _check_universe(s, db)
    before = op_set(db, cap)
    after = op_set(db.adjoin(s), cap)
    if before == after:
        return Verdict(True, "orbit_partition")
    return Verdict(False, "orbit_partition", _first_difference(before, after))


def decide_cycle(s: Relation, db: RelationalDatabase) -> Verdict:
    _check_universe(s, db)
    before = cp_set(db)
    after = cp_set(db.adjoin(s))
    if before == after:
        return Verdict(True, "cycle_partition")
    return Verdict(False, "cycle_partition", _first_difference(before, after))


_DECIDERS = {
    "paredaens": decide_paredaens,
    "aut_equality": decide_aut_equality,
    "orbit_partition": decide_orbit,
    "cycle_partition": decide_cycle,
}


def decide(s: Relation, db: RelationalDatabase, criterion: Criterion) -> Verdict:
    return _DECIDERS[criterion](s, db)


@dataclass
class CrossCheckReport:
    verdicts: list[Verdict]
    bounded: str | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def expressible(self) -> bool:
        return self.verdicts[0].expressible

    @property
    def unanimous(self) -> bool:
        return len({v.expressible for v in self.verdicts}) == 1

    def lines(self) -> list[str]:
        out = [v.line() for v in self.verdicts]
        if self.bounded is not None:
            out.append(f"bounded-closure {self.bounded}")
        return out


def cross_check(s: Relation, db: RelationalDatabase, bounded: bool = False,
                max_arity: int | None = None, max_depth: int = DEFAULT_MAX_DEPTH,
                relation_cap: int = DEFAULT_RELATION_CAP) -> CrossCheckReport:
    """Run all four criteria and raise if they disagree.

    With ``bounded=True`` the one-sided closure oracle is consulted too; a
    ``"yes"`` from it obliges all four criteria to say expressible.
    """
    report = CrossCheckReport([decide(s, db, c) for c in CRITERIA])
    if not report.unanimous:
        raise CriteriaDisagreement("; ".join(report.lines()))
    if bounded:
        report.bounded = is_expressible_bounded(s, db, max_arity, max_depth, relation_cap)
        if report.bounded == "yes" and not report.expressible:
            raise CriteriaDisagreement(
                "bounded closure produced S but the criteria call it not expressible")
    return report
