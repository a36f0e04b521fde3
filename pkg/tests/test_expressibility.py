import random

import pytest
from hypothesis import given

from expresso.corpus import random_candidate, random_database
from expresso.errors import UniverseMismatch
from expresso.expressibility import (
    CRITERIA,
    Verdict,
    cross_check,
    decide,
    decide_aut_equality,
    decide_cycle,
    decide_orbit,
    decide_paredaens,
)
from expresso.partitions import op_set
from expresso.permgroup import Permutation, aut, cgr
from expresso.relalg import Relation, RelationalDatabase, data_domain, project

from strategies import databases


def test_cogroup_relation_is_expressible(klein):
    report = cross_check(cgr(klein), klein)
    assert report.unanimous and report.expressible
    assert report.lines() == [f"{c} expressible" for c in CRITERIA]


def test_database_relations_are_expressible(klein):
    for r in klein.relations:
        assert all(decide(r, klein, c).expressible for c in CRITERIA)


def test_five_cycle_not_expressible(five_cycle):
    r, s = five_cycle
    report = cross_check(s, r)
    assert not report.expressible
    assert report.lines() == [
        "paredaens not-expressible (1 2 3 4 5)",
        "aut_equality not-expressible (1 2 3 4 5)",
        "orbit_partition not-expressible {1,2,3,4,5}",
        "cycle_partition not-expressible {1,2,3,4,5}",
    ]
    # the one-sided inclusions hold even so
    assert op_set(r) <= op_set(RelationalDatabase([s]))
    assert data_domain(s) <= data_domain(r.relations)


def test_paredaens_witness_is_incompatible(five_cycle):
    r, s = five_cycle
    v = decide_paredaens(s, r)
    assert isinstance(v.witness, Permutation) and v.witness in aut(r)


def test_element_outside_data_domain():
    db = RelationalDatabase([Relation(1, [(1,)]), Relation(2, [(2, 2)])])
    small = RelationalDatabase([Relation(1, [(1,)])], universe=[1])
    assert decide_paredaens(Relation(1, [(1,)]), db).expressible
    with pytest.raises(UniverseMismatch):
        decide_paredaens(Relation(1, [(2,)]), small)


def test_negative_verdict_needs_witness():
    with pytest.raises(ValueError):
        Verdict(False, "paredaens")


def test_projections_are_expressible(klein):
    s = project(klein["R1"], [1])
    assert decide_orbit(s, klein).expressible
    assert decide_cycle(s, klein).expressible


def test_non_invariant_relation(klein):
    s = Relation(1, [(1,)])
    for decider in (decide_paredaens, decide_aut_equality, decide_orbit, decide_cycle):
        assert not decider(s, klein).expressible


@given(databases(max_n=5))
def test_criteria_agree_on_random_candidates(db):
    rng = random.Random(db.n * 1000 + len(db.relations))
    for _ in range(3):
        cross_check(random_candidate(rng, db), db)


def test_criteria_agree_seeded_corpus():
    rng = random.Random(2024)
    verdicts = set()
    for _ in range(40):
        db = random_database(rng)
        s = random_candidate(rng, db)
        verdicts.add(cross_check(s, db).expressible)
    assert verdicts == {True, False}


def test_bounded_oracle_in_cross_check(klein):
    report = cross_check(klein["R1"], klein, bounded=True, max_arity=2, max_depth=1)
    assert report.bounded == "yes"
    assert report.lines()[-1] == "bounded-closure yes"
