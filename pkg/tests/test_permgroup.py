import itertools
import math
import random

import pytest
from hypothesis import given, strategies as st

from expresso.corpus import random_database, random_subgroup_pair
from expresso.errors import DegreeMismatch, ElementOutOfRange, NotASubgroup, ResourceLimit
from expresso.permgroup import (
    Permutation,
    PermutationGroup,
    aut,
    aut_exhaustive,
    cgr,
    cycles,
    group_closure,
    index,
    is_compatible,
    orbits,
    stabilizer,
    subgroups,
    symmetric_group,
)
from expresso.relalg import Relation, RelationalDatabase
from expresso.setpartition import Partition

from strategies import databases, groups, permutations

P = Permutation.from_cycles


@pytest.fixture
def klein_group(klein):
    return aut(klein)


# -- permutations -----------------------------------------------------------------------

def test_composition_applies_right_factor_first():
    g = P(3, (1, 2))
    h = P(3, (2, 3))
    # (g*h)(x) = g(h(x)): 1 -> 1 -> 2, 2 -> 3 -> 3, 3 -> 2 -> 1
    assert [(g * h)(x) for x in (1, 2, 3)] == [g(h(x)) for x in (1, 2, 3)] == [2, 3, 1]
    assert g * h == P(3, (1, 2, 3))
    assert h * g == P(3, (1, 3, 2))


def test_cycle_notation():
    assert Permutation.identity(4).cycle_notation() == "Identity"
    assert Permutation([2, 1, 4, 3]).cycle_notation() == "(1 2) (3 4)"
    assert P(5, (1, 2, 3, 5, 4)).images == (2, 3, 5, 1, 4)


def test_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        Permutation([1, 2]) * Permutation([1, 2, 3])
    with pytest.raises(ValueError):
        Permutation([1, 1])


@given(st.integers(1, 6).flatmap(lambda n: st.tuples(permutations(n), permutations(n),
                                                       permutations(n))))
def test_group_laws(triple):
    f, g, h = triple
    e = Permutation.identity(f.degree)
    assert (f * g) * h == f * (g * h)
    assert f * e == f == e * f
    assert f * f.inverse() == e
    assert f ** f.order() == e


# -- compatibility and automorphisms ----------------------------------------------------

def test_compatibility_examples(klein):
    r1 = klein["R1"]
    assert is_compatible(Permutation.identity(4), r1)
    assert is_compatible(Permutation([2, 1, 4, 3]), r1)
    assert not is_compatible(Permutation([1, 3, 2, 4]), r1)


def test_klein_automorphisms(klein, klein_group):
    assert [g.images for g in klein_group.sorted_elements()] == [
        (1, 2, 3, 4), (2, 1, 4, 3), (3, 4, 1, 2), (4, 3, 2, 1)]
    assert [g.cycle_notation() for g in klein_group.sorted_elements()] == [
        "Identity", "(1 2) (3 4)", "(1 3) (2 4)", "(1 4) (2 3)"]


def test_aut_of_pairs_of_klein_relations(klein, klein_group):
    for a, b in itertools.combinations(["R1", "R2", "R3"], 2):
        assert aut(RelationalDatabase({a: klein[a], b: klein[b]})) == klein_group


def test_single_relation_has_larger_group(klein):
    assert len(aut(RelationalDatabase([klein["R1"]]))) == 8


def test_aut_trivial_for_a_chain():
    db = RelationalDatabase([Relation(2, [(1, 2), (2, 3)])])
    assert len(aut(db)) == 1


def test_five_cycle_groups(five_cycle):
    r, s = five_cycle
    ar = aut(r)
    assert [g.cycle_notation() for g in ar.sorted_elements()] == [
        "Identity", "(1 2 3 4 5)", "(1 3 5 2 4)", "(1 4 2 5 3)", "(1 5 4 3 2)"]
    as_ = aut(RelationalDatabase([s]))
    assert {g.cycle_notation() for g in as_.elements} == {
        "Identity", "(1 2 3 5 4)", "(1 3 4 2 5)", "(1 5 2 4 3)", "(1 4 5 3 2)"}


@given(databases(max_n=6, max_relations=3, max_arity=3))
def test_aut_matches_exhaustive_filter(db):
    assert aut(db) == aut_exhaustive(db)


def test_aut_matches_exhaustive_at_seven():
    rng = random.Random(7)
    for _ in range(5):
        db = random_database(rng, max_n=7)
        assert aut(db) == aut_exhaustive(db)


@given(databases())
def test_aut_equals_aut_of_cogroup(db):
    assert aut(RelationalDatabase([cgr(db)])) == aut(db)


def test_cgr_identity_row_first(klein):
    rows = cgr(klein).rows()
    assert rows[0] == (1, 2, 3, 4)
    assert rows == [(1, 2, 3, 4), (2, 1, 4, 3), (3, 4, 1, 2), (4, 3, 2, 1)]


# -- closure and subgroups --------------------------------------------------------------

def test_group_closure_examples():
    assert len(group_closure([P(4, (1, 2)), P(4, (1, 2, 3, 4))])) == 24
    assert len(group_closure([], degree=4)) == 1
    assert len(group_closure([P(4, (1, 2)), P(4, (3, 4))])) == 4


def test_subgroups_of_klein(klein_group):
    subs = subgroups(klein_group)
    assert sorted(len(h) for h in subs) == [1, 2, 2, 2, 4]


def test_subgroups_small_cases():
    e = group_closure([], degree=3)
    assert subgroups(e) == {e}
    c5 = group_closure([P(5, (1, 2, 3, 4, 5))])
    assert sorted(len(h) for h in subgroups(c5)) == [1, 5]


def test_subgroup_counts_of_symmetric_groups():
    # classical counts: S_3 has 6 subgroups, S_4 has 30
    assert len(subgroups(symmetric_group(3))) == 6
    assert len(subgroups(symmetric_group(4))) == 30


def test_subgroup_cap():
    with pytest.raises(ResourceLimit):
        subgroups(symmetric_group(5), cap=100)


@given(groups(max_n=5))
def test_subgroups_are_groups_of_dividing_order(g):
    for h in subgroups(g):
        assert h.issubgroup(g)
        assert len(g) % len(h) == 0
        h.check()


# -- orbits, cycles, stabilizers --------------------------------------------------------

def test_orbits_examples(klein_group):
    assert orbits(klein_group) == Partition([[1, 2, 3, 4]])
    assert orbits(group_closure([], degree=3)) == Partition.singletons([1, 2, 3])
    assert orbits(group_closure([P(4, (1, 2))])) == Partition([[1, 2], [3], [4]])


def test_cycles_examples():
    assert cycles(Permutation([2, 1, 4, 3])) == Partition([[1, 2], [3, 4]])
    assert cycles(Permutation.identity(3)) == Partition.singletons([1, 2, 3])
    assert cycles(P(5, (1, 2, 3, 5, 4))) == Partition([[1, 2, 3, 4, 5]])


def test_stabilizer_examples(klein_group):
    assert len(stabilizer(klein_group, 1)) == 1
    e = group_closure([], degree=2)
    assert stabilizer(e, 2) == e
    s3 = group_closure([P(3, (1, 2)), P(3, (1, 2, 3))])
    assert stabilizer(s3, 3).elements == {Permutation.identity(3), P(3, (1, 2))}
    with pytest.raises(ElementOutOfRange):
        stabilizer(s3, 4)


def test_index_examples(klein_group):
    order2 = group_closure([Permutation([2, 1, 4, 3])])
    assert index(klein_group, order2) == 2
    assert index(klein_group, klein_group) == 1
    assert index(symmetric_group(4), klein_group) == 6
    with pytest.raises(NotASubgroup):
        index(order2, klein_group)


@given(groups())
def test_orbit_stabilizer(g):
    orb = orbits(g)
    for x in range(1, g.degree + 1):
        assert len(orb.class_of(x)) * len(stabilizer(g, x)) == len(g)


@given(groups())
def test_cycles_are_orbits_of_cyclic_subgroup(g):
    for h in g.elements:
        assert cycles(h) == orbits(group_closure([h], degree=g.degree))


def test_random_subgroup_pairs_are_nested():
    rng = random.Random(1)
    for _ in range(20):
        h, g = random_subgroup_pair(rng, rng.randint(1, 6))
        assert h.issubgroup(g)
        assert math.factorial(g.degree) % len(g) == 0
