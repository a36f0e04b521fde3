import pytest
from hypothesis import given, strategies as st

from expresso.errors import (
    ArityMismatch,
    IndexOutOfRange,
    InvalidDatabase,
    InvalidRelation,
    ResourceLimit,
)
from expresso.expressibility import decide_paredaens
from expresso.permgroup import cgr
from expresso.relalg import (
    EmptyRelation,
    Relation,
    RelationalDatabase,
    bi_closure_bounded,
    data_domain,
    is_expressible_bounded,
    product_rel,
    project,
    restrict_eq,
    restrict_neq,
    union_rel,
)

from strategies import databases, relations, same_arity_pair


# -- construction -----------------------------------------------------------------------

def test_relation_rejects_bad_tuples():
    with pytest.raises(InvalidRelation):
        Relation(2, [(1, 2, 3)])
    with pytest.raises(InvalidRelation):
        Relation(0, [()])
    with pytest.raises(InvalidRelation):
        Relation(2, [])


def test_empty_relation_is_explicit():
    e = EmptyRelation(3)
    assert e.is_empty and e.arity == 3 and len(e) == 0


def test_database_requires_covering_universe():
    with pytest.raises(InvalidDatabase):
        RelationalDatabase([Relation(1, [(1,)])], universe=[1, 2])
    with pytest.raises(InvalidDatabase):
        RelationalDatabase([Relation(1, [(2,)])])  # universe must be 1..n
    with pytest.raises(InvalidDatabase):
        RelationalDatabase([EmptyRelation(1)])


def test_from_labelled_canonicalizes():
    db = RelationalDatabase.from_labelled({"E": [("a", "b"), ("b", "c")]})
    assert db.universe == {1, 2, 3}
    assert db["E"].tuples == {(1, 2), (2, 3)}
    assert db.labels == ("a", "b", "c")


def test_adjoin_picks_fresh_name(klein):
    s = Relation(1, [(1,)])
    db = klein.adjoin(s, "R1")
    assert db.names() == ["R1", "R2", "R3", "R12"]


# -- operators on the four-element example --------------------------------------------

def test_union_examples(klein):
    r1, r2, r3 = klein["R1"], klein["R2"], klein["R3"]
    assert len(union_rel(r1, r2)) == 8
    assert union_rel(r1, r1) == r1
    u = union_rel(r1, r3)
    assert len(u) == 8 and not (r1.tuples & r3.tuples)


def test_union_arity_mismatch(r1):
    with pytest.raises(ArityMismatch):
        union_rel(r1, Relation(1, [(1,)]))


def test_product_examples(klein):
    r1, r2 = klein["R1"], klein["R2"]
    p = product_rel(r1, r1)
    assert p.arity == 4 and len(p) == 16
    assert product_rel(Relation(1, [(1,)]), Relation(1, [(2,)])).tuples == {(1, 2)}
    q = product_rel(r1, r2)
    assert all(t[:2] in r1 and t[2:] in r2 for t in q)
    assert len(q) == 16


def test_projection_examples(r1):
    assert project(r1, [1]).tuples == {(1,), (2,), (3,), (4,)}
    assert project(r1, [1, 2]) == r1
    assert project(r1, [2, 1]) == r1
    assert project(r1, [1, 1]).tuples == {(1, 1), (2, 2), (3, 3), (4, 4)}


def test_projection_bounds(r1):
    with pytest.raises(IndexOutOfRange):
        project(r1, [3])
    with pytest.raises(IndexOutOfRange):
        project(r1, [])
    with pytest.raises(IndexOutOfRange):
        project(r1, [1, 1, 1])


def test_restriction_examples(r1):
    assert restrict_eq(r1, 1, 2) == EmptyRelation(2)
    assert restrict_neq(r1, 1, 2) == r1
    sq = restrict_eq(product_rel(r1, r1), 1, 3)
    assert sq.tuples == {t + t for t in r1.tuples}
    with pytest.raises(IndexOutOfRange):
        restrict_eq(r1, 0, 1)


def test_data_domain(klein):
    assert data_domain(klein["R1"]) == {1, 2, 3, 4}
    assert data_domain(klein.relations) == {1, 2, 3, 4}
    assert data_domain(Relation(2, [(5, 5)])) == {5}


def test_empty_relation_in_operators(r1):
    e = EmptyRelation(2)
    assert union_rel(e, r1) == r1
    assert product_rel(e, r1).is_empty


# -- algebraic laws ---------------------------------------------------------------------

@given(same_arity_pair(), relations())
def test_union_laws(pair, t):
    r, s = pair
    assert union_rel(r, s) == union_rel(s, r)
    assert union_rel(r, r) == r
    if t.arity == r.arity:
        assert union_rel(union_rel(r, s), t) == union_rel(r, union_rel(s, t))


@given(relations(), relations())
def test_product_size(r, s):
    p = product_rel(r, s)
    assert p.arity == r.arity + s.arity and len(p) == len(r) * len(s)


@given(relations(max_arity=4), st.data())
def test_restrictions_split_relation(r, data):
    j1 = data.draw(st.integers(1, r.arity))
    j2 = data.draw(st.integers(1, r.arity))
    eq, neq = restrict_eq(r, j1, j2), restrict_neq(r, j1, j2)
    assert eq.tuples | neq.tuples == r.tuples
    assert not eq.tuples & neq.tuples
    if j1 == j2:
        assert eq == r


# -- bounded closure --------------------------------------------------------------------

def test_closure_single_steps(r1):
    db = RelationalDatabase([r1])
    c = bi_closure_bounded(db, max_arity=2, max_depth=2)
    assert {project(r1, [1, 2]), project(r1, [2, 1]), restrict_neq(r1, 1, 2)} <= c


def test_closure_depth_zero(klein):
    assert bi_closure_bounded(klein, max_depth=0) == set(klein.relations)


def test_closure_contains_cogroup_projections(klein):
    """At arity 4 and depth 3 the closure holds every 3-column projection of
    the cogroup relation (the full relation needs a deeper expression)."""
    c = bi_closure_bounded(klein, max_arity=4, max_depth=3)
    g = cgr(klein)
    for cols in [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)]:
        assert project(g, cols) in c
    assert g not in c


def test_closure_cap(klein):
    with pytest.raises(ResourceLimit):
        bi_closure_bounded(klein, max_arity=4, max_depth=3, relation_cap=500)


def test_closure_arity_precondition(klein):
    with pytest.raises(ValueError):
        bi_closure_bounded(klein, max_arity=1)


def test_bounded_expressibility(r1, five_cycle):
    db = RelationalDatabase([r1])
    assert is_expressible_bounded(r1, db, max_depth=0) == "yes"
    assert is_expressible_bounded(restrict_neq(r1, 1, 2), db, max_depth=1) == "yes"
    r, s = five_cycle
    for depth in (0, 1):
        assert is_expressible_bounded(s, r, max_arity=5, max_depth=depth) == "unknown"


@given(databases(max_n=4, max_relations=2, max_arity=2))
def test_closure_is_sound(db):
    for rel in bi_closure_bounded(db, max_arity=3, max_depth=2, relation_cap=20_000):
        assert data_domain(rel) <= db.universe
        assert decide_paredaens(rel, db).expressible
