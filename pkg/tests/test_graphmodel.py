import pytest
from hypothesis import given

from expresso import fixtures
from expresso.errors import (
    DomainMismatch,
    EmptyInstance,
    EmptySelection,
    InvalidInstance,
    NotSubdomain,
    NotWeaklyConnected,
)
from expresso.graphmodel import (
    GraphDatabase,
    Instance,
    Schema,
    Selector,
    Structure,
    add,
    all_selectors,
    check_instance,
    diff,
    is_weakly_connected,
    mult,
    project_inst,
    select,
    simple_instances,
    validate,
)

from strategies import graph_databases, graph_with_instance


@pytest.fixture
def tbt():
    return fixtures.two_by_two()


@pytest.fixture
def skew():
    return fixtures.two_by_two_skew()


def I(**kw):
    return Instance(kw)


TRUE = Selector({"a", "b"}, {("a", "b"): True})
FALSE = Selector({"a", "b"}, {("a", "b"): False})


# -- validation -------------------------------------------------------------------------

@pytest.mark.parametrize("name", sorted(fixtures.GRAPH_FIXTURES))
def test_fixtures_are_valid(name):
    assert validate(fixtures.GRAPH_FIXTURES[name]()) == []


def test_missing_cross_edge(tbt):
    colors = tbt.structure.color_map()
    del colors[("x1", "y2")]
    bad = GraphDatabase(tbt.schema, Structure(tbt.structure.vertices, colors), tbt.ext)
    problems = validate(bad)
    assert problems == ["missing structure edge (x1,y2) for schema pair (a,b)"]


def test_overlapping_extension(tbt):
    bad = GraphDatabase(tbt.schema, tbt.structure, {"a": {"x1", "x2"}, "b": {"x2", "y1", "y2"}})
    assert any("is in Ext(a) and Ext(b)" in p for p in validate(bad))


def test_schema_connectivity_and_labels():
    s = Schema(("a", "b", "c"), (("a", "b"),), ("e",))
    db = GraphDatabase(s, Structure(["x", "y", "z"], {("x", "y"): True}),
                       {"a": {"x"}, "b": {"y"}, "c": {"z"}})
    assert "schema is not weakly connected" in validate(db)
    s2 = Schema(("a", "b"), (("a", "b"), ("b", "a")), ("e", "e"))
    db2 = GraphDatabase(s2, Structure(["x", "y"], {("x", "y"): True, ("y", "x"): False}),
                        {"a": {"x"}, "b": {"y"}})
    assert validate(db2) == ["schema edge labels are not distinct"]


def test_self_loops_allowed_and_ignored_for_connectivity():
    assert not is_weakly_connected({"a", "b"}, [("a", "a")])
    s = Schema(("a",), (("a", "a"),))
    db = GraphDatabase(s, Structure(["x", "y"], {(u, v): u == v for u in "xy" for v in "xy"}),
                       {"a": {"x", "y"}})
    assert validate(db) == []


# -- instances --------------------------------------------------------------------------

def test_instance_invariants(tbt):
    with pytest.raises(InvalidInstance):
        Instance({"a": []})
    with pytest.raises(EmptyInstance):
        Instance({})
    with pytest.raises(InvalidInstance):
        check_instance(tbt, I(a={"y1"}))
    check_instance(tbt, tbt.ext_instance())


def test_restriction_order(tbt):
    assert I(a={"x1"}) <= tbt.ext_instance()
    assert not tbt.ext_instance() <= I(a={"x1"})


def test_addition():
    f = I(a={"x1"}, b={"y1"})
    assert add(f, f) == f
    assert add(I(a={"x1"}), I(a={"x2"})) == I(a={"x1", "x2"})
    with pytest.raises(DomainMismatch):
        add(I(a={"x1"}), I(b={"y1"}))


def test_product(tbt):
    f = I(a={"x1", "x2"})
    assert mult(tbt, f, f) == f
    assert mult(tbt, f, I(a={"x2"})) == I(a={"x2"})
    assert mult(tbt, I(a={"x1"}), I(b={"y1"})) == I(a={"x1"}, b={"y1"})
    # a shared name with disjoint images drops out
    assert mult(tbt, I(a={"x1"}, b={"y1"}), I(a={"x2"}, b={"y1"})) == I(b={"y1"})
    with pytest.raises(EmptyInstance):
        mult(tbt, I(a={"x1"}), I(a={"x2"}))


def test_projection(tbt):
    ext = tbt.ext_instance()
    assert project_inst(tbt, ext, {"a", "b"}) == ext
    assert project_inst(tbt, ext, {"a"}) == I(a={"x1", "x2"})
    with pytest.raises(NotSubdomain):
        project_inst(tbt, I(a={"x1"}), {"b"})


def test_projection_on_disconnected_set():
    s = Schema(("a", "b", "c"), (("a", "b"), ("b", "c")))
    db = GraphDatabase(s, Structure(["x", "y", "z"], {("x", "y"): True, ("y", "z"): True}),
                       {"a": {"x"}, "b": {"y"}, "c": {"z"}})
    with pytest.raises(NotWeaklyConnected):
        project_inst(db, db.ext_instance(), {"a", "c"})


def test_difference(tbt):
    f = I(a={"x1", "x2"})
    with pytest.raises(EmptyInstance):
        diff(tbt, f, f)
    assert diff(tbt, f, I(a={"x2"})) == I(a={"x1"})
    ext = tbt.ext_instance()
    with pytest.raises(EmptyInstance):
        diff(tbt, ext, select(tbt, ext, TRUE))


# -- selectors --------------------------------------------------------------------------

def test_selector_must_be_connected():
    with pytest.raises(NotWeaklyConnected):
        Selector({"a", "b"})


def test_simple_instances(tbt, skew):
    assert simple_instances(tbt, TRUE) == {I(a={"x1"}, b={"y1"}), I(a={"x2"}, b={"y2"})}
    assert simple_instances(tbt, Selector({"a"})) == {I(a={"x1"}), I(a={"x2"})}
    assert simple_instances(skew, TRUE) == {I(a={"x1"}, b={"y1"}), I(a={"x1"}, b={"y2"})}


def test_sum_of_simple_instances(tbt):
    f, g = sorted(simple_instances(tbt, TRUE), key=repr)
    assert add(f, g) == tbt.ext_instance()


def test_selection(tbt, skew):
    assert select(tbt, tbt.ext_instance(), TRUE) == I(a={"x1", "x2"}, b={"y1", "y2"})
    assert select(skew, skew.ext_instance(), TRUE) == I(a={"x1"}, b={"y1", "y2"})
    with pytest.raises(EmptySelection):
        select(skew, I(a={"x2"}, b={"y1", "y2"}), TRUE)
    with pytest.raises(DomainMismatch):
        select(tbt, I(a={"x1"}), TRUE)


def test_all_selectors_of_single_edge_schema(tbt):
    sels = all_selectors(tbt.schema)
    assert len(sels) == 4  # {a}, {b}, and the edge in two colors
    assert {TRUE, FALSE} <= set(sels)


# -- algebra laws -----------------------------------------------------------------------

def _ops(db, f):
    """All defined single-step results from ``f`` and the extension."""
    ext = db.ext_instance()
    out = []
    for op in (lambda: mult(db, f, ext), lambda: diff(db, ext, f)
               if f.domain == ext.domain else None):
        try:
            r = op()
        except (EmptyInstance, NotWeaklyConnected, DomainMismatch):
            continue
        if r is not None:
            out.append(r)
    for sel in all_selectors(db.schema):
        try:
            out.append(select(db, f, sel))
        except (EmptySelection, DomainMismatch):
            pass
    return out


@given(graph_with_instance())
def test_results_are_instances(pair):
    db, f = pair
    check_instance(db, f)
    for r in _ops(db, f):
        check_instance(db, r)
        assert r.image <= f.image | db.ext_instance().image


@given(graph_with_instance())
def test_product_and_projection_laws(pair):
    db, f = pair
    ext = db.ext_instance()
    assert mult(db, f, ext) == mult(db, ext, f)
    assert mult(db, f, f) == f
    assert add(f, f) == f
    names = sorted(f.domain)
    a = {names[0]}
    assert project_inst(db, project_inst(db, f, f.domain), a) == project_inst(db, f, a)


@given(graph_databases())
def test_name_is_single_valued(db):
    seen = {}
    for x, ys in db.ext.items():
        for y in ys:
            assert y not in seen
            seen[y] = x
            assert db.name(y) == x
