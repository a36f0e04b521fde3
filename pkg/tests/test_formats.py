import pytest
from hypothesis import given

from expresso import fixtures
from expresso.errors import ParseError
from expresso.formats import (
    dump_gdb,
    dump_group_table,
    dump_instances,
    dump_rdb,
    dump_relation,
    parse_gdb,
    parse_group_table,
    parse_instances,
    parse_partition,
    parse_rdb,
    parse_relation,
)
from expresso.graphmodel import Instance
from expresso.permgroup import aut
from expresso.setpartition import Partition

from strategies import databases, graph_databases, partitions, relations


@given(databases())
def test_rdb_round_trip(db):
    assert parse_rdb(dump_rdb(db)) == db
    assert dump_rdb(parse_rdb(dump_rdb(db))) == dump_rdb(db)


@given(relations())
def test_relation_round_trip(r):
    assert parse_relation(dump_relation(r)) == r


@given(graph_databases())
def test_gdb_round_trip(db):
    again = parse_gdb(dump_gdb(db))
    assert again == db
    assert dump_gdb(again) == dump_gdb(db)


@given(partitions(range(1, 8)))
def test_partition_round_trip(p):
    assert parse_partition(str(p)) == p


def test_instances_round_trip():
    insts = [Instance({"a": {"x1", "x2"}, "b": {"y1"}}), Instance({"b": {"y2"}})]
    text = dump_instances(insts)
    assert text == "a: {x1,x2}\nb: {y1}\n---\nb: {y2}\n"
    assert parse_instances(text) == insts


def test_group_table_round_trip(klein):
    g = aut(klein)
    assert parse_group_table(dump_group_table(g)) == g


@pytest.mark.parametrize("name", ["klein.rdb", "fivecycle_r.rdb"])
def test_dump_of_bundled_rdb_is_a_fixpoint(name):
    text = fixtures.data_path(name).read_text()
    once = dump_rdb(parse_rdb(text))
    assert dump_rdb(parse_rdb(once)) == once
    assert parse_rdb(once) == parse_rdb(text)


def _err(fn, text):
    with pytest.raises(ParseError) as info:
        fn(text, "t.txt")
    return info.value


def test_rdb_errors_carry_position():
    e = _err(parse_rdb, "domain 3\nrelation R arity 2\n1 x\n")
    assert (e.line, e.column, e.source) == (3, 3, "t.txt")
    assert str(e).startswith("t.txt:3:3:")
    e = _err(parse_rdb, "domain 3\nrelation R arity 2\n1 2 3\n")
    assert e.line == 3
    e = _err(parse_rdb, "# header\n1 2\n")
    assert e.line == 2
    e = _err(parse_rdb, "domain 2\nrelation R arity 1\n3\n")
    assert "outside 1..2" in str(e)
    e = _err(parse_rdb, "relation R arity 1\n1\n")
    assert "domain" in str(e)
    e = _err(parse_rdb, "domain 2\nrelation R arity 1\n")
    assert "no tuples" in str(e)


def test_relation_file_errors():
    e = _err(parse_relation, "domain 2\nrelation S arity 1\n1\n")
    assert e.line == 1
    e = _err(parse_relation, "relation S arity 1\n1\nrelation T arity 1\n2\n")
    assert "exactly one" in str(e)


def test_gdb_errors_carry_position():
    e = _err(parse_gdb, "vertex a\n")
    assert e.line == 1
    e = _err(parse_gdb, "schema\nvertex a\nstructure\nvertex x of a\nedge x x maybe\n")
    assert (e.line, e.column) == (5, 10)
    e = _err(parse_gdb, "schema\nvertex a\nstructure\nvertex x of b\n")
    assert "unknown schema vertex" in str(e)
    e = _err(parse_gdb, "schema\nbogus\n")
    assert e.line == 2


def test_instance_errors():
    e = _err(parse_instances, "a: {x1}\nb {y1}\n")
    assert e.line == 2
    e = _err(parse_instances, "a: {}\n")
    assert (e.line, e.column) == (1, 4)
    e = _err(parse_instances, "a: {x1}\na: {x2}\n")
    assert "twice" in str(e)
    e = _err(parse_instances, "# nothing\n")
    assert "no instance" in str(e)


def test_partition_errors():
    with pytest.raises(ParseError):
        parse_partition("{1,2}{2}")
    with pytest.raises(ParseError):
        parse_partition("1,2")
    with pytest.raises(ParseError):
        parse_partition("{}")
    assert parse_partition("{x1,x2}{y1}") == Partition([["x1", "x2"], ["y1"]])


def test_group_table_errors():
    with pytest.raises(ParseError):
        parse_group_table("2 1 3\n")  # missing identity
    with pytest.raises(ParseError):
        parse_group_table("1 1\n")
    with pytest.raises(ParseError):
        parse_group_table("")
