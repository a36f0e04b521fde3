"""Bundled example databases.

Relational:

* :func:`klein` -- three symmetric binary relations on ``{1,2,3,4}`` whose
  automorphism group is the Klein four-group;
* :func:`five_cycle` -- ``(R, S)``: two arity-5 relations whose automorphism
  groups are different cyclic groups of order 5 with identical orbit and
  cycle partitions.

Graph (schema ``a -> b``):

* :func:`two_by_two`, :func:`two_by_two_skew`, :func:`all_true` -- two
  values per name with different colorings;
* :func:`three_by_three` -- three values per name, every value with edges
  of both colors (see :mod:`expresso.stability` for why it matters).
"""

from __future__ import annotations

from importlib import resources

from .formats import parse_gdb, parse_rdb, parse_relation
from .graphmodel import GraphDatabase
from .relalg import Relation, RelationalDatabase

__all__ = [
    "data_path",
    "klein",
    "five_cycle",
    "two_by_two",
    "two_by_two_skew",
    "all_true",
    "three_by_three",
    "GRAPH_FIXTURES",
]


def data_path(name: str):
    """Path-like handle of a bundled data file (e.g. ``"klein.rdb"``)."""
    return resources.files("expresso.data").joinpath(name)


def _read(name: str) -> str:
    return data_path(name).read_text(encoding="utf-8")


def klein() -> RelationalDatabase:
    return parse_rdb(_read("klein.rdb"), "klein.rdb")


def five_cycle() -> tuple[RelationalDatabase, Relation]:
    """``(database {R}, relation S)``."""
    return (parse_rdb(_read("fivecycle_r.rdb"), "fivecycle_r.rdb"),
            parse_relation(_read("fivecycle_s.rel"), "fivecycle_s.rel"))


def _gdb(name: str) -> GraphDatabase:
    return parse_gdb(_read(name), name).check()


def two_by_two() -> GraphDatabase:
    return _gdb("twobytwo.gdb")


def two_by_two_skew() -> GraphDatabase:
    return _gdb("twobytwo_skew.gdb")


def all_true() -> GraphDatabase:
    return _gdb("alltrue.gdb")


def three_by_three() -> GraphDatabase:
    return _gdb("threebythree.gdb")


GRAPH_FIXTURES = {
    "TwoByTwo": two_by_two,
    "TwoByTwo-Skew": two_by_two_skew,
    "AllTrue": all_true,
    "ThreeByThree": three_by_three,
}
