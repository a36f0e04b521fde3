"""Expressiveness of query languages through automorphisms and stable partitions.

Relational side: relations, the five-operator algebra, automorphism groups,
orbit and cycle partition sets, and four equivalent tests for whether a
relation is expressible from a database.

Graph side: two-layer graph databases, the instance algebra, stability and
canonical partitions, and the exact closure of the algebra.
"""

from .errors import ExpressoError, ParseError, ResourceLimit
from .expressibility import CRITERIA, CrossCheckReport, Verdict, cross_check, decide
from .graphmodel import (
    GraphDatabase,
    Instance,
    Schema,
    Selector,
    Structure,
    add,
    diff,
    mult,
    project_inst,
    select,
    simple_instances,
    validate,
)
from .partitions import cp_set, op_set
from .permgroup import Permutation, PermutationGroup, aut, cgr, cycles, orbits, subgroups
from .relalg import (
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
from .setpartition import Partition, build_orbit, poset_extrema, refines
from .stability import (
    InstanceSet,
    bi_closure_graph,
    canonical_partition,
    decide_expressible_graph,
    expressible_by_partition,
    is_0_stable,
    is_k_stable,
    is_split,
    is_stable,
    is_valid_partition,
    path_dependencies,
    pbi_partition,
)

__version__ = "0.1.0"

__all__ = [
    "ExpressoError", "ParseError", "ResourceLimit",
    "CRITERIA", "CrossCheckReport", "Verdict", "cross_check", "decide",
    "GraphDatabase", "Instance", "Schema", "Selector", "Structure",
    "add", "diff", "mult", "project_inst", "select", "simple_instances", "validate",
    "cp_set", "op_set",
    "Permutation", "PermutationGroup", "aut", "cgr", "cycles", "orbits", "subgroups",
    "EmptyRelation", "Relation", "RelationalDatabase", "bi_closure_bounded", "data_domain",
    "is_expressible_bounded", "product_rel", "project", "restrict_eq", "restrict_neq",
    "union_rel",
    "Partition", "build_orbit", "poset_extrema", "refines",
    "InstanceSet", "bi_closure_graph", "canonical_partition", "decide_expressible_graph",
    "expressible_by_partition", "is_0_stable", "is_k_stable", "is_split", "is_stable",
    "is_valid_partition", "path_dependencies", "pbi_partition",
]
