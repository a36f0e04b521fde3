"""Graph databases, canonical partitions and the exact algebra closure.

A two-layer graph database has a schema (names a, b and an edge a->b) and
a structure whose values x1, x2 (of name a) and y1, y2 (of name b) are
joined by edges colored true or false. Starting from the whole extension
we compute

* the canonical partition: the coarsest partition of the values whose
  classes cannot be told apart by colored walks;
* the exact closure of the instance algebra and the partition P^BI of
  values it cannot separate.

For TwoByTwo the true edges pair x1 with y1 and x2 with y2. Swapping both
pairs is a symmetry, so no expression isolates x1; the skewed variant
breaks the symmetry and does.

Run with ``python demos/graph_canonical.py``.
"""

from expresso import InstanceSet, Instance, bi_closure_graph, canonical_partition
from expresso import decide_expressible_graph, pbi_partition
from expresso.fixtures import two_by_two, two_by_two_skew


def explore(label, db):
    I = InstanceSet(db, [db.ext_instance()])
    print(f"== {label}")
    print("   canonical partition:", canonical_partition(I))
    print("   P^BI from the closure:", pbi_partition(I))
    closure = bi_closure_graph(I)
    print(f"   the closure holds {len(closure)} instances")
    for g in (Instance({"a": {"x1"}}), Instance({"a": {"x1", "x2"}, "b": {"y1", "y2"}})):
        verdict = decide_expressible_graph(g, I)
        in_closure = "in" if g in closure else "not in"
        shown = "; ".join(str(g).splitlines())
        print(f"   {shown}: {verdict.line()}  ({in_closure} the closure)")


def main():
    explore("TwoByTwo", two_by_two())
    explore("TwoByTwo-Skew", two_by_two_skew())


if __name__ == "__main__":
    main()
