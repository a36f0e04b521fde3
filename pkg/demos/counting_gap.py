"""Where walk-based stability and the algebra part ways.

In ThreeByThree every value has at least one true and one false edge,
and so does every value on the other side. The algebra only manipulates
*sets* of values: selection keeps values that have a neighbour with the
right color, and repeating that never splits x1, x2 and x3 apart. The
exact closure therefore leaves {x1,x2,x3} and {y1,y2,y3} as single
classes.

Stability instead compares, for a fixed start and a fixed end value, the
set of colored walks between them. Walks of length three already tell x1
from x3 against the y values, so the canonical partition splits them, and
the split cascades until every value is alone. Curiously {x1,x2} and
{x2,x3} are each stable against the y values while their union is not.

The two procedures then disagree about instances such as {a: {x1}}: the
canonical-partition test accepts it, the closure does not contain it.

Run with ``python demos/counting_gap.py``.
"""

from expresso import (
    Instance,
    InstanceSet,
    bi_closure_graph,
    canonical_partition,
    decide_expressible_graph,
    is_stable,
    pbi_partition,
)
from expresso.fixtures import three_by_three


def main():
    db = three_by_three()
    I = InstanceSet(db, [db.ext_instance()])
    print("true edges:", sorted(e for e, c in db.structure.colors if c))
    print("canonical partition:", canonical_partition(I))
    print("P^BI (exact closure):", pbi_partition(I))

    g = Instance({"a": {"x1"}})
    print("\n{a: {x1}}:", decide_expressible_graph(g, I).line())
    print("   in the exact closure?", g in bi_closure_graph(I))

    ys = {"y1", "y2", "y3"}
    print("\nstability of overlapping sources against all y values:")
    for A in ({"x1", "x2"}, {"x2", "x3"}, {"x1", "x2", "x3"}):
        print(f"   {sorted(A)} stable: {is_stable(A, ys, I)}")


if __name__ == "__main__":
    main()
