"""Walk through a small relational database whose symmetries form the
Klein four-group.

Three symmetric binary relations on {1,2,3,4} are each preserved by the
same three double transpositions. We compute the automorphism group, its
cogroup relation, the orbit and cycle partition sets, and then ask which
candidate relations can be expressed in the relational algebra.

Run with ``python demos/klein_group.py``.
"""

from expresso import (
    Relation,
    aut,
    cgr,
    cp_set,
    cross_check,
    op_set,
)
from expresso.fixtures import klein
from expresso.partitions import format_partition_set


def main():
    db = klein()
    group = aut(db)
    print(f"Aut has {len(group)} elements:")
    for g in group.sorted_elements():
        print("   ", g.cycle_notation())

    print("\nCogroup relation (one row per automorphism, identity first):")
    print(group.to_table(), end="")
    assert cgr(db).arity == 4

    print("\nOrbit partitions OP:")
    print(format_partition_set(op_set(db)), end="")
    print("Cycle partitions CP (the whole set is absent: no single automorphism is a 4-cycle):")
    print(format_partition_set(cp_set(db)), end="")

    candidates = {
        "R1 itself": db["R1"],
        "R1 u R2": Relation(2, set(db["R1"].tuples) | set(db["R2"].tuples)),
        "the pair (1,2) alone": Relation(2, [(1, 2)]),
        "the unary relation {1}": Relation(1, [(1,)]),
    }
    print("\nWhich relations are expressible?")
    for label, s in candidates.items():
        report = cross_check(s, db)
        print(f"  {label}:")
        for line in report.lines():
            print("      " + line)


if __name__ == "__main__":
    main()
