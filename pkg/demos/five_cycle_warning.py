"""Why comparing partition sets of separate databases is not enough.

R and S are each preserved by a 5-cycle, but by *different* 5-cycles.
Taken alone, both have exactly two orbit partitions (all singletons and
the whole set), so OP(R) = OP(S). Yet S is not expressible from R: once
S is adjoined, the only surviving automorphism is the identity. The
partition criteria must be evaluated on the database extended by S.

Run with ``python demos/five_cycle_warning.py``.
"""

from expresso import RelationalDatabase, aut, cp_set, decide, op_set
from expresso.expressibility import CRITERIA
from expresso.fixtures import five_cycle
from expresso.partitions import format_partition_set


def show(label, db):
    print(f"{label}: |Aut| = {len(aut(db))}")
    print("  OP:", format_partition_set(op_set(db)).replace("\n", "  "))
    print("  CP:", format_partition_set(cp_set(db)).replace("\n", "  "))


def main():
    r, s = five_cycle()
    show("R", r)
    show("S", RelationalDatabase([s]))
    show("R with S adjoined", r.adjoin(s))
    print("\nVerdicts for S over R:")
    for c in CRITERIA:
        print("  " + decide(s, r, c).line())


if __name__ == "__main__":
    main()
