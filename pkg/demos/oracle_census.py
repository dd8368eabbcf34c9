"""Small-instance ground truth: which midpoints structures can a tree realize?

On three elements a structure is three bits, one for each element's
membership in the midpoint of the other two. On a star these bits compare
leaf lengths, so exactly the two cyclic patterns fail. On four elements
the exact LP oracle scans all 4096 structures against the three binary
topologies.

    python3 demos/oracle_census.py
"""
from treeorder import GroundSet, MidpointsStructure, brute_realizable, census, check_realization
from treeorder.io import census_table, dump_tree


def main():
    g = GroundSet.of("abc")
    cyclic = MidpointsStructure.from_sets(g, {("a", "b"): "bc", ("b", "c"): "ac", ("a", "c"): "c"})
    print("cyclic three-element structure realizable:", brute_realizable(cyclic) is not None)

    ordered = MidpointsStructure.from_sets(g, {("a", "b"): "bc", ("b", "c"): "ac", ("a", "c"): "bc"})
    w = brute_realizable(ordered)
    print("ordered three-element structure, witness:")
    print(dump_tree(w), end="")
    print("re-verified:", check_realization(ordered, w).ok)

    rows = [census(3), census(4, jobs=4)]
    print()
    print(census_table(rows), end="")


if __name__ == "__main__":
    main()
