"""The midpoints geometry of a one-clause encoding has no realization.

Every realization makes each midpoint edge positive. For the clause
(x1 or x2 or x3) the exact LP shows those edges, even with all leaf
edges, cannot carry a realization on their own: a Farkas certificate
combines the strict inequalities into a contradiction. One extra edge,
the splitting edge of any literal, is enough, and two satisfying
assignments give realizations on different trees.

    python3 demos/warnow_probe.py
"""
from treeorder import SatCase, warnow_probe


def main():
    probe = warnow_probe(SatCase.from_clauses([(1, 2, 3)]))
    print(probe.narrative())
    cert = probe.geometry_result.certificate
    if cert is not None:
        weights = sorted(set(cert.weights.values()))
        print(f"certificate weights take {len(weights)} distinct values: {[str(w) for w in weights]}")


if __name__ == "__main__":
    main()
