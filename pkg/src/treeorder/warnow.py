"""One-clause probe: the midpoints geometry alone admits no realization.

For a single clause the encoded structure is small enough (58 elements at
V = 3) for the exact LP oracle. Restricted to the forced edges plus leaf
edges the strict system is infeasible; adding the splitting edge of any
literal of the clause makes it feasible, and different satisfying
assignments give verified realizations with different supports.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field

from .construction import build_realization, splitting_edge
from .errors import CapExceededError, RangeError
from .oracle import FeasibilityResult, Topology, strict_feasible
from .reduction import Assignment, NamedSplits, SatCase, encode, is_satisfied
from .splits import forced_edges, midpoints_geometry, tree_edges


@dataclass
class WarnowProbe:
    case: SatCase
    n: int
    geometry: frozenset
    geometry_result: FeasibilityResult
    forced: frozenset = frozenset()
    literal_results: dict = field(default_factory=dict)
    supports: dict = field(default_factory=dict)
    edges: dict = field(default_factory=dict)
    verified: dict = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def geometry_infeasible(self) -> bool:
        return not self.geometry_result.feasible

    @property
    def distinct_supports(self) -> bool:
        sups = list(self.supports.values())
        return len(sups) >= 2 and len(set(sups)) == len(sups)

    @property
    def supports_contain_geometry(self) -> bool:
        """Each tree's edge set (support plus pendant leaf edges) strictly contains the geometry."""
        return all(self.geometry < s for s in self.edges.values())

    @property
    def supports_contain_forced(self) -> bool:
        return all(self.forced < s for s in self.supports.values())

    @property
    def holds(self) -> bool:
        return (self.geometry_infeasible and all(self.verified.values())
                and self.distinct_supports and self.supports_contain_geometry
                and self.supports_contain_forced
                and all(r.feasible for r in self.literal_results.values()))

    def narrative(self) -> str:
        P = self.case
        lits = " or ".join(f"{'' if s > 0 else 'not '}x{v}" for v, s in zip(P.nu[0], P.sigma[0]))
        out = [f"clause: {lits}  (V={P.V}, |X|={self.n})",
               f"midpoints geometry: {len(self.geometry)} edges"]
        res = self.geometry_result
        if res.feasible:
            out.append("  strict system on the geometry alone: FEASIBLE (probe fails)")
        else:
            out.append("  strict system on the geometry alone: INFEASIBLE, "
                       f"Farkas certificate over {len(res.certificate.weights)} inequalities")
        for (v, s), r in self.literal_results.items():
            verdict = "FEASIBLE" if r.feasible else "INFEASIBLE"
            out.append(f"  geometry + splitting edge for literal {'' if s > 0 else '-'}{v}: {verdict}")
        for h, sup in self.supports.items():
            extra = sorted(self.edges[h] - self.geometry)
            status = "verified" if self.verified[h] else "NOT verified"
            out.append(f"assignment {h}: realization {status}, {len(sup)} positive edges, "
                       f"{len(extra)} edges beyond the geometry")
        out.append(f"supports distinct: {self.distinct_supports}")
        out.append(f"each tree strictly contains the geometry: {self.supports_contain_geometry}; "
                   f"each support strictly contains the {len(self.forced)} forced edges: "
                   f"{self.supports_contain_forced}")
        out.append(f"probe {'holds' if self.holds else 'FAILS'} ({self.seconds:.1f} s)")
        return "\n".join(out)


def probe_assignments(P: SatCase) -> tuple:
    """Two satisfying assignments differing only on the clause's last variable."""
    base = [1] * P.V
    for v, s in zip(P.nu[0], P.sigma[0]):
        base[v - 1] = s
    other = list(base)
    last = P.nu[0][2]
    other[last - 1] = -other[last - 1]
    return Assignment(tuple(base)), Assignment(tuple(other))


def warnow_probe(P: SatCase, cap: int = 6, literals: bool = True) -> WarnowProbe:
    """Run the probe on a one-clause case with at most ``cap`` variables."""
    if P.C != 1:
        raise RangeError(f"the probe needs exactly one clause, got {P.C}")
    if P.V > cap:
        raise CapExceededError(f"V={P.V} exceeds cap {cap}")
    start = time.perf_counter()
    m = encode(P)
    n = m.ground.n
    geometry = frozenset(midpoints_geometry(m))
    base = tuple(sorted(geometry))
    probe = WarnowProbe(P, n, geometry, strict_feasible(Topology(n, base), m),
                        frozenset(forced_edges(m)))
    if literals:
        names = NamedSplits(P, m.ground)
        for v, s in zip(P.nu[0], P.sigma[0]):
            edge = splitting_edge(names, v, s)
            probe.literal_results[v, s] = strict_feasible(Topology(n, base + (edge,)), m)
    for h in probe_assignments(P):
        # every 3-literal clause is satisfiable, and both choices agree with
        # at least two of its literals
        assert is_satisfied(P, h)
        t, report = build_realization(P, h, m)
        probe.supports[str(h)] = frozenset(t.support())
        probe.edges[str(h)] = frozenset(tree_edges(t))
        probe.verified[str(h)] = report.ok
    probe.seconds = time.perf_counter() - start
    return probe
