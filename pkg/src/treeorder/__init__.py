"""Tree realizations of order information: midpoints structures, the checker, and the 3-SAT encoding."""
from .construction import build_realization, m0_realization, plan_realization
from .errors import TreeOrderError
from .ground import GadgetElem, GroundSet, VarElem
from .oracle import brute_realizable, census, enumerate_topologies, sat_bruteforce, strict_feasible
from .reduction import (EXAMPLE_CASE, Assignment, NamedSplits, SatCase, audit_clause, build_clause_gadget,
                        build_m0, encode, extract_assignment, is_satisfied, parse_case, tau)
from .splits import (EdgeInterval, TreeMetric, check_realization, leaf_distance, midpoints_geometry,
                     path_sum, validate_tree)
from .structures import (MidpointsStructure, TriplesStructure, combine, derive_from_tree, to_midpoints,
                         to_triples, validate_midpoints, validate_triples)
from .warnow import warnow_probe

__all__ = [
    "Assignment", "EXAMPLE_CASE", "EdgeInterval", "GadgetElem", "GroundSet", "MidpointsStructure",
    "NamedSplits", "SatCase", "TreeMetric", "TreeOrderError", "TriplesStructure", "VarElem",
    "audit_clause", "brute_realizable", "build_clause_gadget", "build_m0", "build_realization",
    "census", "check_realization", "combine", "derive_from_tree", "encode", "enumerate_topologies",
    "extract_assignment", "is_satisfied", "leaf_distance", "m0_realization", "midpoints_geometry",
    "parse_case", "path_sum", "plan_realization", "sat_bruteforce", "strict_feasible", "tau",
    "to_midpoints", "to_triples", "validate_midpoints", "validate_triples", "validate_tree",
    "warnow_probe",
]
