"""Ground-truth engines for small instances.

Brute-force realizability scans every labelled binary topology and asks an
exact LP whether the strict midpoint inequalities have a solution on it.
The inequalities are homogeneous in the edge lengths, so strict feasibility
is the same as feasibility with every slack at least 1.
"""
from __future__ import annotations

import itertools
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import CapExceededError
from .ground import GroundSet
from .reduction import Assignment, SatCase, is_satisfied
from .simplex import Certificate, solve, solve_incremental
from .splits import TreeMetric, canonical, check_realization, in_interval
from .structures import MidpointsStructure

DEFAULT_CAP = 8


@dataclass(frozen=True)
class Topology:
    n: int
    splits: tuple

    def __len__(self):
        return len(self.splits)

    def __contains__(self, mask):
        return canonical(mask, (1 << self.n) - 1) in self.splits


def _insert_leaf(splits, edge, k):
    """Attach leaf ``k`` to the middle of ``edge`` in a tree on leaves ``0..k-1``."""
    full_k = (1 << k) - 1
    bit = 1 << k
    s, sc = edge, full_k ^ edge
    out = []
    for u in splits:
        if u == edge:
            out += [u | bit, u]
        elif not s & ~u or not sc & ~u:
            out.append(u | bit)
        else:
            out.append(u)
    out.append(bit)
    return out


def enumerate_topologies(n: int, cap: int = DEFAULT_CAP):
    """Every labelled binary topology on ``n`` leaves once; (2n-5)!! of them."""
    if n > cap:
        raise CapExceededError(f"n={n} exceeds topology cap {cap}")
    if n < 3:
        raise CapExceededError("binary topologies need at least three leaves")

    def grow(splits, k):
        if k == n:
            yield Topology(n, tuple(sorted(splits)))
            return
        for edge in sorted(splits):
            yield from grow(_insert_leaf(splits, edge, k), k + 1)

    yield from grow([0b010, 0b100, 0b110], 3)


def random_topology(n: int, rng: np.random.Generator) -> Topology:
    splits = [0b010, 0b100, 0b110]
    for k in range(3, n):
        edge = sorted(splits)[int(rng.integers(len(splits)))]
        splits = _insert_leaf(splits, edge, k)
    return Topology(n, tuple(sorted(splits)))


def random_tree(n: int, rng: np.random.Generator, max_length: int = 50,
                ground: GroundSet | None = None) -> TreeMetric:
    """Random binary topology with integer lengths in ``[1, max_length]``."""
    ground = ground or GroundSet.range(n)
    top = random_topology(n, rng)
    return TreeMetric(ground, {s: int(rng.integers(1, max_length + 1)) for s in top.splits})


def constraint_rows(topology: Topology, m: MidpointsStructure):
    """Integer rows ``LHS - RHS`` (one per ordered pair) over the topology's edges.

    Returns ``None`` when some midpoint is not an edge of the topology.
    """
    full = (1 << topology.n) - 1
    edges = topology.splits
    index = {e: k for k, e in enumerate(edges)}
    n = topology.n
    for i in range(n):
        for j in range(i + 1, n):
            if canonical(m.mask(i, j), full) not in index:
                return None
    rows = []
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            mid = canonical(m.mask(i, j), full)
            row = [0] * len(edges)
            for k, u in enumerate(edges):
                if in_interval(u, 1 << i, mid, full):
                    row[k] += 2
                if u != mid and in_interval(u, 1 << j, mid, full):
                    row[k] -= 2
            rows.append(row)
    return rows


@dataclass
class FeasibilityResult:
    witness: TreeMetric | None = None
    certificate: Certificate | None = None
    rows: list = field(default_factory=list, repr=False)

    @property
    def feasible(self) -> bool:
        return self.witness is not None

    def __bool__(self):
        return self.feasible


def strict_feasible(topology: Topology, m: MidpointsStructure, incremental: bool | None = None,
                    guided: bool | None = None) -> FeasibilityResult:
    """Exact strict feasibility of the midpoint inequalities on one topology.

    Large systems are solved by exact row generation, seeded (``guided``)
    from a floating-point LP. The witness, when found, is re-verified with
    :func:`check_realization`.
    """
    rows = constraint_rows(topology, m)
    if rows is None:
        return FeasibilityResult()
    unique = list(dict.fromkeys(tuple(r) for r in rows))
    if incremental is None:
        incremental = len(unique) > 60
    if guided is None:
        guided = incremental
    x, cert = solve_incremental(unique, guided=guided) if incremental else solve(unique)
    if cert is not None:
        return FeasibilityResult(certificate=cert, rows=unique)
    witness = TreeMetric(m.ground, dict(zip(topology.splits, x)))
    if not check_realization(m, witness).ok:
        raise ArithmeticError("LP witness failed exact re-verification")
    return FeasibilityResult(witness=witness, rows=unique)


def brute_realizable(m: MidpointsStructure, cap: int = DEFAULT_CAP) -> TreeMetric | None:
    """A verified realization found by scanning all binary topologies, or ``None``."""
    n = m.ground.n
    if n > cap:
        raise CapExceededError(f"n={n} exceeds cap {cap}")
    if n == 2:
        top = Topology(2, (0b10,))
        res = strict_feasible(top, m)
        return res.witness
    for top in enumerate_topologies(n, cap):
        res = strict_feasible(top, m)
        if res:
            return res.witness
    return None


def all_structures(n: int):
    """Every legal midpoints structure on ``range(n)``, in a fixed order."""
    ground = GroundSet.range(n)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    choices = []
    for i, j in pairs:
        others = [z for z in range(n) if z not in (i, j)]
        opts = []
        for bits in range(1 << len(others)):
            mask = 1 << j
            for k, z in enumerate(others):
                if bits >> k & 1:
                    mask |= 1 << z
            opts.append(mask)
        choices.append(opts)
    for combo in itertools.product(*choices):
        yield MidpointsStructure(ground, dict(zip(pairs, combo)))


@dataclass
class Census:
    n: int
    examined: int
    realizable: int
    seconds: float
    witnesses: list = field(default_factory=list, repr=False)
    structures: list = field(default_factory=list, repr=False)

    def row(self) -> str:
        return f"{self.n}\t{self.examined}\t{self.realizable}\t{self.seconds:.2f}"


def _census_cell(m):
    w = brute_realizable(m)
    return w is not None and check_realization(m, w).ok, w


def census(n: int, structures=None, jobs: int = 1, sample: int | None = None,
           seed: int = 0, cap: int = DEFAULT_CAP) -> Census:
    """Count realizable structures on ``n`` elements.

    Exhaustive by default; ``sample`` draws that many uniform structures
    with the given seed instead. Witnesses are re-verified.
    """
    if n > cap:
        raise CapExceededError(f"n={n} exceeds cap {cap}")
    start = time.perf_counter()
    if structures is None:
        if sample is None:
            structures = list(all_structures(n))
        else:
            from .structures import random_midpoints
            rng = np.random.default_rng(seed)
            structures = [random_midpoints(n, rng) for _ in range(sample)]
    else:
        structures = list(structures)
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            results = list(pool.map(_census_cell, structures, chunksize=64))
    else:
        results = [_census_cell(m) for m in structures]
    found = [(m, w) for m, (ok, w) in zip(structures, results) if ok]
    return Census(n, len(structures), len(found), time.perf_counter() - start,
                  [w for _, w in found], [m for m, _ in found])


def sat_bruteforce(P: SatCase, cap: int = 24) -> list:
    """All satisfying assignments, enumerated with h(1) varying slowest, -1 before +1."""
    if P.V > cap:
        raise CapExceededError(f"V={P.V} exceeds cap {cap}")
    out = []
    for vals in itertools.product((-1, 1), repeat=P.V):
        h = Assignment(vals)
        if is_satisfied(P, h):
            out.append(h)
    return out
