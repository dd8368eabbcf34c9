"""Midpoints and triples structures, conversions between them, and combining."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .errors import DisjointnessError, GenericTieError, InvalidInputError
from .ground import GroundSet, iter_bits
from .splits import TreeMetric, ValidationReport, distance_matrix


class MidpointsStructure:
    """Map from unordered pairs of a ground set to subsets of it.

    ``mid[(i, j)]`` (``i < j`` indices) is a bitmask over element indices.
    The axiom requires that the larger element of the pair is in its midpoint
    set and the smaller is not.
    """

    def __init__(self, ground: GroundSet, mid: Mapping[tuple, int]):
        self.ground = ground
        n = ground.n
        store = {}
        for (i, j), mask in mid.items():
            if i == j:
                raise InvalidInputError(f"pair ({i}, {j}) is not a pair")
            if i > j:
                i, j = j, i
            store[i, j] = int(mask)
        if len(store) != n * (n - 1) // 2:
            raise InvalidInputError(f"expected {n * (n - 1) // 2} pairs, got {len(store)}")
        self._mid = store

    @classmethod
    def from_sets(cls, ground: GroundSet, sets: Mapping) -> "MidpointsStructure":
        """Build from ``{(x, y): iterable_of_labels}`` keyed by element labels."""
        mid = {}
        for (x, y), members in sets.items():
            mid[ground.index(x), ground.index(y)] = ground.mask(members)
        return cls(ground, mid)

    def mask(self, i: int, j: int) -> int:
        return self._mid[(i, j) if i < j else (j, i)]

    def __getitem__(self, pair) -> frozenset:
        x, y = pair
        g = self.ground
        return g.members(self.mask(g.index(x), g.index(y)))

    def pairs(self):
        return iter(sorted(self._mid.items()))

    @property
    def n(self):
        return self.ground.n

    def __eq__(self, other):
        if not isinstance(other, MidpointsStructure):
            return NotImplemented
        return self.ground == other.ground and self._mid == other._mid

    def __repr__(self):
        return f"MidpointsStructure(n={self.ground.n})"


class TriplesStructure:
    """Per-anchor closer-than relations: ``closer[z, x, y]`` means x <_z y."""

    def __init__(self, ground: GroundSet, closer):
        closer = np.asarray(closer, dtype=bool)
        n = ground.n
        if closer.shape != (n, n, n):
            raise InvalidInputError(f"relation array must have shape {(n, n, n)}")
        self.ground = ground
        self.closer = closer
        self.closer.setflags(write=False)

    def less(self, z, x, y) -> bool:
        g = self.ground
        return bool(self.closer[g.index(z), g.index(x), g.index(y)])

    def __eq__(self, other):
        if not isinstance(other, TriplesStructure):
            return NotImplemented
        return self.ground == other.ground and np.array_equal(self.closer, other.closer)

    def __repr__(self):
        return f"TriplesStructure(n={self.ground.n})"


@dataclass(frozen=True)
class CombineMap:
    """Assignment ``f`` from the elements of ``source`` into ``target``."""

    source: GroundSet
    target: GroundSet
    assignment: Mapping

    def __post_init__(self):
        for y in self.source:
            if y not in self.assignment:
                raise InvalidInputError(f"map is not total: {y} has no image")
            if self.assignment[y] not in self.target:
                raise InvalidInputError(f"image of {y} is outside the target")

    def __call__(self, y):
        return self.assignment[y]

    def preimage(self, xs) -> set:
        xs = set(xs)
        return {y for y in self.source if self.assignment[y] in xs}


def validate_midpoints(m: MidpointsStructure) -> ValidationReport:
    bad = []
    for (i, j), mask in m.pairs():
        if not mask >> j & 1:
            bad.append(((i, j), "max not in midpoint"))
        if mask >> i & 1:
            bad.append(((i, j), "min in midpoint"))
        if mask & ~m.ground.full:
            bad.append(((i, j), "midpoint outside ground set"))
    return ValidationReport(not bad, bad)


def validate_triples(r: TriplesStructure) -> ValidationReport:
    c = r.closer
    n = r.ground.n
    bad = []
    for z in range(n):
        for x in range(n):
            if c[z, x, x]:
                bad.append(((z, x, x), "reflexive"))
            for y in range(n):
                if x == y:
                    continue
                if z == x and not c[x, x, y]:
                    bad.append(((z, x, y), "anchor not closest to itself"))
                if x < y and c[z, x, y] == c[z, y, x]:
                    bad.append(((z, x, y), "not exactly one order"))
    return ValidationReport(not bad, bad)


def to_triples(m: MidpointsStructure) -> TriplesStructure:
    if not validate_midpoints(m):
        raise InvalidInputError("midpoints structure fails its axiom")
    n = m.ground.n
    closer = np.zeros((n, n, n), dtype=bool)
    for (lo, hi), mask in m.pairs():
        inside = np.array([(mask >> z) & 1 for z in range(n)], dtype=bool)
        closer[inside, hi, lo] = True
        closer[~inside, lo, hi] = True
    return TriplesStructure(m.ground, closer)


def to_midpoints(r: TriplesStructure) -> MidpointsStructure:
    if not validate_triples(r):
        raise InvalidInputError("triples structure fails its axioms")
    n = r.ground.n
    weights = 1 << np.arange(n, dtype=object)
    mid = {}
    for x in range(n):
        for y in range(x + 1, n):
            mid[x, y] = int(weights[r.closer[:, y, x]].sum())
    return MidpointsStructure(r.ground, mid)


def derive_from_tree(t: TreeMetric) -> MidpointsStructure:
    """Midpoints structure read off a generic tree: z joins m{x,y} when closer to the max."""
    g = t.ground
    d = distance_matrix(t)
    n = g.n
    mid = {}
    for x in range(n):
        for y in range(x + 1, n):
            mask = 0
            for z in range(n):
                if d[z][y] == d[z][x]:
                    raise GenericTieError(g[z], g[x], g[y])
                if d[z][y] < d[z][x]:
                    mask |= 1 << z
            mid[x, y] = mask
    return MidpointsStructure(g, mid)


def combine(m: MidpointsStructure, other: MidpointsStructure, f: CombineMap) -> MidpointsStructure:
    """Combine ``m`` on X with ``other`` on Y along ``f: Y -> X``.

    Y is ordered after X. X-pairs gain the f-preimage of their midpoint,
    mixed pairs get the Y element alone, Y-pairs keep their midpoints.
    """
    gx, gy = m.ground, other.ground
    if set(gx.elements) & set(gy.elements):
        raise DisjointnessError("ground sets share identifiers")
    if f.source != gy or f.target != gx:
        raise InvalidInputError("combining map must go from the second ground set to the first")
    for s in (m, other):
        if not validate_midpoints(s):
            raise InvalidInputError("input structure fails its axiom")
    nx, ny = gx.n, gy.n
    ground = gx.concat(gy)
    fibres = [0] * nx
    for k, y in enumerate(gy):
        fibres[gx.index(f(y))] |= 1 << (nx + k)
    hit = sum(1 << x for x in range(nx) if fibres[x])
    mid = {}
    for (i, j), mask in m.pairs():
        extra = 0
        for x in iter_bits(mask & hit):
            extra |= fibres[x]
        mid[i, j] = mask | extra
    for i in range(nx):
        for k in range(ny):
            mid[i, nx + k] = 1 << (nx + k)
    for (i, j), mask in other.pairs():
        mid[nx + i, nx + j] = mask << nx
    return MidpointsStructure(ground, mid)


def random_midpoints(n: int, rng: np.random.Generator, ground: GroundSet | None = None) -> MidpointsStructure:
    """Uniform over legal structures: each pair's other members are independent coin flips."""
    ground = ground or GroundSet.range(n)
    mid = {}
    for i in range(n):
        for j in range(i + 1, n):
            bits = rng.integers(0, 2, size=n)
            mask = 1 << j
            for z in range(n):
                if z not in (i, j) and bits[z]:
                    mask |= 1 << z
            mid[i, j] = mask
    return MidpointsStructure(ground, mid)
