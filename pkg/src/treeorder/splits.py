"""Splits, tree metrics, edge intervals and the realization checker.

A split is an unordered bipartition of the ground set. It is stored as an
``int`` bitmask over element indices holding the side that does *not*
contain element 0, so each geometric edge has exactly one key. Lengths are
exact :class:`fractions.Fraction` values.

Interval sums follow the convention that an interval contains a subset
together with its complement, so every member edge contributes twice its
length.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import DisconnectedError, InvalidInputError
from .ground import GroundSet, iter_bits


def canonical(mask: int, full: int) -> int:
    return full ^ mask if mask & 1 else mask


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def is_compatible(s: int, t: int, full: int) -> bool:
    """True iff some side of ``s`` is disjoint from some side of ``t``."""
    sc, tc = full ^ s, full ^ t
    return not (s & t) or not (s & tc) or not (sc & t) or not (sc & tc)


def in_interval(u: int, s: int, t: int, full: int) -> bool:
    """Literal chain test: ``s^e <= u^g <= t^f`` for some choice of sides."""
    for a in (s, full ^ s):
        for g in (u, full ^ u):
            if a & ~g:
                continue
            for b in (t, full ^ t):
                if not g & ~b:
                    return True
    return False


def betweenness(s: int, t: int, u: int, full: int) -> bool:
    """The relation ``s : t : u``, i.e. ``t`` lies in the closed interval ``[s, u]``."""
    return in_interval(t, s, u, full)


@dataclass
class ValidationReport:
    ok: bool
    violations: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class EdgeInterval:
    start: int
    end: int
    closed_start: bool = True
    closed_end: bool = True

    @classmethod
    def closed(cls, s, t):
        return cls(s, t, True, True)

    @classmethod
    def half_open(cls, s, t):
        return cls(s, t, True, False)

    @classmethod
    def open(cls, s, t):
        return cls(s, t, False, False)


class TreeMetric:
    """Sparse nonnegative lengths on nontrivial splits of a ground set.

    Zero-length entries are kept: they describe topology without changing
    any distance. ``support`` lists only the positive ones.
    """

    def __init__(self, ground: GroundSet, lengths: Mapping[int, object] = ()):
        self.ground = ground
        full = ground.full
        store = {}
        for mask, value in dict(lengths).items():
            key = canonical(mask, full)
            if key == 0:
                raise InvalidInputError("trivial split cannot carry a length")
            value = Fraction(value)
            if value < 0:
                raise InvalidInputError(f"negative length {value} on split {key:#x}")
            if key in store and store[key] != value:
                raise InvalidInputError(f"conflicting lengths for split {key:#x}")
            store[key] = value
        self._lengths = store

    @classmethod
    def from_sides(cls, ground: GroundSet, sides: Mapping[Iterable, object]) -> "TreeMetric":
        return cls(ground, {ground.mask(side): value for side, value in sides.items()})

    @property
    def full(self) -> int:
        return self.ground.full

    @property
    def lengths(self) -> dict:
        return dict(self._lengths)

    def __getitem__(self, mask: int) -> Fraction:
        return self._lengths.get(canonical(mask, self.full), Fraction(0))

    def length_of(self, side: Iterable) -> Fraction:
        return self[self.ground.mask(side)]

    def splits(self) -> list:
        return sorted(self._lengths)

    def support(self) -> list:
        return sorted(k for k, v in self._lengths.items() if v > 0)

    def items(self):
        return sorted(self._lengths.items())

    def __eq__(self, other):
        if not isinstance(other, TreeMetric):
            return NotImplemented
        return (self.ground == other.ground
                and {k: v for k, v in self._lengths.items() if v}
                == {k: v for k, v in other._lengths.items() if v})

    def __repr__(self):
        return f"TreeMetric(n={self.ground.n}, edges={len(self._lengths)})"


def validate_tree(t: TreeMetric) -> ValidationReport:
    full = t.full
    sup = t.support()
    bad = [(a, b) for i, a in enumerate(sup) for b in sup[i + 1:]
           if not is_compatible(a, b, full)]
    return ValidationReport(not bad, bad)


def _interval_sum(t: TreeMetric, s: int, u: int, closed_start: bool, closed_end: bool,
                  orientations: int = 2) -> Fraction:
    full = t.full
    cs, cu = canonical(s, full), canonical(u, full)
    total = Fraction(0)
    for key in t.support():
        if (not closed_start and key == cs) or (not closed_end and key == cu):
            continue
        if in_interval(key, s, u, full):
            total += t[key]
    return orientations * total


def _check_aligned(t: TreeMetric, *edges: int):
    full = t.full
    for e in edges:
        for key in t.support():
            if not is_compatible(e, key, full):
                raise DisconnectedError(f"split {e:#x} crosses tree edge {key:#x}")


def interval_members(t: TreeMetric, interval: EdgeInterval) -> set:
    """Canonical splits of ``support(t) | {start, end}`` lying in the interval."""
    full = t.full
    s, u = interval.start, interval.end
    _check_aligned(t, s, u)
    cs, cu = canonical(s, full), canonical(u, full)
    out = set()
    for key in set(t.support()) | {cs, cu}:
        if (not interval.closed_start and key == cs) or (not interval.closed_end and key == cu):
            continue
        if in_interval(key, s, u, full):
            out.add(key)
    return out


def path_sum(t: TreeMetric, interval: EdgeInterval, orientations: int = 2) -> Fraction:
    """Sum of lengths over interval members, each edge counted for both orientations.

    ``orientations=1`` gives the single-orientation variant (half the value).
    """
    _check_aligned(t, interval.start, interval.end)
    return _interval_sum(t, interval.start, interval.end,
                         interval.closed_start, interval.closed_end, orientations)


def leaf_distance(t: TreeMetric, x, y) -> Fraction:
    if x == y:
        return Fraction(0)
    g = t.ground
    sx, sy = 1 << g.index(x), 1 << g.index(y)
    return path_sum(t, EdgeInterval.closed(sx, sy)) / 2


class _ClusterTree:
    """Rooted view of a compatible split system (rooted at element 0).

    Every split is the cluster on its side away from element 0; the tree
    vertex below a cluster is identified with the cluster itself and the
    root is ``0``. Lengths are scaled integers.
    """

    def __init__(self, n: int, lengths: Mapping[int, int]):
        self.n = n
        self.length = dict(lengths)
        by_size = sorted(self.length, key=lambda c: (-popcount(c), c))
        chains = [[] for _ in range(n)]
        for c in by_size:
            for i in iter_bits(c):
                chains[i].append(c)
        self.chains = chains
        depth = {0: 0}
        parent = {}
        for c in by_size:
            chain = chains[(c & -c).bit_length() - 1]
            pos = chain.index(c)
            p = chain[pos - 1] if pos else 0
            parent[c] = p
            depth[c] = depth[p] + self.length[c]
        self.depth = depth
        self.parent = parent
        self.leaf_node = [chains[i][-1] if chains[i] else 0 for i in range(n)]

    def lca_with(self, i: int, cluster: int) -> int:
        for c in reversed(self.chains[i]):
            if not cluster & ~c:
                return c
        return 0

    def to_edge(self, i: int, cluster: int) -> int:
        """Length of the path from leaf ``i`` through the far end of edge ``cluster``."""
        node = self.leaf_node[i]
        if cluster >> i & 1:
            return self.depth[node] - self.depth[cluster] + self.length[cluster]
        return self.depth[node] + self.depth[cluster] - 2 * self.depth[self.lca_with(i, cluster)]

    def distance(self, i: int, j: int) -> int:
        if i == j:
            return 0
        a, b = self.leaf_node[i], self.leaf_node[j]
        lca = self.lca_with(i, 1 << j) if a else 0
        return self.depth[a] + self.depth[b] - 2 * self.depth[lca]


def _scaled(t: TreeMetric):
    scale = 1
    for v in t.lengths.values():
        scale = math.lcm(scale, v.denominator)
    return scale, {k: int(v * scale) for k, v in t.lengths.items() if v > 0}


def _cluster_tree(t: TreeMetric, extra: Iterable[int] = ()):
    """Cluster tree over the positive support plus zero-length padding edges.

    Padding edges are added in order when compatible with everything so far.
    """
    full, n = t.full, t.ground.n
    scale, lengths = _scaled(t)
    keys = list(lengths)
    pads = [canonical(1 << i, full) for i in range(n)] + [canonical(e, full) for e in extra]
    for e in pads:
        if e in lengths:
            continue
        if all(is_compatible(e, k, full) for k in keys):
            lengths[e] = 0
            keys.append(e)
    return scale, _ClusterTree(n, lengths)


def distance_matrix(t: TreeMetric) -> list:
    """All pairwise leaf distances (requires a compatible support)."""
    rep = validate_tree(t)
    if not rep.ok:
        raise InvalidInputError(f"incompatible support: {len(rep.violations)} crossing pairs")
    n = t.ground.n
    scale, tree = _cluster_tree(t)
    d = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            d[i][j] = d[j][i] = Fraction(tree.distance(i, j), scale)
    return d


@dataclass(frozen=True)
class PairCheck:
    """One ordered-pair instance of the strict midpoint inequality."""

    x: int
    y: int
    midpoint: int
    lhs: Fraction
    rhs: Fraction
    aligned: bool = True

    @property
    def slack(self) -> Fraction:
        return self.lhs - self.rhs

    @property
    def ok(self) -> bool:
        return self.lhs > self.rhs


@dataclass
class RealizationReport:
    ground: GroundSet
    checks: list
    tree_violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.tree_violations and all(c.ok for c in self.checks)

    def __bool__(self):
        return self.ok

    @property
    def violations(self) -> list:
        return [c for c in self.checks if not c.ok]

    @property
    def min_slack(self):
        return min((c.slack for c in self.checks), default=None)

    def __len__(self):
        return len(self.checks)

    def summary(self) -> str:
        bad = self.violations
        status = "REALIZED" if self.ok else "NOT REALIZED"
        lines = [f"{status}: {len(self.checks) - len(bad)}/{len(self.checks)} ordered pairs strict"]
        if self.tree_violations:
            lines.append(f"{len(self.tree_violations)} crossing pairs of positive edges")
        unaligned = sum(1 for c in self.checks if not c.aligned)
        if unaligned:
            lines.append(f"{unaligned} ordered pairs with UNALIGNED_EDGE midpoints")
        return "\n".join(lines)


def check_realization(m, t: TreeMetric, literal: bool = False) -> RealizationReport:
    """Evaluate every strict midpoint inequality of ``m`` on ``t``.

    For each ordered pair (x, y) with M = m{x, y} this compares the closed
    interval sum from {x} to M against the half-open sum from {y} to M.

    Aligned midpoints are read off a rooted cluster tree in O(depth); any
    midpoint crossing a positive edge falls back to the literal interval
    definition and is flagged ``aligned=False``. ``literal=True`` forces the
    literal route everywhere (slow; used as a cross-check).
    """
    g = m.ground
    if g != t.ground:
        raise InvalidInputError("structure and tree live on different ground sets")
    full, n = g.full, g.n
    tree_bad = validate_tree(t).violations
    support = t.support()
    checks = []
    if literal or tree_bad:
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                mid = m.mask(i, j)
                aligned = all(is_compatible(mid, k, full) for k in support)
                lhs = _interval_sum(t, 1 << i, mid, True, True)
                rhs = _interval_sum(t, 1 << j, mid, True, False)
                checks.append(PairCheck(i, j, canonical(mid, full), lhs, rhs, aligned))
        return RealizationReport(g, checks, tree_bad)

    mids = sorted({canonical(m.mask(i, j), full) for i in range(n) for j in range(i + 1, n)})
    scale, tree = _cluster_tree(t, mids)
    aligned = {c: all(is_compatible(c, k, full) for k in support) for c in mids}
    cache = {}

    def to_edge(i, c):
        key = (i, c)
        if key not in cache:
            cache[key] = tree.to_edge(i, c)
        return cache[key]

    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            c = canonical(m.mask(i, j), full)
            if c in tree.length:
                lhs = Fraction(2 * to_edge(i, c), scale)
                rhs = Fraction(2 * (to_edge(j, c) - tree.length[c]), scale)
            else:
                lhs = _interval_sum(t, 1 << i, c, True, True)
                rhs = _interval_sum(t, 1 << j, c, True, False)
            checks.append(PairCheck(i, j, c, lhs, rhs, aligned[c]))
    return RealizationReport(g, checks, tree_bad)


def forced_edges(m) -> set:
    """Canonical images of the midpoint map: edges every realization makes positive."""
    full, n = m.ground.full, m.ground.n
    return {canonical(m.mask(i, j), full) for i in range(n) for j in range(i + 1, n)}


def midpoints_geometry(m) -> set:
    """Midpoint-map images plus all leaf edges, as canonical splits."""
    full = m.ground.full
    return forced_edges(m) | {canonical(1 << i, full) for i in range(m.ground.n)}


def tree_edges(t: TreeMetric) -> set:
    """Positive support plus every pendant leaf edge, zero-length ones included.

    A zero-length leaf edge puts the leaf on an internal vertex; the edge
    still belongs to the tree's topology.
    """
    full = t.full
    return set(t.support()) | {canonical(1 << i, full) for i in range(t.ground.n)}
