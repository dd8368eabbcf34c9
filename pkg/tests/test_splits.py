from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings

from oracles import pair_sums, split_distance
from strategies import generic_tree, quartet_tree, random_lengths_tree, rng_from, seeds
from treeorder.construction import m0_realization
from treeorder.errors import DisconnectedError, InvalidInputError
from treeorder.ground import GroundSet, VarElem
from treeorder.reduction import build_clause_gadget, build_m0
from treeorder.splits import (EdgeInterval, TreeMetric, betweenness, canonical, check_realization,
                              forced_edges, interval_members, is_compatible, leaf_distance,
                              midpoints_geometry, path_sum, validate_tree)
from treeorder.structures import MidpointsStructure, derive_from_tree, random_midpoints

X4 = GroundSet.range(4)


def bits(*xs):
    return sum(1 << x for x in xs)


def caterpillar(n):
    """Leaves 0..n-1 on a path; every edge has length 1."""
    lengths = {1 << k: 1 for k in range(n)}
    lengths.update({bits(*range(k + 1)): 1 for k in range(1, n - 2)})
    return TreeMetric(GroundSet.range(n), lengths)


def test_compatibility_examples():
    assert is_compatible(bits(1), bits(1, 2), X4.full)
    assert not is_compatible(bits(1, 2), bits(2, 3), X4.full)
    t = m0_realization(4)
    sup = t.support()
    assert all(is_compatible(a, b, t.full) for a in sup for b in sup)
    assert validate_tree(t).ok


def test_validate_tree_reports_crossing_pair():
    t = TreeMetric(X4, {bits(1, 2): 1, bits(2, 3): 1})
    report = validate_tree(t)
    assert not report.ok and report.violations == [(bits(1, 2), bits(2, 3))]
    # zero-length entries never make a tree invalid
    assert validate_tree(TreeMetric(X4, {bits(1, 2): 1, bits(2, 3): 0})).ok


def test_tree_metric_rejects_bad_lengths():
    with pytest.raises(InvalidInputError):
        TreeMetric(X4, {bits(1): -1})
    with pytest.raises(InvalidInputError):
        TreeMetric(X4, {X4.full: 1})
    with pytest.raises(InvalidInputError):
        TreeMetric(X4, {bits(1): 1, bits(0, 2, 3): 2})
    t = TreeMetric(X4, {bits(0, 1): Fraction(3, 2)})
    assert t[bits(2, 3)] == Fraction(3, 2)


def test_interval_members_on_four_leaf_caterpillar():
    t = caterpillar(4)
    members = interval_members(t, EdgeInterval.closed(bits(0), bits(3)))
    assert members == {canonical(bits(0), 15), bits(2, 3), bits(3)}
    half = interval_members(t, EdgeInterval.half_open(bits(0), bits(0, 1, 2)))
    assert canonical(bits(3), 15) not in half
    assert half == {canonical(bits(0), 15), bits(2, 3)}


def test_interval_members_on_six_leaf_caterpillar():
    t = caterpillar(6)
    members = interval_members(t, EdgeInterval.closed(bits(0), bits(5)))
    assert len(members) == 5
    assert path_sum(t, EdgeInterval.closed(bits(0), bits(5))) == 10


def test_interval_members_in_m0_tree():
    t = m0_realization(4)
    g = t.ground
    a, b = 1 << g.index(VarElem(0, 1)), 1 << g.index(VarElem(1, 1))
    spine = g.mask(x for x in g if x.v >= 1)
    assert interval_members(t, EdgeInterval.open(a, b)) == {canonical(spine, g.full)}
    assert path_sum(t, EdgeInterval.open(a, b)) == 2


def test_path_sum_examples():
    t = caterpillar(4)
    assert path_sum(t, EdgeInterval.open(bits(1), bits(2))) == 2
    t = TreeMetric(X4, {bits(1): 7, bits(0, 1): 1})
    assert path_sum(t, EdgeInterval.closed(bits(1), bits(1))) == 14
    assert path_sum(t, EdgeInterval.closed(bits(1), bits(1)), orientations=1) == 7


def test_disconnected_interval():
    t = TreeMetric(X4, {bits(1, 2): 1})
    with pytest.raises(DisconnectedError):
        path_sum(t, EdgeInterval.closed(bits(2, 3), bits(0)))


def test_betweenness_examples():
    full = GroundSet.range(5).full
    assert betweenness(bits(1), bits(1, 2), bits(1, 2, 3), full)
    assert not betweenness(bits(1), bits(2, 3), bits(1, 2), full)


def test_leaf_distance_examples():
    g = GroundSet.of("abc")
    star = TreeMetric.from_sides(g, {"a": 1, "b": 2, "c": 3})
    assert leaf_distance(star, "a", "b") == 3
    assert leaf_distance(star, "c", "c") == 0
    t = m0_realization(1)
    assert leaf_distance(t, VarElem(0, 1), VarElem(1, 1)) == 111


def test_check_realization_two_elements():
    g = GroundSet.of("ab")
    m = MidpointsStructure(g, {(0, 1): 0b10})
    # with two elements {a} and {b} are the same edge
    report = check_realization(m, TreeMetric.from_sides(g, {"b": 1}))
    assert report.ok and [(c.lhs, c.rhs) for c in report.checks] == [(2, 0), (2, 0)]
    report = check_realization(m, TreeMetric.from_sides(g, {"b": 0}))
    assert not report.ok and len(report.violations) == 2


def test_check_realization_m0():
    report = check_realization(build_m0(4), m0_realization(4))
    assert report.ok and len(report) == 12 * 11
    assert check_realization(build_m0(4), m0_realization(4), literal=True).ok


def test_midpoints_geometry_examples():
    g = GroundSet.of("ab")
    assert midpoints_geometry(MidpointsStructure(g, {(0, 1): 0b10})) == {0b10}
    geo = midpoints_geometry(build_m0(4))
    assert len(geo) == 17
    gm = build_m0(4).ground
    spines = {canonical(gm.mask(x for x in gm if x.v >= v), gm.full) for v in range(1, 6)}
    assert spines <= geo
    gadget = build_clause_gadget()
    geo = midpoints_geometry(gadget)
    doubletons = [s for s in geo if bin(s).count("1") not in (1, 47)]
    assert len(geo) == 48 + 16 and len(doubletons) == 16


def test_leaf_edges_are_not_forced():
    # the closed-form tree realizes m0 with a zero-length leaf at x[0,-1]
    t = m0_realization(4)
    m = build_m0(4)
    g = t.ground
    leaf = canonical(1 << g.index(VarElem(0, -1)), g.full)
    assert check_realization(m, t).ok and t[leaf] == 0
    assert leaf in midpoints_geometry(m) and leaf not in forced_edges(m)
    assert all(t[e] > 0 for e in forced_edges(m))


@settings(max_examples=80, deadline=None)
@given(seeds)
def test_fast_and_literal_checks_agree(seed):
    rng = rng_from(seed)
    n = int(rng.integers(2, 8))
    t = random_lengths_tree(n, rng) if n >= 3 else TreeMetric(GroundSet.range(2), {1: 1})
    m = random_midpoints(n, rng)
    fast = check_realization(m, t)
    slow = check_realization(m, t, literal=True)
    assert [(c.lhs, c.rhs) for c in fast.checks] == [(c.lhs, c.rhs) for c in slow.checks]


@settings(max_examples=80, deadline=None)
@given(seeds)
def test_checker_matches_independent_sums(seed):
    rng = rng_from(seed)
    n = int(rng.integers(3, 8))
    t = random_lengths_tree(n, rng)
    m = random_midpoints(n, rng)
    lengths = {k: v for k, v in t.lengths.items()}
    report = check_realization(m, t)
    for c in report.checks:
        if c.aligned:
            assert (c.lhs, c.rhs) == pair_sums(lengths, n, c.x, c.y, m.mask(c.x, c.y))


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_leaf_distance_matches_split_formula(seed):
    rng = rng_from(seed)
    n = int(rng.integers(3, 9))
    t = random_lengths_tree(n, rng)
    for i in range(n):
        for j in range(n):
            d = leaf_distance(t, i, j)
            assert d == split_distance(t.lengths, n, i, j)
            assert d == leaf_distance(t, j, i)
            for k in range(n):
                assert leaf_distance(t, i, k) <= d + leaf_distance(t, j, k)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_factor_consistency(seed):
    """Single-orientation sums give the same verdict on every pair."""
    rng = rng_from(seed)
    n = int(rng.integers(3, 7))
    t = random_lengths_tree(n, rng)
    m = derive_from_tree(generic_tree(n, rng)) if rng.random() < 0.5 else random_midpoints(n, rng)
    for c in check_realization(m, t).checks:
        if not c.aligned:
            continue
        mid = m.mask(c.x, c.y)
        lhs = path_sum(t, EdgeInterval.closed(1 << c.x, mid), orientations=1)
        rhs = path_sum(t, EdgeInterval.half_open(1 << c.y, mid), orientations=1)
        assert (lhs > rhs) == c.ok and 2 * lhs == c.lhs and 2 * rhs == c.rhs


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_path_additivity(seed):
    rng = rng_from(seed)
    t = random_lengths_tree(int(rng.integers(3, 9)), rng, zero_prob=0)
    full = t.full
    sup = t.support()
    for s, mid, u in permutations(sup, 3):
        if betweenness(s, mid, u, full):
            lhs = path_sum(t, EdgeInterval.open(s, u))
            rhs = path_sum(t, EdgeInterval.open(s, mid)) + 2 * t[mid] + path_sum(t, EdgeInterval.open(mid, u))
            assert lhs == rhs


@settings(max_examples=80, deadline=None)
@given(seeds)
def test_partition_lemma_corrected_form(seed):
    """Exclusivity, plus t_(Uj,Uk) = 2 * sum of t(Uj | Ui) over the other two blocks."""
    t, blocks = quartet_tree(rng_from(seed))
    pos = [j for j in range(3) if t[blocks[j] | blocks[3]] > 0]
    assert len(pos) <= 1
    for j, k in permutations(range(4), 2):
        others = [i for i in range(4) if i not in (j, k)]
        expected = 2 * sum(t[blocks[j] | blocks[i]] for i in others)
        assert path_sum(t, EdgeInterval.open(blocks[j], blocks[k])) == expected


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_midpoint_positivity(seed):
    rng = rng_from(seed)
    n = int(rng.integers(3, 8))
    t = random_lengths_tree(n, rng)
    try:
        m = derive_from_tree(t)
    except Exception:
        return
    assert check_realization(m, t).ok
    assert all(t[e] > 0 for e in forced_edges(m))
