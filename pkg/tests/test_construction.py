import itertools

import pytest

from conftest import EXAMPLE_H
from treeorder.construction import (base_vector, build_realization, correction, m0_realization,
                                    plan_realization, splitting_edge)
from treeorder.errors import RangeError
from treeorder.ground import GadgetElem, VarElem
from treeorder.reduction import (EXAMPLE_CASE, Assignment, NamedSplits, SatCase, agreements,
                                 build_m0, encode, extract_assignment, is_satisfied)
from treeorder.splits import canonical, check_realization, forced_edges, validate_tree

V, C = EXAMPLE_CASE.V, EXAMPLE_CASE.C


@pytest.fixture(scope="module")
def base():
    return base_vector(EXAMPLE_CASE, EXAMPLE_H)


@pytest.fixture(scope="module")
def names():
    return NamedSplits(EXAMPLE_CASE)


def test_m0_closed_form():
    t = m0_realization(4)
    assert t.ground.n == 12
    assert t[t.ground.mask([VarElem(0, -1)])] == 0
    assert t[t.ground.mask([VarElem(5, 1)])] == 10 ** 6
    assert check_realization(build_m0(4), t).ok
    with pytest.raises(RangeError):
        m0_realization(0)


def test_base_vector_values(base, names):
    assert validate_tree(base).ok
    assert base[names.doubleton(1, 0, 0, 1)] == 10 ** 13
    assert base[names.leaf(GadgetElem(1, 0, 0, 0))] == 10 ** 24 + 2 * 10 ** 12
    assert base[names.leaf(GadgetElem(2, 3, 1, -1))] == 10 ** 31 + 2 * 10 ** 16 + 10 ** 19
    for v in range(1, V + 1):
        assert base[splitting_edge(names, v, EXAMPLE_H(v))] == 6
        assert base[splitting_edge(names, v, -EXAMPLE_H(v))] == 0
    for v in range(0, V + 1):
        assert base[names.above(v)] == 10 ** V
    for v in range(0, V + 2):
        for s in (-1, 1):
            assert base[names.A(v, s)] == 10 ** (V + v + (s + 1) // 2)


def test_base_vector_rejects_short_assignment():
    with pytest.raises(RangeError):
        base_vector(EXAMPLE_CASE, Assignment((1, 1)))


def test_scale_ladder(base, names):
    split = [base[splitting_edge(names, v, EXAMPLE_H(v))] for v in range(1, V + 1)]
    above = [base[names.above(v)] for v in range(0, V + 1)]
    var = {(v, s): base[names.A(v, s)] for v in range(0, V + 2) for s in (-1, 1)}
    doubles = [base[names.doubleton(c, p, q, e)] for c in range(1, C + 1) for p in range(4)
               for q in range(4) for e in (-1, 1)]
    leaves = [base[names.leaf(GadgetElem(c, p, q, e))] for c in range(1, C + 1) for p in range(4)
              for q in range(4) for e in (-1, 0, 1)]
    assert max(split) < min(above)
    assert max(above) <= min(var.values())
    # only A_{0,-1} ties with the A_{>v} scale
    assert [k for k, val in var.items() if val == max(above)] == [(0, -1)]
    assert max(var.values()) < min(doubles) and max(doubles) < min(leaves)


def test_correction_chain(base):
    corr = correction(EXAMPLE_CASE, EXAMPLE_H, base)
    assert set(corr) == {GadgetElem(c, p, q, e) for c in (1, 2) for p in range(4)
                         for q in range(4) for e in (-1, 0, 1)}
    n1 = agreements(EXAMPLE_CASE, EXAMPLE_H, 1)
    assert n1 == 2
    for c in (1, 2):
        for p in range(4):
            assert corr[GadgetElem(c, p, 0, -1)] == 0
    for p in range(4):
        assert corr[GadgetElem(1, p, 1, -1)] == corr[GadgetElem(1, p, 0, 1)] + 2


def test_correction_without_agreement_ties():
    h = Assignment((-1, -1, -1, 1))
    assert agreements(EXAMPLE_CASE, h, 2) == 0
    corr = correction(EXAMPLE_CASE, h, base_vector(EXAMPLE_CASE, h))
    for p in range(4):
        for q in range(1, 4):
            assert corr[GadgetElem(2, p, q, -1)] == corr[GadgetElem(2, p, q - 1, 1)]


def test_plan_is_base_plus_correction():
    plan = plan_realization(EXAMPLE_CASE, EXAMPLE_H)
    g = plan.base.ground
    for key, value in plan.result.lengths.items():
        delta = value - plan.base[key]
        if delta:
            x = next(iter(g.members(key if bin(key).count("1") == 1 else g.full ^ key)))
            assert isinstance(x, GadgetElem) and plan.correction[x] == delta
    assert all(v >= 0 for v in plan.result.lengths.values())


def test_example_realization(example_th, example_m):
    t, report = example_th
    assert report.ok and len(report) == 108 * 107 == 11556
    assert extract_assignment(t, EXAMPLE_CASE) == EXAMPLE_H


def test_support_shape(example_th, example_m, names):
    t, _ = example_th
    full = t.full
    extra = {splitting_edge(names, v, EXAMPLE_H(v)) for v in range(1, V + 1)}
    extra.add(names.A(0, -1))
    expected = forced_edges(example_m) | {canonical(e, full) for e in extra}
    assert set(t.support()) == expected


def test_assignments_give_distinct_supports(example_m):
    sups = {}
    for vals in itertools.product((-1, 1), repeat=V):
        h = Assignment(vals)
        if is_satisfied(EXAMPLE_CASE, h):
            t = plan_realization(EXAMPLE_CASE, h).result
            sups[vals] = frozenset(t.support())
    assert len(set(sups.values())) == len(sups) == 12
    forced = frozenset(forced_edges(example_m))
    assert all(forced < s for s in sups.values())


def test_non_satisfying_assignments_fail(example_m):
    for vals in itertools.product((-1, 1), repeat=V):
        h = Assignment(vals)
        if not is_satisfied(EXAMPLE_CASE, h):
            _, report = build_realization(EXAMPLE_CASE, h, example_m)
            assert len(report.violations) >= 1


def test_empty_case_realizations():
    P = SatCase(2, 0, (), ())
    for vals in itertools.product((-1, 1), repeat=2):
        _, report = build_realization(P, Assignment(vals))
        assert report.ok


@pytest.mark.parametrize("options", [{"above_orientation": True}, {"u_factor": 2}])
def test_alternative_readings_fail(options, example_m):
    """The other splitting-edge orientation and the doubled u both break the construction."""
    _, report = build_realization(EXAMPLE_CASE, EXAMPLE_H, example_m, **options)
    assert not report.ok


def test_fast_and_literal_agree_on_example(example_th, example_m):
    t, report = example_th
    literal = check_realization(example_m, t, literal=True)
    assert [(c.lhs, c.rhs) for c in literal.checks] == [(c.lhs, c.rhs) for c in report.checks]
