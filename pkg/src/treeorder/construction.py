"""Explicit realizations: the caterpillar tree for the variable gadget and t_h for m_P."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NonnegativityError, RangeError
from .ground import GadgetElem, GroundSet, VarElem
from .reduction import (Assignment, NamedSplits, SatCase, agreements, build_m0,
                        encode, encoding_ground, f_image, mu, variable_elements)
from .splits import (RealizationReport, TreeMetric, _cluster_tree, canonical,
                     check_realization)


def m0_realization(V: int) -> TreeMetric:
    """Caterpillar realization of the variable gadget.

    Spine edges {x[u,*] : u >= v} have length 1 and leaf x[v,s] has length
    10**(v + (s+1)/2), except x[0,-1] which has length 0.
    """
    if V < 1:
        raise RangeError("V must be positive")
    ground = GroundSet(variable_elements(V))
    lengths = {}
    for v in range(1, V + 2):
        lengths[ground.mask(x for x in ground if x.v >= v)] = 1
    for x in ground:
        if (x.v, x.s) != (0, -1):
            lengths[ground.mask([x])] = 10 ** (x.v + (x.s + 1) // 2)
    return TreeMetric(ground, lengths)


def splitting_edge(names: NamedSplits, v: int, sign: int) -> int:
    """The length-6 edge recording h(v) = sign: it groups A_{v,sign} with A_{<v}."""
    return names.A(v, sign) | names.below(v)


def base_vector(P: SatCase, h: Assignment, above_orientation: bool = False) -> TreeMetric:
    """The tree that realizes m_P except at lexicographically adjacent gadget pairs.

    ``above_orientation=True`` places each splitting edge as A_{>v} | A_{v,h(v)}
    instead, which is the opposite choice; it is kept for the negative test.
    """
    if len(h) != P.V:
        raise RangeError(f"assignment covers {len(h)} variables, case has {P.V}")
    V, C = P.V, P.C
    ground = encoding_ground(P)
    names = NamedSplits(P, ground)
    full = ground.full
    lengths = {}

    def put(mask, value):
        key = canonical(mask, full)
        if lengths.setdefault(key, value) != value:
            raise RangeError(f"two lengths requested for split {key:#x}")

    for v in range(1, V + 1):
        if above_orientation:
            put(names.above(v) | names.A(v, h(v)), 6)
        else:
            put(splitting_edge(names, v, h(v)), 6)
    for v in range(0, V + 1):
        put(names.above(v), 10 ** V)
    for v in range(0, V + 2):
        for s in (-1, 1):
            put(names.A(v, s), 10 ** (V + v + (s + 1) // 2))
    for c in range(1, C + 1):
        base = 2 * V + 4 * c
        for p in range(4):
            for q in range(4):
                for e in (-1, 0, 1):
                    if e:
                        put(names.doubleton(c, p, q, e), 10 ** (base + (p + q + e) % 4))
                    leaf = (10 ** (2 * V + 4 * C + 4 + 4 * c + p)
                            + 2 * 10 ** (base + (p + q) % 4)
                            + e * e * 10 ** (base + (p + q + e) % 4))
                    put(names.leaf(GadgetElem(c, p, q, e)), leaf)
    return TreeMetric(ground, lengths)


def _variable_distances(P: SatCase, t: TreeMetric) -> dict:
    g = t.ground
    scale, tree = _cluster_tree(t)
    xs = variable_elements(P.V)
    out = {}
    for a in xs:
        for b in xs:
            out[a, b] = Fraction(tree.distance(g.index(a), g.index(b)), scale)
    return out


def correction(P: SatCase, h: Assignment, base: TreeMetric, u_factor: int = 1) -> dict:
    """Leaf-edge adjustments ``{GadgetElem: Fraction}`` along each (c, p) chain.

    The chain walks x[c,p,q,e] in lexicographic (q, e) order starting at 0,
    adding n_h(c) per step and compensating for the backbone distance
    between the images of consecutive elements. ``u_factor`` scales that
    distance (1: leaf distance, 2: closed-interval path sum).
    """
    dist = _variable_distances(P, base)

    def u(a, b):
        return u_factor * dist[f_image(P, a), f_image(P, b)]

    out = {}
    for c in range(1, P.C + 1):
        n = agreements(P, h, c)
        for p in range(4):
            x = lambda q, e: GadgetElem(c, p, q, e)
            val = Fraction(0)
            for q in range(4):
                if q:
                    val = out[x(q - 1, 1)] + n
                out[x(q, -1)] = val
                out[x(q, 0)] = out[x(q, -1)] - u(x(q, -1), x(q, 0)) + n
                out[x(q, 1)] = out[x(q, 0)] + u(x(q, 0), x(q, 1)) + n
    return out


@dataclass(frozen=True)
class RealizationPlan:
    base: TreeMetric
    correction: dict
    result: TreeMetric


def plan_realization(P: SatCase, h: Assignment, **options) -> RealizationPlan:
    u_factor = options.pop("u_factor", 1)
    base = base_vector(P, h, **options)
    corr = correction(P, h, base, u_factor=u_factor)
    g = base.ground
    lengths = base.lengths
    for x, dv in corr.items():
        key = canonical(1 << g.index(x), g.full)
        value = lengths.get(key, Fraction(0)) + dv
        if value < 0:
            raise NonnegativityError(f"leaf {x} would get length {value}")
        lengths[key] = value
    return RealizationPlan(base, corr, TreeMetric(g, lengths))


def build_realization(P: SatCase, h: Assignment, m=None, **options) -> tuple:
    """Assemble t_h and verify it against m_P; returns ``(t_h, report)``.

    Accepts non-satisfying ``h`` on purpose: the report then shows where the
    construction breaks.
    """
    plan = plan_realization(P, h, **options)
    m = m if m is not None else encode(P)
    return plan.result, check_realization(m, plan.result)
