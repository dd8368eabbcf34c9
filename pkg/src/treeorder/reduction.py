"""3-SAT cases and their encoding as a midpoints structure.

The encoding glues one 48-element clause gadget per clause onto a
caterpillar-shaped variable gadget. A realization of the encoded structure
determines a satisfying assignment through the statistic :func:`tau`.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import (ClauseArityError, DuplicateVariableError, FormatError,
                     RangeError, UnalignedEdgeError)
from .ground import GadgetElem, GroundSet, VarElem
from .splits import TreeMetric, _interval_sum, is_compatible
from .structures import CombineMap, MidpointsStructure, combine


@dataclass(frozen=True)
class SatCase:
    V: int
    C: int
    nu: tuple
    sigma: tuple

    def __post_init__(self):
        if self.V < 1:
            raise RangeError("need at least one variable")
        if len(self.nu) != self.C or len(self.sigma) != self.C:
            raise RangeError("clause tables do not match C")
        for c, (vs, ss) in enumerate(zip(self.nu, self.sigma), start=1):
            if len(vs) != 3 or len(ss) != 3:
                raise ClauseArityError(f"clause {c} does not have three literals")
            if any(not 1 <= v <= self.V for v in vs):
                raise RangeError(f"clause {c} mentions a variable outside [1, {self.V}]")
            if len(set(vs)) != 3:
                raise DuplicateVariableError(f"clause {c} repeats a variable")
            if not vs[0] < vs[1] < vs[2]:
                raise RangeError(f"clause {c} variables are not increasing")
            if any(s not in (-1, 1) for s in ss):
                raise RangeError(f"clause {c} has a sign outside {{-1, +1}}")

    @classmethod
    def from_clauses(cls, clauses, V: int | None = None) -> "SatCase":
        """Build from signed-integer clauses, e.g. ``[(2, -3, 4), (1, 2, 3)]``."""
        nu, sigma = [], []
        top = 0
        for k, clause in enumerate(clauses, start=1):
            lits = [int(a) for a in clause]
            if len(lits) != 3:
                raise ClauseArityError(f"clause {k} has {len(lits)} literals")
            if any(a == 0 for a in lits):
                raise RangeError(f"clause {k} contains variable 0")
            if len({abs(a) for a in lits}) != 3:
                raise DuplicateVariableError(f"clause {k}: {' '.join(map(str, lits))}")
            lits.sort(key=abs)
            nu.append(tuple(abs(a) for a in lits))
            sigma.append(tuple(1 if a > 0 else -1 for a in lits))
            top = max(top, abs(lits[-1]))
        if V is None:
            V = max(top, 1)
        elif top > V:
            raise RangeError(f"variable {top} exceeds declared count {V}")
        return cls(V, len(nu), tuple(nu), tuple(sigma))

    def clauses(self):
        return [tuple(v * s for v, s in zip(vs, ss)) for vs, ss in zip(self.nu, self.sigma)]

    def to_dimacs(self) -> str:
        lines = [f"p cnf {self.V} {self.C}"]
        lines += [" ".join(map(str, cl)) + " 0" for cl in self.clauses()]
        return "\n".join(lines) + "\n"


def parse_case(text: str) -> SatCase:
    """Parse the 3-literal DIMACS CNF subset. Literals are sorted by variable."""
    V = C = None
    tokens = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line[0] in "c%":
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise FormatError(f"bad problem line: {line!r}")
            V, C = int(parts[2]), int(parts[3])
            continue
        tokens.extend(line.split())
    clauses, current = [], []
    for tok in tokens:
        if not re.fullmatch(r"-?\d+", tok):
            raise FormatError(f"unexpected token {tok!r}")
        lit = int(tok)
        if lit == 0:
            clauses.append(current)
            current = []
        else:
            current.append(lit)
    if current:
        clauses.append(current)
    if C is not None and C != len(clauses):
        raise FormatError(f"problem line declares {C} clauses, found {len(clauses)}")
    return SatCase.from_clauses(clauses, V)


@dataclass(frozen=True)
class Assignment:
    """Signs ``h(1), ..., h(V)``."""

    values: tuple

    def __post_init__(self):
        if any(s not in (-1, 1) for s in self.values):
            raise RangeError("assignment values must be -1 or +1")

    @classmethod
    def parse(cls, text: str) -> "Assignment":
        lits = [int(a) for a in text.replace(",", " ").split() if a != "0"]
        if sorted(abs(a) for a in lits) != list(range(1, len(lits) + 1)):
            raise RangeError("assignment must list each variable 1..V exactly once")
        vals = [0] * len(lits)
        for a in lits:
            vals[abs(a) - 1] = 1 if a > 0 else -1
        return cls(tuple(vals))

    def __call__(self, v: int) -> int:
        return self.values[v - 1]

    def __len__(self):
        return len(self.values)

    def __str__(self):
        return " ".join(str(v * s) for v, s in enumerate(self.values, start=1))


def agreements(P: SatCase, h: Assignment, c: int) -> int:
    """Number of literals of clause ``c`` (1-based) made true by ``h``."""
    return sum(h(v) == s for v, s in zip(P.nu[c - 1], P.sigma[c - 1]))


def is_satisfied(P: SatCase, h: Assignment) -> bool:
    if len(h) != P.V:
        raise RangeError(f"assignment covers {len(h)} variables, case has {P.V}")
    return all(agreements(P, h, c) >= 1 for c in range(1, P.C + 1))


# -- variable gadget -----------------------------------------------------------

def variable_elements(V: int) -> tuple:
    return tuple(VarElem(v, s) for v in range(V + 2) for s in (-1, 1))


def build_m0(V: int) -> MidpointsStructure:
    if V < 1:
        raise RangeError("V must be positive")
    ground = GroundSet(variable_elements(V))
    n = ground.n
    mid = {}
    for i in range(n):
        lo = ground[i]
        for j in range(i + 1, n):
            hi = ground[j]
            if 2 * lo.v + lo.s == 2 * hi.v + hi.s and lo.v < hi.v:
                mid[i, j] = ground.mask(x for x in ground if x.v >= hi.v)
            else:
                mid[i, j] = 1 << j
    return MidpointsStructure(ground, mid)


# -- clause gadget ---------------------------------------------------------------

QE_ORDER = ((0, 0), (1, 0), (0, 1), (1, -1), (2, 0), (1, 1),
            (2, -1), (3, 0), (3, 1), (0, -1), (2, 1), (3, -1))
_QE_RANK = {qe: k for k, qe in enumerate(QE_ORDER)}


def mu(p: int, q: int, e: int) -> tuple:
    if not (0 <= p <= 3 and 0 <= q <= 3 and e in (-1, 0, 1)):
        raise RangeError(f"({p}, {q}, {e}) is not a gadget index")
    return ((p + e) % 4, (q + e) % 4, -e)


def qe_rank(q: int, e: int) -> int:
    return _QE_RANK[q, e]


def gadget_key(p: int, q: int, e: int) -> tuple:
    """Sort key of the gadget order.

    Blocks are ordered by p. Inside block p the twelve-step order is applied
    to the rotated coordinate ((p + q) mod 4, e), so every block is the
    block p = 0 relabelled; this is the order the leaf lengths of the
    explicit realization increase along.
    """
    return (p, _QE_RANK[(p + q) % 4, e])


def gadget_indices() -> list:
    return sorted(((p, q, e) for p in range(4) for q in range(4) for e in (-1, 0, 1)),
                  key=lambda y: gadget_key(*y))


def _gadget_midpoint(lo: tuple, hi: tuple) -> tuple:
    p1, q1, e1 = lo
    p, q, e = hi
    if p1 < p or (p1 == p and gadget_key(p1, q1, e1) < gadget_key(p, q, 0)) \
            or (p1 == p and q1 == q and e1 == 0 and e == 1):
        return (hi,)
    return (hi, mu(*hi))


def build_clause_gadget(c: int | None = None) -> MidpointsStructure:
    """The 48-element clause gadget, labelled by (p, q, e) or by ``x[c,p,q,e]``."""
    ys = gadget_indices()
    label = (lambda y: y) if c is None else (lambda y: GadgetElem(c, *y))
    ground = GroundSet(tuple(label(y) for y in ys))
    mid = {}
    for i, lo in enumerate(ys):
        for j in range(i + 1, len(ys)):
            mid[i, j] = ground.mask(label(y) for y in _gadget_midpoint(lo, ys[j]))
    return MidpointsStructure(ground, mid)


def f_image(P: SatCase, x) -> VarElem:
    """Image of an element of the encoding in the variable gadget."""
    if isinstance(x, VarElem):
        return x
    c, p, q, e = x
    nu, sg = P.nu[c - 1], P.sigma[c - 1]
    if e == 0:
        return VarElem(nu[q], -sg[q]) if q < 3 else VarElem(0, 1)
    a = q if e == -1 else (q + 1) % 4
    return VarElem(nu[a], sg[a]) if a < 3 else VarElem(P.V + 1, 1)


def build_f(P: SatCase) -> dict:
    """Clause index -> combining map from that clause's gadget into the variable gadget."""
    x0 = GroundSet(variable_elements(P.V))
    maps = {}
    for c in range(1, P.C + 1):
        src = GroundSet(tuple(GadgetElem(c, *y) for y in gadget_indices()))
        maps[c] = CombineMap(src, x0, {y: f_image(P, y) for y in src})
    return maps


def encode(P: SatCase) -> MidpointsStructure:
    """The structure m_P: |X| = 2V + 4 + 48C."""
    m = build_m0(P.V)
    for c, fc in build_f(P).items():
        step = CombineMap(fc.source, m.ground, fc.assignment)
        m = combine(m, build_clause_gadget(c), step)
    return m


def encoding_ground(P: SatCase) -> GroundSet:
    elems = variable_elements(P.V)
    for c in range(1, P.C + 1):
        elems += tuple(GadgetElem(c, *y) for y in gadget_indices())
    return GroundSet(elems)


class NamedSplits:
    """The blocks A_{v,s}, A_{>v}, A_{<v} of the encoding, as bitmasks."""

    def __init__(self, P: SatCase, ground: GroundSet | None = None):
        self.P = P
        self.ground = ground or encoding_ground(P)
        fibre = {}
        for i, x in enumerate(self.ground):
            key = f_image(P, x)
            fibre[key] = fibre.get(key, 0) | 1 << i
        self._fibre = fibre

    def A(self, v: int, s: int) -> int:
        if not (0 <= v <= self.P.V + 1 and s in (-1, 1)):
            raise RangeError(f"A[{v},{s}] is not defined")
        return self._fibre.get(VarElem(v, s), 0)

    def above(self, v: int) -> int:
        """A_{>v}."""
        return self._union(u for u in range(v + 1, self.P.V + 2))

    def below(self, v: int) -> int:
        """A_{<v}."""
        return self._union(u for u in range(0, v))

    def _union(self, vs) -> int:
        out = 0
        for u in vs:
            out |= self.A(u, 1) | self.A(u, -1)
        return out

    def doubleton(self, c: int, p: int, q: int, e: int) -> int:
        g = self.ground
        return g.mask([GadgetElem(c, p, q, e), GadgetElem(c, *mu(p, q, e))])

    def leaf(self, x) -> int:
        return 1 << self.ground.index(x)

    def partition(self, v: int, s: int) -> tuple:
        """Ordered partition (A_{v,s}, A_{v,-s}, A_{>v}, A_{<v})."""
        return (self.A(v, s), self.A(v, -s), self.above(v), self.below(v))


def tau(t: TreeMetric, v: int, s: int, names: NamedSplits) -> Fraction:
    """Alternating sum of open-interval path sums around the four blocks at variable v."""
    full = t.full
    blocks = names.partition(v, s)
    sup = t.support()
    for b in blocks:
        if t[b] <= 0 or not all(is_compatible(b, k, full) for k in sup):
            raise UnalignedEdgeError(f"block {b:#x} at variable {v} is not a positive tree edge")
    total = Fraction(0)
    for j in range(4):
        term = _interval_sum(t, blocks[j], blocks[(j + 1) % 4], False, False)
        total += term if j % 2 == 0 else -term
    return total


def extract_assignment(t: TreeMetric, P: SatCase, default: int = 1) -> Assignment:
    """h_t(v) = s when tau_{v,s} > 0; ``default`` when neither sign is positive."""
    names = NamedSplits(P, t.ground)
    vals = []
    for v in range(1, P.V + 1):
        if tau(t, v, 1, names) > 0:
            vals.append(1)
        elif tau(t, v, -1, names) > 0:
            vals.append(-1)
        else:
            vals.append(default)
    return Assignment(tuple(vals))


def audit_clause(t: TreeMetric, P: SatCase, c: int) -> tuple:
    """The three tau values at the literals of clause ``c`` and their sum."""
    names = NamedSplits(P, t.ground)
    vals = tuple(tau(t, v, s, names) for v, s in zip(P.nu[c - 1], P.sigma[c - 1]))
    return vals, sum(vals)


EXAMPLE_CASE = SatCase(4, 2, ((2, 3, 4), (1, 2, 3)), ((1, -1, 1), (1, 1, 1)))
