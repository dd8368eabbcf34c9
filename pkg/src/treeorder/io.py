"""Line-oriented text formats for structures, trees, reports and census tables.

Every file starts with a header naming the format and its version. Element
lines ``e <index> <label>`` list the ground set in order; later records
refer to elements by index. Numbers are exact integers or ``p/q`` ratios.

Midpoints structure::

    midpoints-structure 1
    n 3
    e 0 a
    e 1 b
    e 2 c
    m 0 1 : 1
    m 0 2 : 1 2
    m 1 2 : 2

Triples structure (one ``t z a b`` line per anchor and unordered pair,
meaning ``a <_z b``)::

    triples-structure 1
    n 3
    e 0 a
    ...
    t 0 0 1

Tree metric (one record per split, canonical side, then its length)::

    tree-metric 1
    n 3
    e 0 a
    ...
    s 1 : 2
    s 2 : 7/2
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable

import numpy as np

from .errors import FormatError, InvalidInputError
from .ground import GroundSet, iter_bits, parse_label
from .oracle import Census
from .splits import RealizationReport, TreeMetric, canonical
from .structures import MidpointsStructure, TriplesStructure

MIDPOINTS_HEADER = "midpoints-structure 1"
TRIPLES_HEADER = "triples-structure 1"
TREE_HEADER = "tree-metric 1"
REPORT_HEADER = "realization-report 1"


def format_number(value) -> str:
    value = Fraction(value)
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


def parse_number(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise FormatError(f"not an exact number: {text!r}") from None


def _ground_lines(ground: GroundSet) -> list:
    return [f"n {ground.n}"] + [f"e {i} {x}" for i, x in enumerate(ground)]


def _indices(mask: int) -> str:
    return " ".join(map(str, iter_bits(mask)))


class _Reader:
    """Splits a file into its header, ground set and remaining records."""

    def __init__(self, text: str, header: str):
        lines = [ln.strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln and not ln.startswith("#")]
        if not lines or lines[0] != header:
            found = lines[0] if lines else "empty file"
            raise FormatError(f"expected header {header!r}, found {found!r}")
        body = lines[1:]
        if not body or not body[0].startswith("n "):
            raise FormatError("missing element count line 'n <count>'")
        n = self._int(body[0].split()[1])
        labels = []
        for k, line in enumerate(body[1:n + 1]):
            parts = line.split(maxsplit=2)
            if len(parts) != 3 or parts[0] != "e" or self._int(parts[1]) != k:
                raise FormatError(f"expected element line 'e {k} <label>', got {line!r}")
            labels.append(parse_label(parts[2]))
        if len(labels) != n:
            raise FormatError(f"declared {n} elements, found {len(labels)}")
        self.ground = GroundSet(tuple(labels))
        self.records = body[n + 1:]

    @staticmethod
    def _int(tok: str) -> int:
        try:
            return int(tok)
        except ValueError:
            raise FormatError(f"expected an integer, got {tok!r}") from None

    def index(self, tok: str) -> int:
        i = self._int(tok)
        if not 0 <= i < self.ground.n:
            raise FormatError(f"element index {i} out of range")
        return i

    def mask(self, toks: Iterable[str]) -> int:
        out = 0
        for tok in toks:
            out |= 1 << self.index(tok)
        return out


def dump_midpoints(m: MidpointsStructure) -> str:
    lines = [MIDPOINTS_HEADER] + _ground_lines(m.ground)
    lines += [f"m {i} {j} : {_indices(mask)}" for (i, j), mask in m.pairs()]
    return "\n".join(lines) + "\n"


def load_midpoints(text: str) -> MidpointsStructure:
    r = _Reader(text, MIDPOINTS_HEADER)
    mid = {}
    for line in r.records:
        head, sep, tail = line.partition(":")
        parts = head.split()
        if not sep or len(parts) != 3 or parts[0] != "m":
            raise FormatError(f"bad midpoint record {line!r}")
        i, j = r.index(parts[1]), r.index(parts[2])
        if i >= j:
            raise FormatError(f"pair indices must satisfy i < j: {line!r}")
        if (i, j) in mid:
            raise FormatError(f"pair ({i}, {j}) listed twice")
        mid[i, j] = r.mask(tail.split())
    return MidpointsStructure(r.ground, mid)


def dump_triples(rel: TriplesStructure) -> str:
    lines = [TRIPLES_HEADER] + _ground_lines(rel.ground)
    c = rel.closer
    n = rel.ground.n
    for z in range(n):
        for a in range(n):
            for b in range(a + 1, n):
                lo, hi = (a, b) if c[z, a, b] else (b, a)
                lines.append(f"t {z} {lo} {hi}")
    return "\n".join(lines) + "\n"


def load_triples(text: str) -> TriplesStructure:
    r = _Reader(text, TRIPLES_HEADER)
    n = r.ground.n
    closer = np.zeros((n, n, n), dtype=bool)
    for line in r.records:
        parts = line.split()
        if len(parts) != 4 or parts[0] != "t":
            raise FormatError(f"bad triple record {line!r}")
        z, a, b = (r.index(p) for p in parts[1:])
        closer[z, a, b] = True
    return TriplesStructure(r.ground, closer)


def dump_tree(t: TreeMetric) -> str:
    lines = [TREE_HEADER] + _ground_lines(t.ground)
    lines += [f"s {_indices(mask)} : {format_number(v)}" for mask, v in t.items()]
    return "\n".join(lines) + "\n"


def load_tree(text: str, ground: GroundSet | None = None) -> TreeMetric:
    """Read a tree file; when ``ground`` is given the file must list the same elements."""
    r = _Reader(text, TREE_HEADER)
    if ground is not None and r.ground != ground:
        raise InvalidInputError("tree file lists a different ground set")
    lengths = {}
    for line in r.records:
        head, sep, tail = line.partition(":")
        parts = head.split()
        if not sep or not parts or parts[0] != "s" or len(tail.split()) != 1:
            raise FormatError(f"bad split record {line!r}")
        key = canonical(r.mask(parts[1:]), r.ground.full)
        value = parse_number(tail.strip())
        if key in lengths and lengths[key] != value:
            raise FormatError(f"split listed twice with different lengths: {line!r}")
        lengths[key] = value
    return TreeMetric(r.ground, lengths)


def dump_report(report: RealizationReport, only_violations: bool = False) -> str:
    """Per ordered pair: indices, canonical midpoint side, LHS, RHS, slack and verdict."""
    lines = [REPORT_HEADER, *("# " + ln for ln in report.summary().splitlines()),
             "# x y : lhs rhs slack verdict"]
    for c in report.checks:
        if only_violations and c.ok:
            continue
        verdict = "ok" if c.ok else "VIOLATED"
        if not c.aligned:
            verdict += " UNALIGNED_EDGE"
        lines.append(f"{c.x} {c.y} : {format_number(c.lhs)} {format_number(c.rhs)} "
                     f"{format_number(c.slack)} {verdict}")
    return "\n".join(lines) + "\n"


def census_table(rows: Iterable[Census]) -> str:
    lines = ["n\texamined\trealizable\tseconds"]
    lines += [c.row() for c in rows]
    return "\n".join(lines) + "\n"
