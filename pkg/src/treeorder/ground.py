"""Ordered ground sets and the structured element identifiers used by the reduction."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable, NamedTuple

from .errors import InvalidInputError


class VarElem(NamedTuple):
    """Variable-gadget element ``x[v,s]``."""

    v: int
    s: int

    def __str__(self):
        return f"x[{self.v},{self.s}]"


class GadgetElem(NamedTuple):
    """Clause-gadget element ``x[c,p,q,e]``."""

    c: int
    p: int
    q: int
    e: int

    def __str__(self):
        return f"x[{self.c},{self.p},{self.q},{self.e}]"


def parse_label(text: str) -> Hashable:
    """Inverse of ``str`` for structured and integer labels; anything else stays a string."""
    if text.lstrip("-").isdigit():
        return int(text)
    if text.startswith("x[") and text.endswith("]"):
        try:
            parts = tuple(int(p) for p in text[2:-1].split(","))
        except ValueError:
            return text
        if len(parts) == 2:
            return VarElem(*parts)
        if len(parts) == 4:
            return GadgetElem(*parts)
    return text


@dataclass(frozen=True)
class GroundSet:
    """Totally ordered finite set; index 0 is the least element."""

    elements: tuple
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        elements = tuple(self.elements)
        object.__setattr__(self, "elements", elements)
        index = {x: i for i, x in enumerate(elements)}
        if len(index) != len(elements):
            raise InvalidInputError("ground set identifiers must be unique")
        if len(elements) < 2:
            raise InvalidInputError("ground set needs at least two elements")
        object.__setattr__(self, "_index", index)

    @classmethod
    def of(cls, elements: Iterable) -> "GroundSet":
        return cls(tuple(elements))

    @classmethod
    def range(cls, n: int) -> "GroundSet":
        return cls(tuple(range(n)))

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return x in self._index

    def __getitem__(self, i):
        return self.elements[i]

    def index(self, x) -> int:
        try:
            return self._index[x]
        except KeyError:
            raise InvalidInputError(f"{x!r} is not in the ground set") from None

    @property
    def n(self) -> int:
        return len(self.elements)

    @property
    def full(self) -> int:
        return (1 << len(self.elements)) - 1

    def mask(self, xs: Iterable) -> int:
        m = 0
        for x in xs:
            m |= 1 << self.index(x)
        return m

    def members(self, mask: int) -> frozenset:
        return frozenset(self.elements[i] for i in iter_bits(mask))

    def concat(self, other: "GroundSet") -> "GroundSet":
        return GroundSet(self.elements + other.elements)


def iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low
