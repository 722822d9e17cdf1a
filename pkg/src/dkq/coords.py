"""Coordinate labels for length-k point and line tuples.

A vertex tuple packs one free coordinate followed by blocks of diagonal,
primed-diagonal, superdiagonal and subdiagonal entries.  The 1-based
position layout is

    1: first    2: d_1    3: s_1    4: b_1
    then for i >= 2:  d_i at 4i-3, dp_i at 4i-2, s_i at 4i-1, b_i at 4i

where d_i stands for the entry u_{i,i}, dp_i for u'_{i,i}, s_i for
u_{i,i+1} and b_i for u_{i+1,i}.  dp_1 has no slot of its own, it reads
as d_1.  Out-of-range and boundary labels resolve to fixed conventional
values, see read_coord.
"""

from __future__ import annotations

from typing import NamedTuple

__all__ = [
    "POINT",
    "LINE",
    "Label",
    "Vertex",
    "FIRST",
    "d",
    "dp",
    "s",
    "b",
    "position_of",
    "label_of",
    "read_coord",
    "t_of",
]

POINT = 0
LINE = 1

_BLOCK = ("d", "dp", "s", "b")


class Label(NamedTuple):
    kind: str  # "first", "d", "dp", "s" or "b"
    i: int = 0

    def text(self) -> str:
        return self.kind if self.kind == "first" else f"{self.kind}_{self.i}"


FIRST = Label("first", 1)  # the subscript on the first coordinate is 1


def d(i: int) -> Label:
    return Label("d", i)


def dp(i: int) -> Label:
    return Label("dp", i)


def s(i: int) -> Label:
    return Label("s", i)


def b(i: int) -> Label:
    return Label("b", i)


class Vertex(NamedTuple):
    side: int  # POINT or LINE
    coords: tuple[int, ...]


def position_of(label: Label, k: int) -> int | None:
    """1-based position of a label, or None when it has no slot in 1..k."""
    kind, i = label
    if kind == "first":
        pos = 1
    elif kind not in _BLOCK:
        raise ValueError(f"unknown label kind {kind!r}")
    elif i == 1:
        if kind == "dp":
            return None  # aliased to d_1, no slot of its own
        pos = {"d": 2, "s": 3, "b": 4}[kind]
    elif i >= 2:
        pos = 4 * i - 3 + _BLOCK.index(kind)
    else:
        return None  # boundary labels (i <= 0) have no slot
    return pos if pos <= k else None


def label_of(pos: int) -> Label:
    """Inverse of position_of on positions >= 1."""
    if pos < 1:
        raise ValueError(f"positions are 1-based, got {pos}")
    if pos == 1:
        return FIRST
    if pos <= 4:
        return Label(("d", "s", "b")[pos - 2], 1)
    block, r = divmod(pos + 3, 4)
    return Label(_BLOCK[r], block)


def read_coord(v: Vertex, label: Label, spec) -> int:
    """Value of a labeled coordinate, applying the boundary conventions.

    Stored slots read as stored.  Boundary labels resolve to: d_0 = -1,
    dp_0 = 1, s_0 = the free coordinate on points and 0 on lines, b_0 the
    mirror of that on lines, dp_1 = d_1.  Labels with a negative index or
    with a slot beyond k read as 0.
    """
    kind, i = label
    if kind != "first" and i < 0:
        return 0
    if kind == "first":
        return v.coords[0]
    if i == 0:
        if kind == "d":
            return spec.neg(1)
        if kind == "dp":
            return 1
        if kind == "s":
            return v.coords[0] if v.side == POINT else 0
        return v.coords[0] if v.side == LINE else 0  # kind == "b"
    if kind == "dp" and i == 1:
        return v.coords[1]
    pos = position_of(label, len(v.coords))
    return 0 if pos is None else v.coords[pos - 1]


def t_of(k: int) -> int:
    """Length cap of the conserved vector: floor((k+2)/4)."""
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    return (k + 2) // 4
