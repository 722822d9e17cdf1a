"""Construction of the bipartite incidence graphs D(k,q).

A point p and a line l of length k are incident when their coordinates
satisfy a triangular system: each position n >= 2 fixes l[n] - p[n] as a
product of one earlier coordinate with the free coordinate of the other
side.  Solving the system forward gives the unique neighbor of a vertex
for each choice of the partner's free coordinate, so the graph is
q-regular on 2*q^k vertices.

Vertex ids pack the coordinate tuple in base q, position 1 least
significant; points occupy ids 0..q^k-1 and lines the next q^k ids.
Adjacency is materialized in compressed sparse row form with every
neighbor list sorted ascending.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .coords import LINE, POINT, Vertex, b, d, dp, label_of, read_coord, s
from .field import FieldSpec, make_field

__all__ = [
    "DEFAULT_BUDGET",
    "DEFAULT_SEED",
    "BudgetError",
    "BipartiteGraph",
    "build",
    "encode",
    "decode",
    "line_through",
    "point_on",
    "incident",
    "concat_ranges",
]

DEFAULT_BUDGET = 1 << 26  # vertex cap; guards against accidental q^k blowups
DEFAULT_SEED = 0xD1C0DE


class BudgetError(ValueError):
    """Requested graph exceeds the vertex budget."""


@lru_cache(maxsize=None)
def _recipe(k: int) -> tuple[tuple[int, bool], ...]:
    """Per position n = 2..k: (position of the cross-term coordinate,
    True when it is taken from the point side, else from the line side)."""
    steps = []
    for n in range(2, k + 1):
        ref = n - 1 if n <= 3 else n - 2
        from_point = n == 2 or (n >= 4 and n % 4 in (0, 1))
        steps.append((ref, from_point))
    return tuple(steps)


def line_through(pt: Vertex, l1: int, spec: FieldSpec) -> Vertex:
    """The unique line with free coordinate l1 incident to the point."""
    p = pt.coords
    k = len(p)
    l = [l1]
    for ref, from_point in _recipe(k):
        cross = spec.mul(l1, p[ref - 1]) if from_point else spec.mul(l[ref - 1], p[0])
        l.append(spec.add(p[len(l)], cross))
    return Vertex(LINE, tuple(l))


def point_on(ln: Vertex, p1: int, spec: FieldSpec) -> Vertex:
    """The unique point with free coordinate p1 incident to the line."""
    l = ln.coords
    k = len(l)
    p = [p1]
    for ref, from_point in _recipe(k):
        cross = spec.mul(l[0], p[ref - 1]) if from_point else spec.mul(l[ref - 1], p[0])
        p.append(spec.sub(l[len(p)], cross))
    return Vertex(POINT, tuple(p))


def incident(pt: Vertex, ln: Vertex, spec: FieldSpec) -> bool:
    """True when every defining relation holds between the two tuples.

    Evaluated label by label through read_coord, so the boundary
    conventions supply the low-index factors; this is a separate route
    from the positional recipe used by the neighbor solvers.
    """
    k = len(pt.coords)
    if len(ln.coords) != k:
        raise ValueError("point and line must have equal length")
    p1 = pt.coords[0]
    l1 = ln.coords[0]
    for pos in range(2, k + 1):
        kind, i = label_of(pos)
        if kind == "d":
            rhs = spec.mul(l1, read_coord(pt, s(i - 1), spec))
        elif kind == "dp":
            rhs = spec.mul(read_coord(ln, b(i - 1), spec), p1)
        elif kind == "s":
            rhs = spec.mul(read_coord(ln, d(i), spec), p1)
        else:  # "b"
            rhs = spec.mul(l1, read_coord(pt, dp(i), spec))
        if spec.sub(ln.coords[pos - 1], pt.coords[pos - 1]) != rhs:
            return False
    return True


def encode(v: Vertex, k: int, q: int) -> int:
    """Integer id of a vertex: base-q coordinates plus a side offset."""
    if len(v.coords) != k:
        raise ValueError(f"expected {k} coordinates, got {len(v.coords)}")
    n = 0
    for c in reversed(v.coords):
        if not 0 <= c < q:
            raise ValueError(f"coordinate {c} outside 0..{q - 1}")
        n = n * q + c
    return n + (q**k if v.side == LINE else 0)


def decode(vid: int, k: int, q: int) -> Vertex:
    n = q**k
    if not 0 <= vid < 2 * n:
        raise ValueError(f"vertex id {vid} outside 0..{2 * n - 1}")
    side, rest = divmod(vid, n)
    coords = []
    for _ in range(k):
        rest, c = divmod(rest, q)
        coords.append(c)
    return Vertex(side, tuple(coords))


def concat_ranges(starts: np.ndarray, counts: np.ndarray) -> np.ndarray:
    """Indices [s0..s0+c0) ++ [s1..s1+c1) ++ ..., as one flat array."""
    total = int(counts.sum())
    if total == 0:
        return np.empty(0, dtype=np.int64)
    ends = np.cumsum(counts)
    out = np.arange(total, dtype=np.int64)
    out += np.repeat(starts - (ends - counts), counts)
    return out


@dataclass(frozen=True)
class BipartiteGraph:
    """Immutable CSR adjacency over integer vertex ids, points first."""

    k: int
    q: int
    field: FieldSpec
    n_points: int
    n_lines: int
    indptr: np.ndarray
    indices: np.ndarray
    requested_k: int | None = None  # set when k=1 was aliased to k=2
    vertex_map: np.ndarray | None = None  # new id -> original id, for extracts

    @property
    def n_vertices(self) -> int:
        return self.n_points + self.n_lines

    @property
    def edge_count(self) -> int:
        return self.indices.size // 2

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v] : self.indptr[v + 1]]

    def degree(self, v: int) -> int:
        return int(self.indptr[v + 1] - self.indptr[v])

    def original_ids(self, ids) -> np.ndarray:
        """Map ids of this graph back to ids of the graph it was cut from."""
        ids = np.asarray(ids, dtype=np.int64)
        return ids if self.vertex_map is None else self.vertex_map[ids]

    def edges(self) -> tuple[np.ndarray, np.ndarray]:
        """All edges as (point ids, line ids), ascending (point, line)."""
        counts = np.diff(self.indptr[: self.n_points + 1])
        pid = np.repeat(np.arange(self.n_points, dtype=np.int64), counts)
        lid = self.indices[: self.indptr[self.n_points]]
        return pid, lid

    def side_of(self, v: int) -> int:
        return POINT if v < self.n_points else LINE

    def decode_vertex(self, v: int) -> Vertex:
        """Coordinates of a vertex, resolving extract relabeling."""
        orig = int(self.original_ids(v))
        return decode(orig, self.k, self.q)


def assemble(
    n_points: int,
    n_lines: int,
    pid: np.ndarray,
    lid: np.ndarray,
    *,
    k: int,
    q: int,
    field: FieldSpec,
    requested_k: int | None = None,
) -> BipartiteGraph:
    """CSR assembly from an edge list given as parallel (pid, lid) arrays."""
    n = n_points + n_lines
    deg = np.bincount(pid, minlength=n_points)
    deg_l = np.bincount(lid - n_points, minlength=n_lines)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.concatenate([deg, deg_l]), out=indptr[1:])
    order_p = np.lexsort((lid, pid))
    order_l = np.lexsort((pid, lid))
    indices = np.concatenate([lid[order_p], pid[order_l]])
    indptr.flags.writeable = False
    indices.flags.writeable = False
    return BipartiteGraph(
        k=k,
        q=q,
        field=field,
        n_points=n_points,
        n_lines=n_lines,
        indptr=indptr,
        indices=indices,
        requested_k=requested_k,
    )


def build(
    k: int,
    q: int,
    *,
    spec: FieldSpec | None = None,
    modulus=None,
    budget: int | None = DEFAULT_BUDGET,
) -> BipartiteGraph:
    """Materialize D(k,q).  k = 1 is an alias for k = 2.

    Deterministic: for each point id ascending, neighbors are generated
    by free-coordinate index 0..q-1, then adjacency is finalized sorted.
    Raises BudgetError when 2*q^k exceeds the vertex budget.
    """
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    requested = k if k == 1 else None
    k = max(k, 2)
    if spec is None:
        spec = make_field(q, modulus)
    if spec.q != q:
        raise ValueError("field order does not match q")
    n = q**k
    if budget is not None and 2 * n > budget:
        raise BudgetError(
            f"D({k},{q}) needs {2 * n} vertices, over the budget of {budget}; "
            "raise the budget (--force) to proceed"
        )

    ids = np.arange(n, dtype=np.int64)
    # stored coordinate at each position, for every point at once
    P = [(ids // q**j) % q for j in range(k)]
    nbr = np.empty((n, q), dtype=np.int64)
    recipe = _recipe(k)
    for a in range(q):
        L = [np.full(n, a, dtype=np.int64)]
        for step, (ref, from_point) in enumerate(recipe):
            pos = step + 2
            if from_point:
                cross = spec.vmul(a, P[ref - 1])
            else:
                cross = spec.vmul(L[ref - 1], P[0])
            L.append(spec.vadd(P[pos - 1], cross))
        lid = np.zeros(n, dtype=np.int64)
        for j in range(k - 1, -1, -1):
            lid = lid * q + L[j]
        nbr[:, a] = lid + n

    nbr.sort(axis=1)
    point_indices = nbr.reshape(-1)
    counts = np.bincount(point_indices - n, minlength=n)
    if not (counts == q).all():
        raise AssertionError("line side is not q-regular; solver recipe is broken")
    pid_all = np.repeat(ids, q)
    order = np.argsort(point_indices, kind="stable")  # keeps point ids ascending
    line_indices = pid_all[order]
    indices = np.concatenate([point_indices, line_indices])
    indptr = np.arange(2 * n + 1, dtype=np.int64) * q
    indptr.flags.writeable = False
    indices.flags.writeable = False
    return BipartiteGraph(
        k=k,
        q=q,
        field=spec,
        n_points=n,
        n_lines=n,
        indptr=indptr,
        indices=indices,
        requested_k=requested,
    )
