"""Connected components and the per-vertex conserved vector.

Every vertex u carries a vector (a_2, ..., a_t), t = floor((k+2)/4),
where a_r is a fixed quadratic expression in the coordinates of u read
through the boundary conventions.  The vector takes equal values at the
two ends of every edge, hence is constant on connected components, and
every value in GF(q)^(t-1) is realized by an explicit witness point, so
the graph has at least q^(t-1) components.

Component ids are canonical: the component of vertex 0 (the all-zero
point) gets id 0 and the rest follow in order of their smallest vertex.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components as _scipy_components

from .builder import DEFAULT_SEED, BipartiteGraph, concat_ranges
from .coords import LINE, POINT, Vertex, b, d, dp, position_of, read_coord, s, t_of
from .field import FieldSpec

__all__ = [
    "ComponentLabeling",
    "invariant_a",
    "invariant_vector",
    "invariant_table",
    "witness_point",
    "components",
    "extract_component",
]

# graphs at most this big get the exhaustive invariant-constancy check
EXHAUSTIVE_LIMIT = 10**6
SAMPLE_SIZE = 10**4


def invariant_a(u: Vertex, r: int, spec: FieldSpec) -> int:
    """The r-th conserved coordinate combination of a vertex.

    a_r = sum over i = 0..r of (d_i * dp_{r-i} - s_i * b_{r-i-1}), with
    every factor read through the boundary conventions.
    """
    k = len(u.coords)
    t = t_of(k)
    if not 2 <= r <= t:
        raise ValueError(f"r must lie in 2..{t}, got {r}")
    acc = 0
    for i in range(r + 1):
        acc = spec.add(acc, spec.mul(read_coord(u, d(i), spec), read_coord(u, dp(r - i), spec)))
        acc = spec.sub(acc, spec.mul(read_coord(u, s(i), spec), read_coord(u, b(r - i - 1), spec)))
    return acc


def invariant_vector(u: Vertex, spec: FieldSpec) -> tuple[int, ...]:
    """(a_2, ..., a_t); empty when t <= 1."""
    t = t_of(len(u.coords))
    return tuple(invariant_a(u, r, spec) for r in range(2, t + 1))


def witness_point(c: Sequence[int], k: int, spec: FieldSpec) -> Vertex:
    """The point realizing conserved vector c: all zero except dp_i = -c_i."""
    t = t_of(k)
    if len(c) != max(t - 1, 0):
        raise ValueError(f"expected {max(t - 1, 0)} values, got {len(c)}")
    coords = [0] * k
    for i, ci in enumerate(c, start=2):
        coords[position_of(dp(i), k) - 1] = spec.neg(ci)
    return Vertex(POINT, tuple(coords))


def _vec_coord(spec, side: int, digit, label, k: int):
    """read_coord over a whole array of same-side vertices.

    digit(pos) returns the stored coordinate array at a 1-based position.
    Scalars stand in for constant columns and broadcast downstream.
    """
    kind, i = label
    if kind != "first" and i < 0:
        return 0
    if kind == "first":
        return digit(1)
    if i == 0:
        if kind == "d":
            return spec.neg(1)
        if kind == "dp":
            return 1
        if kind == "s":
            return digit(1) if side == POINT else 0
        return digit(1) if side == LINE else 0
    if kind == "dp" and i == 1:
        return digit(2)
    pos = position_of(label, k)
    return 0 if pos is None else digit(pos)


def _invariant_block(g: BipartiteGraph, side: int, orig_ids: np.ndarray) -> np.ndarray:
    """Conserved vectors for same-side vertices given original ids."""
    spec = g.field
    q, k = g.q, g.k
    t = t_of(k)
    local = orig_ids - (q**k if side == LINE else 0)

    def digit(pos: int) -> np.ndarray:
        return (local // q ** (pos - 1)) % q

    out = np.zeros((local.size, max(t - 1, 0)), dtype=np.int64)
    for col, r in enumerate(range(2, t + 1)):
        acc = np.zeros(local.size, dtype=np.int64)
        for i in range(r + 1):
            term = spec.vmul(
                _vec_coord(spec, side, digit, d(i), k),
                _vec_coord(spec, side, digit, dp(r - i), k),
            )
            acc = spec.vadd(acc, term)
            term = spec.vmul(
                _vec_coord(spec, side, digit, s(i), k),
                _vec_coord(spec, side, digit, b(r - i - 1), k),
            )
            acc = spec.vsub(acc, term)
        out[:, col] = acc
    return out


def invariant_table(g: BipartiteGraph, ids: np.ndarray | None = None) -> np.ndarray:
    """Conserved vectors for the given vertex ids (default: all), vectorized.

    Matches invariant_vector row by row; kept separate so the scalar
    formula can cross-check this bulk evaluator.
    """
    if ids is None:
        ids = np.arange(g.n_vertices, dtype=np.int64)
    else:
        ids = np.asarray(ids, dtype=np.int64)
    orig = g.original_ids(ids)
    t = t_of(g.k)
    out = np.zeros((ids.size, max(t - 1, 0)), dtype=np.int64)
    point_mask = ids < g.n_points
    if point_mask.any():
        out[point_mask] = _invariant_block(g, POINT, orig[point_mask])
    if (~point_mask).any():
        out[~point_mask] = _invariant_block(g, LINE, orig[~point_mask])
    return out


@dataclass(frozen=True)
class ComponentLabeling:
    labels: np.ndarray  # component id per vertex id
    n_components: int
    orders: np.ndarray  # vertex count per component
    sizes: np.ndarray  # edge count per component
    invariants: tuple[tuple[int, ...], ...]  # conserved vector per component

    def component_of(self, vid: int) -> int:
        return int(self.labels[vid])


def components(
    g: BipartiteGraph,
    *,
    seed: int = DEFAULT_SEED,
    check_limit: int = EXHAUSTIVE_LIMIT,
) -> ComponentLabeling:
    """Exact component labeling with canonical ids and per-component stats.

    The conserved vector of each component is taken from its smallest
    vertex and re-checked across the component, exhaustively up to
    check_limit vertices and on a seeded sample beyond that; a mismatch
    is an implementation bug and raises RuntimeError.
    """
    n = g.n_vertices
    adj = csr_matrix(
        (np.ones(g.indices.size, dtype=np.uint8), g.indices, g.indptr), shape=(n, n)
    )
    n_comp, raw = _scipy_components(adj, directed=False)
    _, first = np.unique(raw, return_index=True)
    relabel = np.empty(n_comp, dtype=np.int64)
    relabel[np.argsort(first)] = np.arange(n_comp)
    labels = relabel[raw]

    orders = np.bincount(labels, minlength=n_comp)
    point_counts = np.bincount(labels[: g.n_points], minlength=n_comp)
    sizes = point_counts * g.q  # each point keeps all q edges inside its component

    reps = np.sort(first)  # smallest vertex of each component, in new-id order
    spec = g.field
    invariants = tuple(
        invariant_vector(g.decode_vertex(int(r)), spec) for r in reps
    )

    t = t_of(g.k)
    if t >= 2:
        if n <= check_limit:
            ids = np.arange(n, dtype=np.int64)
        else:
            rng = np.random.default_rng(seed)
            ids = rng.integers(0, n, size=SAMPLE_SIZE, dtype=np.int64)
        table = invariant_table(g, ids)
        expected = np.asarray(invariants, dtype=np.int64)[labels[ids]]
        if not np.array_equal(table, expected):
            bad = int(ids[np.flatnonzero((table != expected).any(axis=1))[0]])
            raise RuntimeError(
                f"conserved vector varies inside a component (vertex {bad}); "
                "this indicates a builder or invariant bug"
            )

    labels.flags.writeable = False
    orders.flags.writeable = False
    sizes.flags.writeable = False
    return ComponentLabeling(
        labels=labels,
        n_components=int(n_comp),
        orders=orders,
        sizes=sizes,
        invariants=invariants,
    )


def extract_component(
    g: BipartiteGraph, labeling: ComponentLabeling, selector="zero"
) -> tuple[BipartiteGraph, np.ndarray]:
    """Induced subgraph of one component, densely relabeled points-first.

    Returns (subgraph, new-to-old id map).  selector is a component id or
    "zero" for the component of the all-zero point.
    """
    if selector == "zero":
        cid = int(labeling.labels[0])
    else:
        cid = int(selector)
        if not 0 <= cid < labeling.n_components:
            raise ValueError(f"no component {cid}; have 0..{labeling.n_components - 1}")
    mask = labeling.labels == cid
    old_of_new = np.flatnonzero(mask).astype(np.int64)  # points first: ids ascend
    pn = int(mask[: g.n_points].sum())
    ln = old_of_new.size - pn
    new_of_old = np.full(g.n_vertices, -1, dtype=np.int64)
    new_of_old[old_of_new] = np.arange(old_of_new.size)

    counts = g.indptr[old_of_new + 1] - g.indptr[old_of_new]
    gather = concat_ranges(g.indptr[old_of_new], counts)
    indices = new_of_old[g.indices[gather]]
    if (indices < 0).any():
        raise AssertionError("component labeling is not edge-closed")
    indptr = np.zeros(old_of_new.size + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])

    vm = g.original_ids(old_of_new)
    indptr.flags.writeable = False
    indices.flags.writeable = False
    sub = BipartiteGraph(
        k=g.k,
        q=g.q,
        field=g.field,
        n_points=pn,
        n_lines=ln,
        indptr=indptr,
        indices=indices,
        requested_k=g.requested_k,
        vertex_map=vm,
    )
    return sub, old_of_new
