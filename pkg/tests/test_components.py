"""Conserved invariants, component labeling, witnesses, extraction."""

import numpy as np
import pytest

from dkq import (
    LINE,
    POINT,
    Vertex,
    build,
    components,
    encode,
    extract_component,
    invariant_a,
    invariant_table,
    invariant_vector,
    make_field,
    t_of,
    witness_point,
)
from dkq.builder import assemble
from oracles import dsu_labels, oracle_invariant

GF3 = make_field(3)


# -- invariant evaluation ----------------------------------------------------


def test_invariant_zero_vertex():
    for k in (6, 10, 14):
        z = Vertex(POINT, (0,) * k)
        assert invariant_vector(z, GF3) == (0,) * (t_of(k) - 1)


def test_invariant_k6_hand_formula():
    # expanding the sum for r = 2 on six coordinates:
    # points: a_2 = -dp2 - first*b1 + d1^2 + d2
    # lines:  a_2 = -dp2 - s1*first + d1^2 + d2
    rng = np.random.default_rng(4)
    for q in (3, 4, 5, 9):
        spec = make_field(q)
        for _ in range(100):
            c = [int(x) for x in rng.integers(0, q, size=6)]
            first, d1, s1, b1, d2, dp2 = c
            pt = Vertex(POINT, tuple(c))
            want = spec.sub(
                spec.add(spec.sub(spec.neg(dp2), spec.mul(first, b1)), spec.mul(d1, d1)),
                spec.neg(d2),
            )
            assert invariant_a(pt, 2, spec) == want
            ln = Vertex(LINE, tuple(c))
            want_l = spec.sub(
                spec.add(spec.sub(spec.neg(dp2), spec.mul(s1, first)), spec.mul(d1, d1)),
                spec.neg(d2),
            )
            assert invariant_a(ln, 2, spec) == want_l


def test_invariant_matches_literal_oracle():
    rng = np.random.default_rng(5)
    for k, q in [(6, 2), (7, 3), (10, 2), (10, 3), (11, 2), (14, 3), (19, 2)]:
        spec = make_field(q)
        for _ in range(60):
            side = int(rng.integers(0, 2))
            coords = tuple(int(x) for x in rng.integers(0, q, size=k))
            v = Vertex(side, coords)
            assert invariant_vector(v, spec) == oracle_invariant(coords, side, spec)


def test_invariant_r_out_of_range():
    v = Vertex(POINT, (0,) * 6)  # t = 2
    with pytest.raises(ValueError):
        invariant_a(v, 1, GF3)
    with pytest.raises(ValueError):
        invariant_a(v, 3, GF3)


def test_invariant_vector_lengths():
    assert invariant_vector(Vertex(POINT, (1, 2, 0, 1, 2)), GF3) == ()  # k=5, t=1
    assert invariant_vector(Vertex(POINT, (0,) * 10), GF3) == (0, 0)  # k=10, t=3


def test_invariant_table_matches_scalar():
    g = build(10, 2)
    ids = np.arange(0, g.n_vertices, 17)
    table = invariant_table(g, ids)
    for row, vid in zip(table.tolist(), ids.tolist()):
        assert tuple(row) == invariant_vector(g.decode_vertex(vid), g.field)


# -- witness points ----------------------------------------------------------


def test_witness_zero_vector_is_zero_point():
    assert witness_point((0,), 6, GF3) == Vertex(POINT, (0,) * 6)


def test_witness_spot_k6_gf3():
    # -1 = 2 in GF(3); the dp_2 slot is position 6
    assert witness_point((1,), 6, GF3) == Vertex(POINT, (0, 0, 0, 0, 0, 2))


def test_witness_realizes_every_vector_k10_gf3():
    seen = set()
    for c in [(a, b) for a in range(3) for b in range(3)]:
        w = witness_point(c, 10, GF3)
        assert invariant_vector(w, GF3) == c
        seen.add(w.coords)
    assert len(seen) == 9


def test_witness_length_mismatch():
    with pytest.raises(ValueError):
        witness_point((1, 2), 6, GF3)  # t-1 = 1
    with pytest.raises(ValueError):
        witness_point((), 10, GF3)  # t-1 = 2


# -- component labeling ------------------------------------------------------


@pytest.mark.parametrize("k,q", [(2, 3), (3, 2), (6, 2), (6, 3), (7, 2), (10, 2)])
def test_components_match_union_find(k, q):
    g = build(k, q)
    pid, lid = g.edges()
    lab = components(g)
    assert lab.labels.tolist() == dsu_labels(g.n_vertices, pid, lid)


def test_components_counts_and_sums():
    g = build(6, 3)
    lab = components(g)
    assert lab.n_components == 3
    assert int(lab.orders.sum()) == 2 * 3**6
    assert int(lab.sizes.sum()) == 3**7
    assert lab.orders.tolist() == [486, 486, 486]
    assert lab.sizes.tolist() == [729, 729, 729]


def test_component_ids_canonical():
    g = build(10, 2)
    lab = components(g)
    assert lab.n_components == 128
    assert int(lab.labels[0]) == 0  # the zero point's component is id 0
    mins = [int(np.flatnonzero(lab.labels == c).min()) for c in range(lab.n_components)]
    assert mins == sorted(mins)


def test_component_invariants_recorded():
    g = build(6, 2)
    lab = components(g)
    assert lab.n_components == 8
    for cid in range(8):
        member = int(np.flatnonzero(lab.labels == cid)[0])
        assert lab.invariants[cid] == invariant_vector(g.decode_vertex(member), g.field)
    # witnesses hit distinct components, so both invariant values occur
    assert {iv for iv in lab.invariants} == {(0,), (1,)}


def test_measured_component_counts():
    # exact counts, frozen after the first measurement
    for (k, q), n in [((6, 2), 8), ((6, 3), 3), ((7, 2), 16), ((7, 3), 3), ((10, 2), 128)]:
        assert components(build(k, q)).n_components == n
        assert n >= q ** (t_of(k) - 1)


def test_conservation_detector_triggers_on_forged_edge():
    # an "edge" joining vertices with different invariants must be caught
    q, k = 2, 6
    n = q**k
    bad_line = encode(Vertex(LINE, (0, 0, 0, 0, 0, 1)), k, q)  # invariant (1,)
    pid = np.array([0], dtype=np.int64)  # zero point, invariant (0,)
    lid = np.array([bad_line], dtype=np.int64)
    forged = assemble(n, n, pid, lid, k=k, q=q, field=make_field(q))
    with pytest.raises(RuntimeError):
        components(forged)


# -- extraction --------------------------------------------------------------


def test_extract_connected_graph_is_identity():
    g = build(3, 3)
    lab = components(g)
    sub, old_of_new = extract_component(g, lab, "zero")
    assert np.array_equal(sub.indptr, g.indptr)
    assert np.array_equal(sub.indices, g.indices)
    assert old_of_new.tolist() == list(range(g.n_vertices))


def test_extract_zero_component_d63():
    g = build(6, 3)
    lab = components(g)
    sub, old_of_new = extract_component(g, lab)
    assert sub.n_vertices == 2 * 3**6 // 3 == 486
    assert sub.n_points == sub.n_lines == 243
    degs = np.diff(sub.indptr)
    assert degs.min() == degs.max() == 3
    # mapping is points-first and order-preserving
    assert (np.diff(old_of_new[: sub.n_points]) > 0).all()
    assert (np.diff(old_of_new[sub.n_points :]) > 0).all()
    assert (old_of_new[: sub.n_points] < g.n_points).all()
    assert (old_of_new[sub.n_points :] >= g.n_points).all()
    # edges of the extract are edges of the parent
    pid, lid = sub.edges()
    parent_edges = set(zip(*[a.tolist() for a in g.edges()]))
    for p, l in zip(old_of_new[pid].tolist(), old_of_new[lid].tolist()):
        assert (p, l) in parent_edges
    # every extracted vertex still carries the component invariant
    for new_id in range(0, sub.n_vertices, 37):
        v = sub.decode_vertex(new_id)
        assert invariant_vector(v, sub.field) == lab.invariants[0]


def test_extract_specific_component():
    g = build(6, 2)
    lab = components(g)
    sub, old_of_new = extract_component(g, lab, 5)
    assert sub.n_vertices == 16
    assert set(lab.labels[old_of_new].tolist()) == {5}


def test_extract_unknown_component():
    g = build(6, 2)
    lab = components(g)
    with pytest.raises(ValueError):
        extract_component(g, lab, 8)
    with pytest.raises(ValueError):
        extract_component(g, lab, -1)
