"""Exact girth, bipartiteness checking and shortest-cycle certificates.

The girth engine runs a breadth-first scan from every point-side vertex
(in a bipartite graph every cycle alternates sides, so point roots see
every cycle).  While scanning the frontier at depth d it records three
kinds of cycle evidence: an edge back to depth d-1 that is not the tree
edge (length 2d), an edge inside the frontier (length 2d+1) and a fresh
vertex discovered twice in one round (length 2d+2).  Every detection is
the length of a closed walk, hence at least the girth, and a root lying
on a shortest cycle detects exactly its length, so the minimum over all
roots is exact.  Each scan is pruned at the depth that could still beat
the best value seen so far, which keeps the total cost far below one
full BFS per vertex.

With max_depth = D the scan stops at depth D - 1 everywhere, which
either finds the exact girth (any cycle of length <= 2D is caught) or
certifies that no cycle of length <= 2D exists.
"""

from __future__ import annotations

import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .builder import BipartiteGraph, concat_ranges

__all__ = ["GirthResult", "BipartiteCheck", "girth", "check_bipartite", "validate_cycle"]

_HUGE = 1 << 62


@dataclass(frozen=True)
class GirthResult:
    mode: str  # "exact" or "lower-bound"
    girth: int | None  # None: no cycle found (acyclic input or bound-only probe)
    probed_depth: int
    certificate: tuple[int, ...] | None = None

    @property
    def floor(self) -> int:
        """A length every cycle is known to reach or exceed."""
        return self.girth if self.girth is not None else 2 * self.probed_depth + 1


@dataclass(frozen=True)
class BipartiteCheck:
    ok: bool
    coloring: np.ndarray | None
    odd_walk: tuple[int, ...] | None


def _trace(parent: np.ndarray, v: int) -> list[int]:
    path = [int(v)]
    while parent[path[-1]] != -1:
        path.append(int(parent[path[-1]]))
    return path


def _cycle_through(parent: np.ndarray, x: int, w: int) -> list[int]:
    """Simple cycle from the tree paths of x and w plus the edge (w, x).

    The two root paths agree on a suffix; dropping it (keeping one copy of
    the deepest shared vertex) leaves vertex-disjoint arcs, so the result
    is a genuine cycle no longer than dist(x) + dist(w) + 1.
    """
    px, pw = _trace(parent, x), _trace(parent, w)
    i, j = len(px) - 1, len(pw) - 1
    while i > 0 and j > 0 and px[i - 1] == pw[j - 1]:
        i -= 1
        j -= 1
    return px[: i + 1] + pw[:j][::-1]


def _scan_values(g, sources, max_depth, box, lock):
    """Minimum cycle evidence over the given roots: ((value, root), max depth scanned)."""
    indptr, indices = g.indptr, g.indices
    n = g.n_vertices
    dist = np.full(n, -1, dtype=np.int32)
    parent = np.full(n, -1, dtype=np.int64)
    best = (_HUGE, -1)
    scanned = 0
    for s in sources:
        s = int(s)
        if min(box[0], best[0]) <= 3:
            break  # nothing can beat a triangle
        dist[s] = 0
        frontier = np.array([s], dtype=np.int64)
        touched = [frontier]
        depth = 0
        while frontier.size:
            bb = min(box[0], best[0])
            if 2 * depth >= bb or bb <= 3:
                break
            if max_depth is not None and depth >= max_depth:
                break
            scanned = max(scanned, depth)
            starts = indptr[frontier]
            counts = indptr[frontier + 1] - starts
            nbr = indices[concat_ranges(starts, counts)]
            srcv = np.repeat(frontier, counts)
            dn = dist[nbr]
            val = None
            if depth and ((dn == depth - 1) & (nbr != parent[srcv])).any():
                val = 2 * depth
            if val is None and (dn == depth).any():
                val = 2 * depth + 1
            new_mask = dn == -1
            w_new = nbr[new_mask]
            if w_new.size:
                uniq, first_idx = np.unique(w_new, return_index=True)
                x_new = srcv[new_mask]
                dist[uniq] = depth + 1
                parent[uniq] = x_new[first_idx]
                touched.append(uniq)
                if val is None and uniq.size < w_new.size:
                    val = 2 * depth + 2
                frontier = uniq
            else:
                frontier = w_new
            if val is not None and val < bb:
                if val < best[0]:
                    best = (val, s)
                if lock is None:
                    box[0] = min(box[0], val)
                else:
                    with lock:
                        box[0] = min(box[0], val)
            depth += 1
        flat = np.concatenate(touched)
        dist[flat] = -1
        parent[flat] = -1
    return best, scanned


def _certificate(g, target: int) -> tuple[int, ...]:
    """Canonical shortest cycle: first evidence of length target from the
    smallest root, rebuilt from the BFS tree.  Thread-count independent."""
    indptr, indices = g.indptr, g.indices
    n = g.n_vertices
    dist = np.full(n, -1, dtype=np.int32)
    parent = np.full(n, -1, dtype=np.int64)
    for s in range(g.n_points):
        dist[s] = 0
        frontier = np.array([s], dtype=np.int64)
        touched = [frontier]
        depth = 0
        cycle = None
        while frontier.size and 2 * depth <= target and cycle is None:
            starts = indptr[frontier]
            counts = indptr[frontier + 1] - starts
            nbr = indices[concat_ranges(starts, counts)]
            srcv = np.repeat(frontier, counts)
            dn = dist[nbr]
            if depth and 2 * depth == target:
                cross = (dn == depth - 1) & (nbr != parent[srcv])
                if cross.any():
                    j = int(np.flatnonzero(cross)[0])
                    cycle = _cycle_through(parent, int(srcv[j]), int(nbr[j]))
            if cycle is None and 2 * depth + 1 == target:
                same = dn == depth
                if same.any():
                    j = int(np.flatnonzero(same)[0])
                    cycle = _cycle_through(parent, int(srcv[j]), int(nbr[j]))
            new_mask = dn == -1
            w_new = nbr[new_mask]
            if w_new.size:
                uniq, first_idx = np.unique(w_new, return_index=True)
                x_new = srcv[new_mask]
                dist[uniq] = depth + 1
                parent[uniq] = x_new[first_idx]
                touched.append(uniq)
                if cycle is None and 2 * depth + 2 == target and uniq.size < w_new.size:
                    order = np.argsort(w_new, kind="stable")
                    ws = w_new[order]
                    dup = int(np.flatnonzero(ws[1:] == ws[:-1])[0])
                    x1 = int(x_new[order[dup]])
                    x2 = int(x_new[order[dup + 1]])
                    cycle = [int(ws[dup])] + _cycle_through(parent, x1, x2)
                frontier = uniq
            else:
                frontier = w_new
            depth += 1
        flat = np.concatenate(touched)
        dist[flat] = -1
        parent[flat] = -1
        if cycle is not None:
            if len(cycle) != target:
                raise AssertionError("certificate length disagrees with the scan")
            return tuple(cycle)
    raise AssertionError(f"no root reproduced a cycle of length {target}")


def _cycle_walk(g) -> GirthResult:
    """Girth of a 2-regular graph: walk each cycle once."""
    n = g.n_vertices
    seen = np.zeros(n, dtype=bool)
    best: list[int] | None = None
    for start in range(n):
        if seen[start]:
            continue
        cycle = [start]
        seen[start] = True
        prev, cur = start, int(g.neighbors(start)[0])
        while cur != start:
            seen[cur] = True
            cycle.append(cur)
            a, b = g.neighbors(cur)
            nxt = int(a) if int(a) != prev else int(b)
            prev, cur = cur, nxt
        if best is None or len(cycle) < len(best):
            best = cycle
    if best is None:
        return GirthResult("exact", None, probed_depth=0)
    return GirthResult(
        "exact", len(best), probed_depth=len(best) // 2, certificate=tuple(best)
    )


def girth(
    g: BipartiteGraph,
    max_depth: int | None = None,
    threads: int | None = None,
    method: str = "auto",
) -> GirthResult:
    """Girth of g, exact unless max_depth cuts the scan short.

    method "walk" handles 2-regular graphs as plain cycle traversals,
    "scan" forces the BFS engine, "auto" picks.  Threading splits the
    roots across workers; the reported value never depends on it.
    """
    if method not in ("auto", "scan", "walk"):
        raise ValueError(f"unknown method {method!r}")
    if max_depth is not None and max_depth < 1:
        raise ValueError("max_depth must be at least 1")
    degrees = np.diff(g.indptr)
    two_regular = degrees.size > 0 and bool((degrees == 2).all())
    if method == "walk" or (method == "auto" and two_regular):
        if not two_regular:
            raise ValueError("walk method requires a 2-regular graph")
        return _cycle_walk(g)

    sources = np.arange(g.n_points, dtype=np.int64)
    box = [_HUGE]
    if threads and threads > 1:
        chunks = [c for c in np.array_split(sources, threads * 4) if c.size]
        lock = threading.Lock()
        with ThreadPoolExecutor(max_workers=threads) as ex:
            results = list(
                ex.map(lambda c: _scan_values(g, c, max_depth, box, lock), chunks)
            )
    else:
        results = [_scan_values(g, sources, max_depth, box, None)]
    (value, _root) = min(r[0] for r in results)
    scanned = max(r[1] for r in results)

    if value >= _HUGE:
        if max_depth is not None:
            return GirthResult("lower-bound", None, probed_depth=max_depth)
        return GirthResult("exact", None, probed_depth=scanned)  # acyclic input
    return GirthResult(
        "exact", int(value), probed_depth=scanned, certificate=_certificate(g, int(value))
    )


def check_bipartite(g: BipartiteGraph) -> BipartiteCheck:
    """Two-color by BFS, seeding each component with its root's side.

    Returns the coloring, or an odd-cycle walk when none exists.  A graph
    that is two-colorable but disagrees with the point/line split is
    reported as a hard error, since ids are supposed to encode sides.
    """
    n = g.n_vertices
    color = np.full(n, -1, dtype=np.int8)
    parent = np.full(n, -1, dtype=np.int64)
    for root in range(n):
        if color[root] != -1:
            continue
        root_color = 0 if root < g.n_points else 1
        color[root] = root_color
        frontier = np.array([root], dtype=np.int64)
        depth = 0
        while frontier.size:
            starts = g.indptr[frontier]
            counts = g.indptr[frontier + 1] - starts
            nbr = g.indices[concat_ranges(starts, counts)]
            srcv = np.repeat(frontier, counts)
            cn = color[nbr]
            clash = cn == color[srcv]
            if clash.any():
                j = int(np.flatnonzero(clash)[0])
                walk = _cycle_through(parent, int(srcv[j]), int(nbr[j]))
                return BipartiteCheck(False, None, tuple(walk))
            new_mask = cn == -1
            w_new = nbr[new_mask]
            if w_new.size:
                uniq, first_idx = np.unique(w_new, return_index=True)
                x_new = srcv[new_mask]
                color[uniq] = (root_color + depth + 1) % 2
                parent[uniq] = x_new[first_idx]
                frontier = uniq
            else:
                frontier = w_new
            depth += 1
    if (color[: g.n_points] != 0).any() or (color[g.n_points :] != 1).any():
        raise RuntimeError("graph is two-colorable but not along the point/line split")
    color.flags.writeable = False
    return BipartiteCheck(True, color, None)


def validate_cycle(g: BipartiteGraph, walk) -> bool:
    """True iff walk is a simple cycle of g (cyclically adjacent, all distinct)."""
    walk = [int(v) for v in walk]
    if len(walk) < 3 or len(set(walk)) != len(walk):
        return False
    if any(not 0 <= v < g.n_vertices for v in walk):
        return False
    for u, v in zip(walk, walk[1:] + walk[:1]):
        row = g.neighbors(u)
        j = int(np.searchsorted(row, v))
        if j >= row.size or row[j] != v:
            return False
    return True
