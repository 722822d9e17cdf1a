# Build D(3,3) and poke at it.
#
# Points and lines are both coordinate tuples of length k over GF(q);
# a point-line pair is adjacent when the defining relations hold.  The
# builder solves the relations directly (each point has exactly one
# neighbor per choice of the line's first coordinate), so construction
# is O(q^{k+1}) without any pair scanning.

import numpy as np

from dkq import Vertex, build, decode, encode, export_graph, incident, line_through

g = build(3, 3)
print(f"D({g.k},{g.q}): {g.n_points} points, {g.n_lines} lines, {g.edge_count} edges")

# Vertex ids pack coordinates in base q, lines offset by q^k.
p = Vertex(0, (1, 1, 1))
pid = encode(p, g.k, g.q)
print("\npoint", p.coords, "has id", pid)
print("decodes back to", decode(pid, g.k, g.q))

# Its three neighbors, one for each first coordinate of a line.
for lid in g.neighbors(pid):
    ln = decode(int(lid), g.k, g.q)
    print("  neighbor line", ln.coords, "incident:", incident(p, ln, g.field))

# line_through gives the same thing one at a time.
ln = line_through(p, 2, g.field)
print("\nline through the point with first coordinate 2:", ln.coords)

# Every vertex has degree q, and the two sides partition the ids.
degrees = np.diff(g.indptr)
print("degree range:", degrees.min(), "..", degrees.max())

# The neighbors of a point all start with a different first coordinate;
# this is what makes the per-first-coordinate solver exhaustive.
firsts = sorted(decode(int(v), g.k, g.q).coords[0] for v in g.neighbors(pid))
print("first coordinates of the neighbors:", firsts)

export_graph(g, "d33.edgelist")
print("\nwrote d33.edgelist")
