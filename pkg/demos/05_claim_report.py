"""Run the bundled claim checks on a couple of instances.

verify_all builds the graph once and evaluates every structural claim
that applies at the given size: counts, regularity, bipartiteness,
girth bounds, component floors, invariant conservation, witness
placement, the edge-density identity, and the exponent arithmetic.
"""

import json

from dkq import survey, verify_all

report = verify_all(3, 5)
print(f"D(3,5) verdict: {'PASS' if report.verdict else 'FAIL'}")
for chk in report.checks:
    tag = "ok" if chk.passed else ("--" if chk.passed is None else "FAIL")
    print(f"  {chk.id:>4} [{tag}] {chk.claim}: {chk.measured}")

# The component-rich regime exercises the conservation and witness
# checks for real (t > 1 means the conserved vector is nonempty).
report = verify_all(6, 3)
print(f"\nD(6,3) verdict: {'PASS' if report.verdict else 'FAIL'}")

# Reports serialize to stable JSON for archiving.
blob = report.to_json()
print("report keys:", sorted(json.loads(blob)))

# survey() exposes the measured quantities without the pass/fail layer.
s = survey(10, 2)
print(f"\nD(10,2): {s.graph.n_vertices} vertices,"
      f" {s.labeling.n_components} components,"
      f" component girths {sorted(set(r.girth for r in s.comp_girths))}")
