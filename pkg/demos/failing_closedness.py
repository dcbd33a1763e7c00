#!/usr/bin/env python3
"""A hand-assembled X that is not quasi-galois closed.

Inside the splitting field of x^3 - 2, take X = Spec Z[c] over Y = Spec Z.
The Galois group moves c to c*w and c*w^2, and neither lies in Z[c], so the
chart has three distinct conjugates.

Run with: python3 demos/failing_closedness.py
"""

from geomodel import samples
from geomodel.pipeline import Pipeline

p = Pipeline.from_text(samples.text("s3_zc"))
chart = p.model.cover_x.charts[0]
print("chart ring:", chart.ring.describe()["generators"])

verdict = p.qgc
witness = verdict.witnesses["U"]
print("QGC verdict:", verdict.verdict)
print("conjugate rings:", witness["all_conjugates"])
print("witness:", witness["conjugate"], "under", witness["sigma"], "-", witness["reason"])

# Only the elements fixing c stabilize the chart, so Aut(X/Y) has order 2.
print("|Aut(X/Y)| =", p.aut.order, "of |Gal| =", p.group.order)

# Essential equality of Z[c] with a conjugate fails on the probe x = c:
# c lies in Z[c] but not in the conjugate, and 1/c = c^2/2 is in neither.
rings = p.qgc.witnesses["U"]["all_conjugates"]
for gens, e in zip(rings[1:], p.essential_probes["U"][1:]):
    print(f"Z[c] vs Z{gens}: {e.verdict}; witness row {e.witness}")
