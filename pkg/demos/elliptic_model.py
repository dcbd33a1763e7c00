#!/usr/bin/env python3
"""Build X over Y for the function field of y^2 = t^3 - t.

K = Q(t), L = K(s) with s^2 = t^3 - t. Y is covered by Spec Z[t] and
Spec Z[t, 1/t], glued along Spec Z[t, 1/t]. Each chart of X is B_V[Delta],
where Delta is the Galois orbit {s, -s} of the nice basis {s}.

Run with: python3 demos/elliptic_model.py
"""

from geomodel import samples
from geomodel.pipeline import Pipeline

p = Pipeline.from_text(samples.text("elliptic"))
model = p.model

print("Delta:", [str(d) for d in model.delta])
for chart in model.cover_x.all_charts():
    info = chart.describe()
    print(f"\n{chart.name} over {model.chart_map[chart.name]}")
    print("  generators:", info["generators"])
    print("  relations: ", info["relations"])
    # k(X) = L: s and t are quotients of elements of the chart ring
    for cert in info["fraction_field"]:
        num, den = cert["numerator"], cert["denominator"]
        print(f"  {cert['element']} = {num}" + ("" if den == "1" else f" / ({den})"))

# Orbit sums and products of Delta-monomials land back in B_V. The first two
# probes are the symmetric functions of {s, -s}: 0 and -(t^3 - t).
print()
for name, verdict in p.invariant_probes.items():
    first = [(kind, value) for kind, mono, value, _ in verdict.probes[:2]]
    print(f"{name}: {verdict.status}; first probes {first}")

# Every Galois element maps every chart ring to itself, so Aut(X/Y) is the
# whole Galois group, and each chart has exactly one conjugate.
print("\n|Aut(X/Y)| =", p.aut.order, " iso with Gal(L/K):", p.iso.passed)
print("quasi-galois closed:", p.qgc.verdict, p.qgc.conjugates)
