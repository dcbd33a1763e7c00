#!/usr/bin/env python3
"""Galois groups of the shipped number fields, and one field that is not Galois.

Run with: python3 demos/galois_groups.py
"""

from geomodel import samples
from geomodel.pipeline import Pipeline


def show(name):
    p = Pipeline.from_text(samples.text(name))
    tower, group = p.tower, p.group
    print(f"--- {name}: [L:K] = {tower.degree_over_k()}")
    for i, sigma in enumerate(group.elements):
        images = ", ".join(f"{k} -> {v}" for k, v in sigma.describe().items())
        print(f"  g{i}: {images}")
    verdict = p.fixed_field
    print(f"  |Gal| = {group.order}, fixed subspace dimension {verdict.fixed_dimension}, "
          f"Galois: {verdict.is_galois}")
    return p


# Q(sqrt 2): the two embeddings send a to a and to -a.
show("sqrt2")

# The splitting field of x^3 - 2 has a nonabelian group of order 6. The
# composition table exposes a pair of elements that do not commute.
p = show("s3")
i, j = p.group.noncommuting_pair()
print(f"  g{i}*g{j} = g{p.group.table[i][j]} but g{j}*g{i} = g{p.group.table[j][i]}")

# Q(zeta_5) is cyclic of order 4: zeta -> zeta^2 generates.
p = show("cyclotomic5")
print("  element orders:", [p.group.element_order(k) for k in range(p.group.order)])

# Q(2^(1/3)) has only the identity automorphism. The fixed subspace is all of
# L, of dimension 3, so the field is not Galois over Q; the other two roots
# of x^3 - 2 are not in L.
p = show("cuberoot")
print("  quasi-galois:", p.quasi_galois.verdict, p.quasi_galois.per_generator)
