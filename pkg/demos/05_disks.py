"""Holomorphic disks and the potential cross-check.

Disk classes are degree vectors over the facets: index 2*sum(d), area
sum(d_j * l_j(lambda)), boundary class sum(d_j * v_j).  The index-2 classes
are exactly the unit vectors, their explicit models are Blaschke products with
boundary modulus sqrt(l_j/pi), and rebuilding the potential from them must
reproduce the facet-by-facet construction exactly.
"""

import cmath
import math
from fractions import Fraction as F

from toric_fiber_lab import (
    blaschke_data,
    blaschke_eval,
    boundary_class,
    build_potential,
    disk_area,
    facet_values,
    index_two_classes,
    make_polytope,
    maslov_index,
    potential_from_disks,
)

triangle = make_polytope(2, [((1, 0), F(0)), ((0, 1), F(0)), ((-5, -3), F(-15))])
lam = (F(1), F(1))

print("index-2 disk classes at (1,1):")
for d in index_two_classes(triangle):
    print(
        f"  d={d}  index={maslov_index(d)}  area={disk_area(d, triangle, lam)}"
        f"  boundary={boundary_class(d, triangle)}"
    )

# a Blaschke model: one zero in the first coordinate, none elsewhere
b = blaschke_data(triangle, lam, [[0.3 + 0.1j], [], []])
z = cmath.exp(0.7j)
w = blaschke_eval(b, z)
expected = [math.sqrt(float(lj) / math.pi) for lj in facet_values(triangle, lam)]
print("\nboundary moduli vs sqrt(l_j/pi):")
for wj, ej in zip(w, expected):
    print(f"  |w| = {abs(wj):.12f}  expected {ej:.12f}")

a = build_potential(triangle, lam)
c = potential_from_disks(triangle, lam)
print("\npotential from disks == potential from facets:", a.terms == c.terms)
