"""Probe displaceability.

A probe enters from the relative interior of a facet along an integer
direction pairing to 1 with the primitive inward normal; every fiber strictly
inside its first half is displaceable.  Probes complement the critical-fiber
certificates: together they classify most of the polytope.
"""

from fractions import Fraction as F

from toric_fiber_lab import displaceable_by_probe, make_polytope, probe_scan

segment = make_polytope(1, [((1,), F(0)), ((-1,), F(-1))])

print("[0,1]: probing the deciles")
for k in range(1, 10):
    probe = displaceable_by_probe(segment, (F(k, 10),), bound=1)
    verdict = "displaceable" if probe else "no probe (non-displaceable: critical)"
    print(f"  lambda = {k}/10: {verdict}")

square = make_polytope(
    2, [((1, 0), F(-1)), ((-1, 0), F(-1)), ((0, 1), F(-1)), ((0, -1), F(-1))]
)
print("\n[-1,1]^2 at resolution 8: '.' displaceable, 'o' no probe found")
grid = probe_scan(square, 8)
ys = sorted({lam[1] for lam in grid}, reverse=True)
xs = sorted({lam[0] for lam in grid})
for y in ys:
    row = "".join("o" if grid[(x, y)] is None else "." for x in xs if (x, y) in grid)
    print("   ", row)
print("only the center survives; it carries a critical-point certificate")
