"""The gauged potential of a toric fiber.

W(z) = sum_i mult_i * tail_i * z^{v_i} * q^{l_i(lambda)}: one term per facet,
with exact rational q-exponents and complex coefficients, truncated at order D.
Derivatives are taken in the logarithmic coordinates beta (z = e^beta), so the
gradient weights each term by the exponent entries.
"""

from fractions import Fraction as F

from toric_fiber_lab import (
    build_potential,
    constant_series,
    eval_gradient,
    eval_potential,
    make_polytope,
    monomial,
    term_table,
)

triangle = make_polytope(2, [((1, 0), F(0)), ((0, 1), F(0)), ((-5, -3), F(-15))])

W = build_potential(triangle, (F(5, 3), F(5, 3)))
print(f"potential at (5/3, 5/3), truncated at q^{W.truncation}")
for row in term_table(W):
    print(" ", row)

# evaluate at the unit torus point z = (1, 1)
z = tuple(constant_series(1.0 + 0j, W.truncation) for _ in range(2))
print("\nW(1,1) =", eval_potential(W, z))
print("grad W(1,1) =", [str(g) for g in eval_gradient(W, z)])

# a bulk twist multiplies term i by exp(alpha_i); constants change the
# multiplier, positive-valuation tails deform the series
alpha = (
    constant_series(0.0j, W.truncation),
    monomial(0.25, F(1, 2), W.truncation),
    constant_series(0.0j, W.truncation),
)
W_twisted = build_potential(triangle, (F(5, 3), F(5, 3)), alpha)
print("\nwith a q^(1/2) twist on the second facet:")
for row in term_table(W_twisted):
    print(" ", row)
