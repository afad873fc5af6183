"""The gauged superpotential of a moment polytope fiber as an explicit term list.

For an interior fiber lam the potential is W(z) = sum_i m_i * t_i(q) * z^{v_i} * q^{l_i(lam)}
with one term per facet: v_i the facet normal, l_i(lam) the facet value, and
(m_i, t_i) = (e^{a_i0}, exp(a_i - a_i0)) the constant and tail factors of an
optional twist a_i per facet.  Variables are z_j = e^{b_j}; derivatives below
are with respect to b, so each z-power v_ij becomes a linear weight.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction

from .errors import NotAUnit, NotInterior, ZeroComponent
from .novikov import (
    NovikovSeries,
    constant_series,
    monomial_eval,
    nov_exp,
    one,
    val,
    zero_series,
)
from .polytope import MomentPolytope, facet_values, is_interior

DEFAULT_TRUNCATION_FACTOR = 3


@dataclass(frozen=True)
class PotentialTerm:
    facet_index: int
    multiplier: complex
    bulk_tail: NovikovSeries  # unit with leading coefficient exactly 1
    exponent: tuple[int, ...]
    valuation: Fraction


@dataclass(frozen=True)
class Potential:
    dimension: int
    fiber: tuple[Fraction, ...]
    terms: tuple[PotentialTerm, ...]
    truncation: Fraction


def default_truncation(P: MomentPolytope, lam) -> Fraction:
    return DEFAULT_TRUNCATION_FACTOR * max(facet_values(P, lam))


def build_potential(
    P: MomentPolytope,
    lam,
    alpha: tuple[NovikovSeries, ...] | None = None,
    truncation=None,
) -> Potential:
    """One term per facet, in facet order; optional per-facet twist alpha."""
    lam = tuple(Fraction(x) for x in lam)
    if not is_interior(P, lam):
        raise NotInterior(f"fiber {lam} is not interior")
    D = Fraction(truncation) if truncation is not None else default_truncation(P, lam)
    values = facet_values(P, lam)
    if alpha is not None and len(alpha) != len(P.facets):
        raise ValueError("twist must supply one series per facet")
    terms = []
    for i, f in enumerate(P.facets):
        if alpha is None:
            mult, tail = 1.0 + 0j, one(D)
        else:
            a = alpha[i].retruncate(D)
            if val(a) < 0:
                raise NotAUnit("twist coefficients must have nonnegative valuation")
            a0 = a.coefficient(0)
            mult = cmath.exp(a0)
            tail = nov_exp(a - constant_series(a0, D))
        terms.append(PotentialTerm(i, mult, tail, f.normal, values[i]))
    return Potential(P.dimension, lam, tuple(terms), D)


def _require_units(z: tuple[NovikovSeries, ...], n: int) -> None:
    if len(z) != n:
        raise ValueError("point has the wrong length")
    for zj in z:
        if val(zj) != 0:
            raise NotAUnit("potential evaluation needs unit components")


def term_values(W: Potential, z: tuple[NovikovSeries, ...]) -> list[NovikovSeries]:
    """Value of each summand at z, in facet order."""
    _require_units(z, W.dimension)
    out = []
    for t in W.terms:
        v = monomial_eval(z, t.exponent) * t.bulk_tail * t.multiplier
        out.append(v.shift(t.valuation))
    return out


def eval_potential(W: Potential, z: tuple[NovikovSeries, ...]) -> NovikovSeries:
    acc = zero_series(W.truncation)
    for tv in term_values(W, z):
        acc = acc + tv
    return acc


def eval_gradient(W: Potential, z: tuple[NovikovSeries, ...]) -> tuple[NovikovSeries, ...]:
    """Component j: sum_i v_ij * (term i at z)."""
    tv = term_values(W, z)
    grad = []
    for j in range(W.dimension):
        acc = zero_series(W.truncation)
        for t, v in zip(W.terms, tv):
            if t.exponent[j]:
                acc = acc + v * float(t.exponent[j])
        grad.append(acc)
    return tuple(grad)


def eval_hessian(W: Potential, z: tuple[NovikovSeries, ...]) -> list[list[NovikovSeries]]:
    """Symmetric matrix of second derivatives in b, entry (j,k) = sum_i v_ij v_ik term_i."""
    tv = term_values(W, z)
    n = W.dimension
    H = [[zero_series(W.truncation) for _ in range(n)] for _ in range(n)]
    for t, v in zip(W.terms, tv):
        for j in range(n):
            if not t.exponent[j]:
                continue
            for k in range(j, n):
                if t.exponent[k]:
                    H[j][k] = H[j][k] + v * float(t.exponent[j] * t.exponent[k])
    for j in range(n):
        for k in range(j):
            H[j][k] = H[k][j]
    return H


def specialize_q(
    W: Potential, z0: tuple[complex, ...], q0: float
) -> tuple[complex, tuple[complex, ...]]:
    """Numeric (value, gradient) with q set to q0 in (0,1) and z fixed at z0."""
    if not 0 < q0 < 1:
        raise ValueError("q0 must lie in (0,1)")
    if len(z0) != W.dimension:
        raise ValueError("point has the wrong length")
    if any(zj == 0 for zj in z0):
        raise ZeroComponent("z0 components must be nonzero")
    value = 0j
    grad = [0j] * W.dimension
    for t in W.terms:
        mono = t.multiplier * t.bulk_tail.evaluate(q0) * (q0 ** float(t.valuation))
        for zj, vj in zip(z0, t.exponent):
            mono *= zj ** vj
        value += mono
        for j, vj in enumerate(t.exponent):
            if vj:
                grad[j] += vj * mono
    return value, tuple(grad)


def term_table(W: Potential) -> list[dict]:
    """JSON-friendly summary of the term list."""
    return [
        {
            "facet": t.facet_index,
            "exponent": list(t.exponent),
            "valuation": str(t.valuation),
            "multiplier": {"re": t.multiplier.real, "im": t.multiplier.imag},
            "bulk_tail": [
                {"exp": str(e), "re": c.real, "im": c.imag} for e, c in t.bulk_tail.terms
            ],
        }
        for t in W.terms
    ]
