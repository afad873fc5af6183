"""Critical fiber search over the truncated series ring.

Pipeline: enumerate fibers where every gradient direction has its minimal
term valuation attained at least twice (tropical candidates), solve the
complex leading-coefficient system by multistart Newton, then lift each
leading root to a series solution of grad W = 0, either by series Newton
iteration or, when the leading Jacobian is unfit for Newton, by cancelling
residual levels one valuation at a time.

Derivatives of W are taken in b with z = e^b, so the Jacobian of the
gradient in the z variables is the b-Hessian times diag(1/z_k); the leading
complex matrix used for startability tests and level solves includes that
factor.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import (
    DegenerateDirection,
    Inconsistent,
    NoConvergence,
    SingularLeadingHessian,
)
from .novikov import (
    INF,
    NovikovSeries,
    constant_series,
    monomial,
    nov_inverse,
    val,
)
from .polytope import MomentPolytope, exact_affine_solve, facet_values, is_interior
from .potential import (
    Potential,
    build_potential,
    default_truncation,
    eval_gradient,
    eval_hessian,
    eval_potential,
)

COND_LIMIT = 1e8
DIAG_TOL = 1e-8  # relative floor for leading-Jacobian diagonal entries
ROOT_RESIDUAL_TOL = 1e-10
ROOT_MODULUS_RANGE = (1e-6, 1e6)
ROOT_DEDUP_TOL = 1e-6
CERT_DEDUP_TOL = 1e-6
LSTSQ_CONSISTENCY = 1e-8
DEFAULT_STARTS_BASE = 64
MAX_NEWTON_ITER = 60
MAX_GRADED_LEVELS = 400
FAMILY_SAMPLES = (
    Fraction(0),
    Fraction(1, 2),
    Fraction(-1, 2),
    Fraction(1),
    Fraction(-1),
    Fraction(2),
    Fraction(-2),
)


@dataclass(frozen=True)
class TropicalCandidate:
    fiber: tuple[Fraction, ...]
    equalities: tuple[tuple[int, int], ...]
    per_direction_minima: tuple[tuple[int, ...], ...]
    isolated: bool = True


@dataclass(frozen=True)
class LeadingSystem:
    dimension: int
    # per direction: ((coefficient, exponent vector), ...) over minimal-valuation terms
    equations: tuple[tuple[tuple[complex, tuple[int, ...]], ...], ...]
    minima: tuple[tuple[int, ...], ...]
    row_valuations: tuple[Fraction, ...]


@dataclass(frozen=True)
class CriticalCertificate:
    fiber: tuple[Fraction, ...]
    z: tuple[NovikovSeries, ...]
    residual_valuation: Fraction | float
    leading_jacobian_nondegenerate: bool
    critical_value: NovikovSeries
    intersection_lower_bound: int
    method: str  # "newton" | "graded"
    iterations: int
    residual_history: tuple  # normalized residual valuations per step


# -- tropical candidate enumeration ------------------------------------------


def _candidate_minima(P: MomentPolytope, lam) -> tuple[tuple[int, ...], ...] | None:
    """Per direction, the facets of minimal value among those with v_ij != 0.

    Returns None unless every direction attains its minimum at least twice.
    """
    values = facet_values(P, lam)
    minima = []
    for j in range(P.dimension):
        support = [i for i, f in enumerate(P.facets) if f.normal[j] != 0]
        if not support:
            return None
        m = min(values[i] for i in support)
        S = tuple(i for i in support if values[i] == m)
        if len(S) < 2:
            return None
        minima.append(S)
    return tuple(minima)


def tropical_candidates(P: MomentPolytope, alpha=None) -> list[TropicalCandidate]:
    """Fibers where leading-order cancellation is possible in every direction.

    For each direction a pair of facets is forced to share the minimal
    valuation; the resulting exact linear systems are solved and filtered.
    Twists never move valuations, so `alpha` does not affect the output.
    """
    del alpha  # valuations are twist-independent; kept for signature parity
    n = P.dimension
    supports = [
        [i for i, f in enumerate(P.facets) if f.normal[j] != 0] for j in range(n)
    ]
    if any(len(s) < 2 for s in supports):
        return []
    found: dict[tuple[Fraction, ...], TropicalCandidate] = {}

    def consider(lam, equalities, isolated):
        lam = tuple(lam)
        if not is_interior(P, lam):
            return
        minima = _candidate_minima(P, lam)
        if minima is None:
            return
        prev = found.get(lam)
        if prev is None or (isolated and not prev.isolated):
            found[lam] = TropicalCandidate(lam, equalities, minima, isolated)

    for pairs in itertools.product(*(itertools.combinations(s, 2) for s in supports)):
        rows = []
        rhs = []
        for i, k in pairs:
            fi, fk = P.facets[i], P.facets[k]
            rows.append([Fraction(a - b) for a, b in zip(fi.normal, fk.normal)])
            rhs.append(fi.offset - fk.offset)
        part, kern = exact_affine_solve(rows, rhs)
        if part is None:
            continue
        if not kern:
            consider(part, tuple(pairs), True)
        else:
            # positive-dimensional family: sample along the first kernel direction
            k0 = kern[0]
            for t in FAMILY_SAMPLES:
                consider(
                    [p + t * k for p, k in zip(part, k0)], tuple(pairs), False
                )
    return [found[key] for key in sorted(found)]


# -- leading system -----------------------------------------------------------


def _row_data(W: Potential):
    """Per direction: (min valuation, facet indices attaining it)."""
    minima = []
    row_vals = []
    for j in range(W.dimension):
        support = [t for t in W.terms if t.exponent[j] != 0]
        if not support:
            raise DegenerateDirection(f"no term involves direction {j}")
        m = min(t.valuation for t in support)
        S = tuple(t.facet_index for t in support if t.valuation == m)
        minima.append(S)
        row_vals.append(m)
    return tuple(row_vals), tuple(minima)


def leading_system(W: Potential) -> LeadingSystem:
    """Per-direction minimal-valuation equations sum v_ij m_i zeta^{v_i} = 0."""
    row_vals, minima = _row_data(W)
    equations = []
    for j, S in enumerate(minima):
        if len(S) < 2:
            raise DegenerateDirection(
                f"direction {j}: minimal valuation attained once (facet {S[0]})"
            )
        eq = tuple(
            (t.exponent[j] * t.multiplier, t.exponent)
            for t in W.terms
            if t.facet_index in S
        )
        equations.append(eq)
    return LeadingSystem(W.dimension, tuple(equations), minima, row_vals)


# -- multistart leading-root search -------------------------------------------


def solve_leading(
    sys: LeadingSystem, seed: int = 0, starts: int | None = None
) -> list[tuple[complex, ...]]:
    """Roots of the leading system on the complex torus.

    Damped Newton in logarithmic coordinates from `starts` random points with
    log-uniform modulus in [1/4, 4] and uniform phase; converged roots are
    kept when the residual is below 1e-10 and every |zeta_j| lies in
    [1e-6, 1e6], then deduplicated to 1e-6 and sorted.
    """
    n = sys.dimension
    if starts is None:
        starts = DEFAULT_STARTS_BASE * 3**n
    coeffs = [np.array([c for c, _ in eq], dtype=complex) for eq in sys.equations]
    expos = [np.array([e for _, e in eq], dtype=float) for eq in sys.equations]

    def f_at(w: np.ndarray) -> np.ndarray:
        return np.array([c @ np.exp(E @ w) for c, E in zip(coeffs, expos)])

    def jac_at(w: np.ndarray) -> np.ndarray:
        return np.array([(c * np.exp(E @ w)) @ E for c, E in zip(coeffs, expos)])

    rng = np.random.default_rng(seed)
    roots: list[np.ndarray] = []
    with np.errstate(over="ignore", invalid="ignore"):  # divergent starts overflow; guarded below
        for _ in range(starts):
            mod = rng.uniform(np.log(0.25), np.log(4.0), n)
            phase = rng.uniform(0.0, 2.0 * np.pi, n)
            w = mod + 1j * phase
            fw = f_at(w)
            nf = np.max(np.abs(fw))
            for _ in range(MAX_NEWTON_ITER):
                if nf < 1e-14:
                    break
                try:
                    delta = np.linalg.solve(jac_at(w), -fw)
                except np.linalg.LinAlgError:
                    break
                if not np.all(np.isfinite(delta)):
                    break
                for k in range(11):
                    step = 0.5**k
                    w2 = w + step * delta
                    f2 = f_at(w2)
                    n2 = np.max(np.abs(f2))
                    if np.isfinite(n2) and (n2 < nf * (1 - 0.25 * step) or n2 < 1e-14):
                        w, fw, nf = w2, f2, n2
                        break
                else:
                    break
            if nf >= ROOT_RESIDUAL_TOL:
                continue
            zeta = np.exp(w)
            mods = np.abs(zeta)
            if mods.min() < ROOT_MODULUS_RANGE[0] or mods.max() > ROOT_MODULUS_RANGE[1]:
                continue
            if any(np.max(np.abs(zeta - r)) < ROOT_DEDUP_TOL for r in roots):
                continue
            roots.append(zeta)
    out = [tuple(complex(x) for x in r) for r in roots]
    out.sort(key=lambda z: tuple((round(x.real, 9), round(x.imag, 9)) for x in z))
    return out


# -- lifting infrastructure ---------------------------------------------------


def _leading_jacobian(W: Potential, zeta: tuple[complex, ...]) -> np.ndarray:
    """Constant part of the normalized z-Jacobian of the gradient at zeta."""
    _, minima = _row_data(W)
    n = W.dimension
    J0 = np.zeros((n, n), dtype=complex)
    for t in W.terms:
        mono = t.multiplier
        for zj, vj in zip(zeta, t.exponent):
            mono *= zj**vj
        for j in range(n):
            if t.exponent[j] and t.facet_index in minima[j]:
                for k in range(n):
                    if t.exponent[k]:
                        J0[j, k] += t.exponent[j] * t.exponent[k] * mono / zeta[k]
    return J0


def _newton_startable(J0: np.ndarray) -> bool:
    """Plain Newton needs nonvanishing diagonal and moderate conditioning."""
    for j in range(J0.shape[0]):
        scale = max(1.0, float(np.max(np.abs(J0[j]))))
        if abs(J0[j, j]) <= DIAG_TOL * scale:
            return False
    cond = np.linalg.cond(J0)
    return bool(np.isfinite(cond) and cond < COND_LIMIT)


def _normalized_state(W: Potential, z):
    """Gradient and bookkeeping: raw gradient, row minima, normalized frontier."""
    g = eval_gradient(W, z)
    row_vals, _ = _row_data(W)
    fronts = [val(gj) - m if gj.terms else INF for gj, m in zip(g, row_vals)]
    return g, row_vals, min(fronts)


def _normalized_jacobian(W: Potential, z) -> list[list[NovikovSeries]]:
    """Series matrix q^{-m_j} * dgrad_j/dz_k at z (entries have valuation >= 0)."""
    H = eval_hessian(W, z)
    row_vals, _ = _row_data(W)
    inv = [nov_inverse(zk) for zk in z]
    n = W.dimension
    return [
        [(H[j][k] * inv[k]).shift(-row_vals[j]) for k in range(n)] for j in range(n)
    ]


def _solve_series_system(Jhat, ghat, n: int):
    """delta with Jhat * delta = -ghat, via the inverse of the constant part.

    Writes Jhat = J0 (I + E) with E of positive valuation and sums the
    geometric series; converges because each E-power gains valuation.
    """
    J0 = np.array([[Jhat[j][k].coefficient(0) for k in range(n)] for j in range(n)])
    cond = np.linalg.cond(J0)
    if not np.isfinite(cond) or cond >= COND_LIMIT:
        raise SingularLeadingHessian(f"constant part has condition number {cond:.3g}")
    J0inv = np.linalg.inv(J0)

    def const_mul(M: np.ndarray, vec):
        return tuple(
            sum((vec[k] * complex(M[j, k]) for k in range(n)), vec[0] * 0.0)
            for j in range(n)
        )

    # E = J0inv * Jhat - I, entrywise series with valuation > 0
    E = [[None] * n for _ in range(n)]
    for j in range(n):
        for k in range(n):
            acc = Jhat[0][0] * 0.0
            for l in range(n):
                acc = acc + Jhat[l][k] * complex(J0inv[j, l])
            if j == k:
                acc = acc - constant_series(1.0, acc.truncation)
            E[j][k] = acc
    y = const_mul(J0inv, tuple(-gj for gj in ghat))
    acc = y
    term = y
    for _ in range(MAX_GRADED_LEVELS):
        term = tuple(
            sum((E[j][k] * term[k] for k in range(n)), term[0] * 0.0) * -1.0
            for j in range(n)
        )
        if all(t.is_zero() for t in term):
            break
        acc = tuple(a + t for a, t in zip(acc, term))
    return acc


def _certificate(W, z, method, nondegenerate, iterations, history) -> CriticalCertificate:
    g = eval_gradient(W, z)
    res = min((val(gj) for gj in g), default=INF)
    return CriticalCertificate(
        fiber=W.fiber,
        z=tuple(z),
        residual_valuation=res,
        leading_jacobian_nondegenerate=nondegenerate,
        critical_value=eval_potential(W, z),
        intersection_lower_bound=2**W.dimension,
        method=method,
        iterations=iterations,
        residual_history=tuple(history),
    )


def newton_lift(W: Potential, zeta: tuple[complex, ...], D=None) -> CriticalCertificate:
    """Series Newton iteration from the constant series zeta.

    Raises SingularLeadingHessian when the leading Jacobian has a vanishing
    diagonal entry or condition number >= 1e8 (fall back to graded_lift), and
    NoConvergence when the residual valuation stalls for three iterations.
    """
    if D is not None and Fraction(D) != W.truncation:
        W = _retruncated(W, D)
    z = tuple(constant_series(zj, W.truncation) for zj in zeta)
    J0 = _leading_jacobian(W, zeta)
    startable = _newton_startable(J0)
    g, row_vals, front = _normalized_state(W, z)
    history = [front]
    if all(gj.is_zero() for gj in g):
        return _certificate(W, z, "newton", startable, 0, history)
    if not startable:
        raise SingularLeadingHessian(
            "leading Jacobian is unfit for plain Newton at this root"
        )
    stall = 0
    best = front
    for it in range(1, MAX_NEWTON_ITER + 1):
        Jhat = _normalized_jacobian(W, z)
        ghat = tuple(gj.shift(-m) for gj, m in zip(g, row_vals))
        delta = _solve_series_system(Jhat, ghat, W.dimension)
        z = tuple(zj + dj for zj, dj in zip(z, delta))
        g, row_vals, front = _normalized_state(W, z)
        history.append(front)
        if all(gj.is_zero() for gj in g):
            return _certificate(W, z, "newton", startable, it, history)
        if front <= best:
            stall += 1
            if stall >= 3:
                raise NoConvergence(
                    f"residual valuation stalled at {front} after {it} iterations"
                )
        else:
            best = front
            stall = 0
    raise NoConvergence("iteration budget exhausted before reaching the truncation")


def _retruncated(W: Potential, D) -> Potential:
    from .potential import PotentialTerm

    D = Fraction(D)
    terms = tuple(
        PotentialTerm(t.facet_index, t.multiplier, t.bulk_tail.retruncate(D), t.exponent, t.valuation)
        for t in W.terms
    )
    return Potential(W.dimension, W.fiber, terms, D)


def _jacobian_level(Jhat, s: Fraction, n: int) -> np.ndarray:
    return np.array(
        [[Jhat[j][k].coefficient(s) for k in range(n)] for j in range(n)]
    )


def _kernel_basis(J0: np.ndarray) -> np.ndarray:
    u, sv, vh = np.linalg.svd(J0)
    tol = max(J0.shape) * np.finfo(float).eps * (sv[0] if sv.size else 0.0)
    null = [vh[i].conj() for i in range(len(sv)) if sv[i] <= max(tol, 1e-10)]
    return np.array(null).T if null else np.zeros((J0.shape[0], 0))


def graded_lift(W: Potential, zeta: tuple[complex, ...], D=None) -> CriticalCertificate:
    """Cancel gradient residual levels one valuation at a time.

    At frontier level f the correction delta q^f satisfies J0 delta = -r.
    When J0 cannot cancel r, corrections are sought at a shifted level f - s
    in the kernel of J0, entering level f through the valuation-s part of the
    Jacobian; shifts scan the valuation differences present in the term list.
    Raises Inconsistent when no admissible correction cancels the level.
    """
    if D is not None and Fraction(D) != W.truncation:
        W = _retruncated(W, D)
    n = W.dimension
    z = tuple(constant_series(zj, W.truncation) for zj in zeta)
    J0 = _leading_jacobian(W, zeta)
    startable = _newton_startable(J0)
    shifts = sorted(
        {
            a.valuation - b.valuation
            for a in W.terms
            for b in W.terms
            if a.valuation > b.valuation
        }
    )
    g, row_vals, front = _normalized_state(W, z)
    history = [front]
    levels = 0
    stall = 0
    prev_front = None
    while not all(gj.is_zero() for gj in g):
        levels += 1
        if levels > MAX_GRADED_LEVELS:
            raise Inconsistent("level budget exhausted before the truncation")
        if front <= 0:
            raise Inconsistent(f"residual at nonpositive level {front}")
        if prev_front is not None and front <= prev_front:
            stall += 1
            if stall >= 3:
                raise Inconsistent(f"frontier stalled at level {front}")
        else:
            stall = 0
        prev_front = front
        r = np.array(
            [gj.coefficient(front + m) for gj, m in zip(g, row_vals)], dtype=complex
        )
        J0 = _leading_jacobian(W, tuple(zj.coefficient(0) for zj in z))
        delta = self_correction = None
        cond = np.linalg.cond(J0)
        if np.isfinite(cond) and cond < COND_LIMIT:
            delta = np.linalg.solve(J0, -r)
        else:
            cand, *_ = np.linalg.lstsq(J0, -r, rcond=None)
            if np.linalg.norm(J0 @ cand + r) <= LSTSQ_CONSISTENCY * max(
                np.linalg.norm(r), 1e-300
            ):
                delta = cand
            else:
                self_correction = _shifted_correction(
                    W, z, J0, r, front, shifts, n
                )
                if self_correction is None:
                    raise Inconsistent(
                        f"residual level {front} cannot be cancelled at any shift"
                    )
        if delta is not None:
            z = tuple(
                zj + monomial(complex(dj), front, W.truncation)
                for zj, dj in zip(z, delta)
            )
        else:
            shift_level, xi, delta2 = self_correction
            z = tuple(
                zj
                + monomial(complex(xj), shift_level, W.truncation)
                + monomial(complex(dj), front, W.truncation)
                for zj, xj, dj in zip(z, xi, delta2)
            )
        g, row_vals, front = _normalized_state(W, z)
        history.append(front)
    return _certificate(W, z, "graded", startable, levels, history)


def _shifted_correction(W, z, J0, r, front, shifts, n):
    """Kernel-direction correction at level front - s plus a level-front solve.

    Constraints: the pair must cancel the level-front residual and must not
    create residual at any intermediate level. Returns (level, xi, delta) for
    the first consistent shift, else None.
    """
    K = _kernel_basis(J0)
    if K.shape[1] == 0:
        return None
    Jhat = _normalized_jacobian(W, z)
    jac_levels = sorted({e for row in Jhat for s in row for e, _ in s.terms})
    rnorm = max(np.linalg.norm(r), 1e-300)
    for s in shifts:
        if not 0 < s < front:
            continue
        A_s = _jacobian_level(Jhat, s, n) @ K
        blocks = [np.hstack([J0, A_s])]
        rhs = [-r]
        for sp in jac_levels:
            if 0 < sp < s:
                blocks.append(
                    np.hstack([np.zeros((n, n)), _jacobian_level(Jhat, sp, n) @ K])
                )
                rhs.append(np.zeros(n))
        A = np.vstack(blocks)
        b = np.concatenate(rhs)
        sol, *_ = np.linalg.lstsq(A, b, rcond=None)
        if np.linalg.norm(A @ sol - b) <= LSTSQ_CONSISTENCY * rnorm:
            delta = sol[:n]
            xi = K @ sol[n:]
            return front - s, xi, delta
    return None


# -- pipeline -----------------------------------------------------------------


def _lift_candidate(P, cand, alpha, truncation, seed, starts):
    lam = cand.fiber
    D = Fraction(truncation) if truncation is not None else default_truncation(P, lam)
    W = build_potential(P, lam, alpha, truncation=D)
    try:
        sys = leading_system(W)
    except DegenerateDirection:
        return []
    certs = []
    for zeta in solve_leading(sys, seed=seed, starts=starts):
        try:
            cert = newton_lift(W, zeta)
        except (SingularLeadingHessian, NoConvergence):
            try:
                cert = graded_lift(W, zeta)
            except (Inconsistent, SingularLeadingHessian, NoConvergence):
                continue
        # independent recheck of the certificate invariant
        g = eval_gradient(W, cert.z)
        if not all(gj.is_zero() for gj in g):
            continue
        certs.append(cert)
    return certs


def _leading_key(cert: CriticalCertificate):
    return tuple(
        (round(zj.leading().real, 9), round(zj.leading().imag, 9)) for zj in cert.z
    )


def _dedup_certificates(certs: list[CriticalCertificate]) -> list[CriticalCertificate]:
    certs = sorted(certs, key=lambda c: (c.fiber, _leading_key(c)))
    kept: list[CriticalCertificate] = []
    for cert in certs:
        dup = False
        for other in kept:
            if other.fiber != cert.fiber:
                continue
            dist = max(
                abs(a.leading() - b.leading()) for a, b in zip(cert.z, other.z)
            )
            if dist < CERT_DEDUP_TOL:
                dup = True
                break
        if not dup:
            kept.append(cert)
    return kept


def find_critical_fibers(
    P: MomentPolytope,
    alpha=None,
    truncation=None,
    seed: int = 0,
    starts: int | None = None,
) -> list[CriticalCertificate]:
    """All certified critical fibers: candidates -> leading roots -> lifts."""
    certs = []
    for cand in tropical_candidates(P, alpha):
        certs.extend(_lift_candidate(P, cand, alpha, truncation, seed, starts))
    return _dedup_certificates(certs)


def certificates_at_fiber(
    P: MomentPolytope,
    lam,
    alpha=None,
    truncation=None,
    seed: int = 0,
    starts: int | None = None,
) -> list[CriticalCertificate]:
    """Run the lifting pipeline at one user-supplied fiber only."""
    lam = tuple(Fraction(x) for x in lam)
    if not is_interior(P, lam):
        return []
    minima = _candidate_minima(P, lam)
    if minima is None:
        return []
    cand = TropicalCandidate(lam, (), minima, True)
    return _dedup_certificates(_lift_candidate(P, cand, alpha, truncation, seed, starts))
