"""Continued fraction whose zeros are the eigenvalues, and the eigenvalue search.

    M(j,q|x) = d_0 + c_1/(d_1 + c_2/(d_2 + ...)),
    d_k = k(k+2q+1) + mu - x,   c_k = 2k(k+q)x.

Values are computed only by the backward (tail-first) recurrence; the forward
Wallis recurrence is kept as a shallow-depth oracle. Zeros at ``x = beta`` are
the parameters for which the Frobenius coefficients are the minimal solution.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
import numpy as np
from scipy import optimize

from .frobenius import decay_digits, minimality_diagnostic, required_dps
from .model import ModeParams

__all__ = [
    "CfEvaluation",
    "EigenvalueList",
    "PoleProximityError",
    "InsufficientRangeError",
    "cf_terms",
    "eval_M",
    "eval_M_array",
    "eval_M_mp",
    "wallis_M",
    "eval_m_reduced",
    "reduced_terms",
    "pincherle_tail",
    "find_eigenvalues",
    "refine_eigenvalue",
    "certify_eigenvalue",
    "depth_for_digits",
    "condition_scale",
    "signed_numerator_array",
    "bracket_sign_changes",
    "classify_sign_changes",
    "residual_mp",
]

CF_TOL = 1e-13
N_MAX = 1 << 14
RESIDUAL_TOL = 1e-8
BETA_TOL = 1e-10
SCAN_STEP = 0.05
CERT_K = 400


class PoleProximityError(ArithmeticError):
    """A backward denominator came within ``pole_guard`` of zero."""

    def __init__(self, k: int, value: float):
        super().__init__(f"denominator at k={k} is {value:.3g}")
        self.k = k
        self.value = value


class InsufficientRangeError(ValueError):
    """Fewer eigenvalues than requested were found below ``beta_max``."""

    def __init__(self, found, requested: int, beta_max: float):
        super().__init__(f"found {len(found)} of {requested} eigenvalues below beta_max={beta_max}")
        self.found = found


@dataclass(frozen=True)
class CfEvaluation:
    value: float
    depth: int
    converged: bool
    delta_last: float
    min_denominator: float = math.inf
    min_denominator_k: int = 0


@dataclass(frozen=True)
class EigenvalueList:
    """Positive zeros of ``M(j,q|.)`` in ascending order with their certificates.

    ``betas_hp`` holds the multiprecision zeros as decimal strings; ``ratio_tails``
    are the Frobenius tail ratios at those values.
    """

    params: tuple[int, int]
    betas: tuple[float, ...]
    residuals: tuple[float, ...]
    betas_hp: tuple[str, ...] = ()
    ratio_tails: tuple[float, ...] = ()
    minimal_flags: tuple[bool, ...] = ()


def _mu(j: int, q: int) -> int:
    return q * (q + 1) - j * (j + 1)


def cf_terms(j: int, q: int, x, k):
    """``(d_k, c_k)``; ``c_0`` is returned as 0."""
    d = k * (k + 2 * q + 1) + _mu(j, q) - x
    c = 2 * k * (k + q) * x
    return d, c


def _backward(j, q, x, N):
    mu = _mu(j, q)
    t = 0.0
    min_den, min_k = math.inf, 0
    for k in range(N, 0, -1):
        den = k * (k + 2 * q + 1) + mu - x + t
        if abs(den) < min_den:
            min_den, min_k = abs(den), k
        t = 2 * k * (k + q) * x / den
    return mu - x + t, min_den, min_k


def depth_for_digits(x: float, q: int, digits: float, start: int = 16) -> int:
    """Smallest depth whose tail contracts by ``digits`` decimal digits (estimate)."""
    if x == 0:
        return start  # every c_k vanishes
    N = max(start, int(math.sqrt(2.0 * abs(x))) + start)
    while decay_digits(x, q, N) < digits:
        N = int(N * 1.25) + 1
    return N


def eval_M(jq, x: float, N: int | None = None, *, cf_tol: float = CF_TOL, N_max: int = N_MAX,
           pole_guard: float = 0.0) -> CfEvaluation:
    """Backward evaluation with depth doubling until two depths agree to ``cf_tol``."""
    j, q = jq
    if N is None:
        N = depth_for_digits(x, q, 20)
    if N < 1:
        raise ValueError("depth must be at least 1")
    if x == 0:
        return CfEvaluation(float(_mu(j, q)), N, True, 0.0)
    prev, _, _ = _backward(j, q, x, N)
    while True:
        N2 = 2 * N
        val, min_den, min_k = _backward(j, q, x, N2)
        delta = val - prev
        converged = abs(delta) <= cf_tol * (1.0 + abs(val))
        if converged or N2 >= N_max:
            break
        prev, N = val, N2
    if min_den < pole_guard:
        raise PoleProximityError(min_k, min_den)
    return CfEvaluation(val, N2, converged, delta, min_den, min_k)


def eval_M_array(jq, xs, N: int) -> np.ndarray:
    """Vectorised backward evaluation at fixed depth (used by the scan)."""
    j, q = jq
    mu = _mu(j, q)
    xs = np.asarray(xs, dtype=float)
    t = np.zeros_like(xs)
    with np.errstate(divide="ignore", invalid="ignore"):
        for k in range(N, 0, -1):
            t = 2 * k * (k + q) * xs / (k * (k + 2 * q + 1) + mu - xs + t)
    return mu - xs + t


def eval_M_mp(jq, x, N: int):
    """Backward evaluation in the current ``mpmath`` precision."""
    j, q = jq
    mu = _mu(j, q)
    x = mpmath.mpf(x)
    t = mpmath.mpf(0)
    for k in range(N, 0, -1):
        t = 2 * k * (k + q) * x / (k * (k + 2 * q + 1) + mu - x + t)
    return mu - x + t


def wallis_M(jq, x: float, N: int) -> float:
    """Forward numerator/denominator recurrence; a test oracle at shallow depth."""
    j, q = jq
    d0, _ = cf_terms(j, q, x, 0)
    A_prev, A = 1.0, d0
    B_prev, B = 0.0, 1.0
    for k in range(1, N + 1):
        d, c = cf_terms(j, q, x, k)
        A_prev, A = A, d * A + c * A_prev
        B_prev, B = B, d * B + c * B_prev
    return A / B


def reduced_terms(j: int, q: int, k: int) -> tuple[float, float]:
    """``(F_k, G_k)`` of the reduced fraction, defined for ``k >= j - q + 1``."""
    k0 = j - q + 1
    if k < k0:
        raise ValueError(f"reduced terms start at k = {k0}")
    D = (k - j + q) * (k + j + q + 1)
    G = -1.0 / D
    if k == k0:
        return float(k0), G
    F = 2.0 * k * (k + q) / ((k - j + q - 1) * (k - j + q) * (k + j + q) * (k + j + q + 1))
    return F, G


@dataclass(frozen=True)
class ReducedEvaluation(CfEvaluation):
    over_x: float = 0.0


def _backward_reduced(j, q, x, N):
    k0 = j - q + 1
    t = 0.0
    for k in range(k0 + N, k0, -1):
        F, G = reduced_terms(j, q, k)
        t = F * x / (1.0 + G * x + t)
    F0, G0 = reduced_terms(j, q, k0)
    over_x = F0 / (1.0 + G0 * x + t)
    return over_x * x, over_x


def eval_m_reduced(jq, x: float, N: int = 64, *, cf_tol: float = CF_TOL,
                   N_max: int = N_MAX) -> ReducedEvaluation:
    """Tail ``m(j,q|x)`` of the fraction in separately convergent T-form.

    ``over_x`` is ``m/x``, finite at ``x = 0`` where it equals ``j - q + 1``.
    """
    j, q = jq
    if j < q:
        raise ValueError("requires j >= q")
    prev, _ = _backward_reduced(j, q, x, N)
    while True:
        N2 = 2 * N
        val, over_x = _backward_reduced(j, q, x, N2)
        delta = val - prev
        converged = abs(delta) <= cf_tol * (1.0 + abs(val))
        if converged or N2 >= N_max:
            break
        prev, N = val, N2
    return ReducedEvaluation(val, N2, converged, delta, over_x=over_x)


def pincherle_tail(jq, beta: float, N: int | None = None) -> float:
    """Backward value of ``g_1/(e_1 - g_2/(e_2 - ...))`` for the normalised recurrence.

    With ``e_k = [k(k+2q+1)+mu+beta]/((k+1)(k+q+1))`` and
    ``g_k = 2 beta/((k+1)(k+q+1))`` this equals ``-a_1/a_0`` of the minimal
    solution, so it matches ``e_0`` exactly at an eigenvalue.
    """
    j, q = jq
    mu = _mu(j, q)
    if N is None:
        N = depth_for_digits(beta, q, 20) * 2
    t = 0.0
    for k in range(N, 0, -1):
        n = (k + 1) * (k + q + 1)
        t = (2.0 * beta / n) / ((k * (k + 2 * q + 1) + mu + beta) / n - t)
    return t


def condition_scale(jq, x: float, N: int | None = None) -> float:
    """``|d_0| + sum_k |dM/dd_k| |d_k|``: the size of what cancels in ``M(x)``.

    Relative rounding ``eps`` in the partial denominators moves ``M`` by about
    ``eps * condition_scale``.
    """
    j, q = jq
    mu = _mu(j, q)
    N = depth_for_digits(x, q, 20) if N is None else N
    t = [0.0] * (N + 2)
    D = [0.0] * (N + 2)
    for k in range(N, 0, -1):
        D[k] = k * (k + 2 * q + 1) + mu - x + t[k + 1]
        t[k] = 2 * k * (k + q) * x / D[k]
    total, gain = abs(mu - x), 1.0
    for k in range(1, N + 1):
        gain *= -t[k] / D[k]
        total += abs(gain) * abs(k * (k + 2 * q + 1) + mu - x)
    return total


def signed_numerator_array(jq, xs, N: int) -> np.ndarray:
    """``M(x) * prod_k sign(d_k + t_{k+1})``.

    The product of the backward denominators is the denominator of the
    fraction, so this has the sign of its entire numerator: it changes sign
    at zeros of ``M`` and never at poles.
    """
    j, q = jq
    mu = _mu(j, q)
    xs = np.asarray(xs, dtype=float)
    t = np.zeros_like(xs)
    sgn = np.ones_like(xs)
    with np.errstate(divide="ignore", invalid="ignore"):
        for k in range(N, 0, -1):
            den = k * (k + 2 * q + 1) + mu - xs + t
            sgn *= np.sign(den)
            t = 2 * k * (k + q) * xs / den
    return (mu - xs + t) * sgn


def _scan_grid(x_lo: float, x_hi: float, step: float) -> np.ndarray:
    xs = [x_lo]
    while xs[-1] < x_hi:
        xs.append(xs[-1] + step * math.sqrt(max(xs[-1], 1.0)))
    return np.array(xs)


def bracket_sign_changes(fun, xs) -> list[tuple[float, float, float]]:
    """Brent roots ``(root, lo, hi)`` of every sign change of ``fun`` on the grid ``xs``."""
    vals = [fun(float(x)) for x in xs]
    out = []
    for i in range(len(xs) - 1):
        v0, v1 = vals[i], vals[i + 1]
        if not (math.isfinite(v0) and math.isfinite(v1)) or v0 == 0 or (v0 > 0) == (v1 > 0):
            continue
        lo, hi = float(xs[i]), float(xs[i + 1])
        r = optimize.brentq(fun, lo, hi, xtol=1e-15 * hi, rtol=1e-15, maxiter=300)
        out.append((r, lo, hi))
    return out


def classify_sign_changes(fun, xs, *, residual_tol: float = RESIDUAL_TOL, scale=None):
    """Split sign changes of a meromorphic ``fun`` into zeros and poles.

    A bracketed root counts as a zero when ``|fun(r)| <= residual_tol * scale(r)``
    (default scale ``1 + |r|``); at a pole Brent's method stops next to the
    singularity where ``|fun|`` is huge.
    """
    scale = (lambda r: 1.0 + abs(r)) if scale is None else scale
    zeros, poles = [], []
    for r, _, _ in bracket_sign_changes(fun, xs):
        (zeros if abs(fun(r)) <= residual_tol * scale(r) else poles).append(r)
    return zeros, poles


def residual_mp(jq, x: float) -> tuple[float, float]:
    """``(|M(x)|, |x M'(x)|)`` at the float ``x``, evaluated with enough digits to be exact."""
    q = jq[1]
    dps = 30 + int(math.log10(max(condition_scale(jq, x), 1.0)))
    N = depth_for_digits(x, q, dps)
    with mpmath.workdps(dps):
        xm = mpmath.mpf(x)
        val = eval_M_mp(jq, xm, N)
        der = mpmath.diff(lambda y: eval_M_mp(jq, y, N), xm)
        return float(abs(val)), float(abs(xm * der))


def _signed_numerator_mp(jq, x, N: int):
    j, q = jq
    mu = _mu(j, q)
    t = mpmath.mpf(0)
    sgn = 1
    for k in range(N, 0, -1):
        den = k * (k + 2 * q + 1) + mu - x + t
        if den < 0:
            sgn = -sgn
        t = 2 * k * (k + q) * x / den
    return (mu - x + t) * sgn


def scan_dps(jq, xs) -> int:
    """Digits that keep the scan exact: 25 plus the worst cancellation on the grid."""
    worst = max(condition_scale(jq, float(x)) for x in xs[:: max(1, len(xs) // 64)])
    worst = max(worst, condition_scale(jq, float(xs[-1])))
    return 25 + int(math.log10(max(worst, 1.0)))


def _scan(jq, x_lo, x_hi, step):
    """Brackets of sign changes of the numerator, each with its root to double precision."""
    q = jq[1]
    xs = _scan_grid(x_lo, x_hi, step)
    N = depth_for_digits(float(xs[-1]), q, 30)
    dps = scan_dps(jq, xs)
    out = []
    with mpmath.workdps(dps):
        f = lambda x: _signed_numerator_mp(jq, mpmath.mpf(x), N)  # noqa: E731
        vals = [f(x) for x in xs]
        for i in range(len(xs) - 1):
            v0, v1 = vals[i], vals[i + 1]
            if v0 == 0 or (v0 > 0) == (v1 > 0):
                continue
            lo, hi = float(xs[i]), float(xs[i + 1])
            root = mpmath.findroot(f, (mpmath.mpf(lo), mpmath.mpf(hi)), solver="anderson")
            out.append((float(root), lo, hi))
    return out


def refine_eigenvalue(jq, lo: float, hi: float, dps: int):
    """Zero of ``M`` in ``[lo, hi]`` to ``dps`` digits by Illinois false position in multiprecision."""
    q = jq[1]
    N = depth_for_digits(hi, q, dps + 10)
    with mpmath.workdps(dps + 10):
        f = lambda x: eval_M_mp(jq, x, N)  # noqa: E731
        a, b = mpmath.mpf(lo), mpmath.mpf(hi)
        fa, fb = f(a), f(b)
        if fa * fb > 0:
            raise ValueError("refinement bracket has no sign change")
        tol = mpmath.mpf(10) ** (-dps) * abs(b)
        for _ in range(400):
            c = b - fb * (b - a) / (fb - fa)
            fc = f(c)
            if fc == 0:
                b = c
                break
            if fc * fb < 0:
                a, fa = b, fb
            else:
                fa = fa / 2
            b, fb = c, fc
            if abs(b - a) < tol:
                break
        return +b


def _hp_bracket(jq, beta: float) -> tuple[float, float]:
    """Float bracket around ``beta`` whose endpoint signs are exact."""
    q = jq[1]
    width = 1e-12 * beta
    dps = 30 + int(math.log10(max(condition_scale(jq, beta), 1.0)))
    N = depth_for_digits(beta, q, dps)
    while width <= 1e-6 * beta:
        lo, hi = beta - width, beta + width
        with mpmath.workdps(dps):
            if eval_M_mp(jq, lo, N) * eval_M_mp(jq, hi, N) < 0:
                return lo, hi
        width *= 4.0
    raise ArithmeticError(f"no sign change around {beta}")


def certify_eigenvalue(jq, beta: float, cert_K: int = CERT_K):
    """Refine the zero next to ``beta`` and run the Frobenius tail test there.

    Returns ``(beta_hp, solution)`` with ``beta_hp`` a decimal string carrying
    the digits the tail test needs. Raises ``ArithmeticError`` if ``M`` has no
    sign change within ``1e-6`` relative of ``beta``.
    """
    j, q = jq
    dps = required_dps(beta, q, cert_K)
    root = refine_eigenvalue(jq, *_hp_bracket(jq, beta), dps)
    sol = minimality_diagnostic(ModeParams(j, q, beta), cert_K, beta=root, dps=dps)
    with mpmath.workdps(dps):
        return mpmath.nstr(root, dps, strip_zeros=False), sol


def find_eigenvalues(jq, count: int, beta_max: float | None = None, *, step: float = SCAN_STEP,
                     residual_tol: float = RESIDUAL_TOL, certify: bool = True,
                     cert_K: int = CERT_K) -> EigenvalueList:
    """First ``count`` positive zeros of ``M(j,q|.)``.

    The scan follows the sign of the fraction's numerator on steps
    ``step*sqrt(x)``, so poles never register. Each Brent root must then pass
    ``|M| <= residual_tol * |x M'|`` (relative root accuracy), evaluated in
    multiprecision. With ``certify`` each zero is refined to the precision the
    Frobenius tail test needs and the tail ratio is recorded.
    """
    j, q = jq
    if count < 1:
        raise ValueError("count must be >= 1")
    ModeParams(j, q, 1.0)
    limit = beta_max if beta_max is not None else 1e6
    x_hi = min(limit, max(50.0, 4.0 * (j + 1) ** 2))
    while True:
        roots = [r for r in _scan(jq, 0.1 * step, x_hi, step) if r[0] > 0]
        if len(roots) >= count or x_hi >= limit:
            break
        x_hi = min(limit, 2.0 * x_hi)
    betas, residuals = [], []
    for r, _, _ in roots:
        res, sens = residual_mp(jq, r)
        if res <= residual_tol * max(sens, 1.0):
            betas.append(float(r))
            residuals.append(res)
        if len(betas) == count:
            break
    if len(betas) < count:
        raise InsufficientRangeError(tuple(betas), count, limit)
    if not certify:
        return EigenvalueList((j, q), tuple(betas), tuple(residuals))
    hp, tails, flags = [], [], []
    for b in betas:
        root, sol = certify_eigenvalue(jq, b, cert_K)
        hp.append(root)
        tails.append(sol.ratio_tail)
        flags.append(sol.minimal_flag)
    return EigenvalueList((j, q), tuple(betas), tuple(residuals), tuple(hp), tuple(tails), tuple(flags))
