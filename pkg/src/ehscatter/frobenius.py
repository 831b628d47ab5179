"""Frobenius series of the regular solution about the regular singular point.

With ``zeta = (z - 1)/2`` and ``A(z) = (z^2 - 1)^{q/2} u(zeta)`` the function
``u`` solves

    zeta (zeta + 1) u'' + (q + 1)(2 zeta + 1) u' + (beta (2 zeta + 1) + mu) u = 0,

and ``u = sum a_k zeta^k`` obeys a three-term recurrence. For generic ``beta``
the series has radius 1 (ratio ``a_{k+1}/a_k -> -1``); at eigenvalues the
coefficients form the minimal solution and decay like ``(-2 beta)^k/(k!)^2``.

Seeing the minimal branch in floating point is impossible: rounding excites the
dominant solution long before ``k = 400``. The certificate therefore runs the
recurrence in multiprecision, with ``beta`` known to matching precision.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
import numpy as np

from .model import ModeParams

__all__ = [
    "SeriesSolution",
    "SeriesValue",
    "SeriesDivergenceError",
    "decay_digits",
    "required_dps",
    "recurrence_step",
    "coefficients",
    "coefficients_mp",
    "series_solution",
    "minimality_diagnostic",
    "series_u_reg",
    "series_A",
    "series_seed",
]

RATIO_THRESHOLD = 0.05
RATIO_WINDOW = 10


class SeriesDivergenceError(ArithmeticError):
    """The series was requested outside its disk of convergence."""


@dataclass(frozen=True)
class SeriesSolution:
    """Coefficients ``a_0..a_K`` with the tail diagnostic.

    ``status`` is ``"minimal"``, ``"generic"`` (ratio near -1) or
    ``"inconclusive"``.
    """

    coeffs: tuple
    K: int
    ratio_tail: float
    minimal_flag: bool
    a0: float = 1.0
    status: str = "generic"
    dps: int | None = None


@dataclass(frozen=True)
class SeriesValue:
    value: float
    error_estimate: float
    terms: int


def decay_digits(beta: float, q: int, K: int) -> float:
    """Decimal digits by which a minimal solution decays relative to the dominant one by ``k = K``."""
    two_beta = 2.0 * abs(beta)
    total = 0.0
    for k in range(K):
        r = (k + 1) * (k + q + 1) / two_beta
        if r > 1.0:
            total += math.log10(r)
    return total


def required_dps(beta: float, q: int, K: int, margin: int = 30) -> int:
    """Working precision for a recurrence run to ``K`` that must resolve the minimal branch."""
    return int(decay_digits(beta, q, K)) + margin


def recurrence_step(p: ModeParams, k: int, a_k, a_km1, beta=None):
    """One step of the three-term recurrence; generic in the number type."""
    beta = p.beta if beta is None else beta
    q, mu = p.q, p.mu
    den = (k + 1) * (k + q + 1)
    return -((k * (k + 2 * q + 1) + mu) + beta) * a_k / den - 2 * beta * a_km1 / den


def coefficients(p: ModeParams, K: int, a0: float = 1.0) -> np.ndarray:
    """``a_0..a_K`` in double precision (the dominant branch swamps any minimal one)."""
    out = np.empty(K + 1)
    out[0] = a0
    prev, cur = 0.0, a0
    for k in range(K):
        prev, cur = cur, recurrence_step(p, k, cur, prev)
        out[k + 1] = cur
    return out


def coefficients_mp(p: ModeParams, K: int, beta=None, dps: int | None = None, a0=1) -> list:
    """``a_0..a_K`` as ``mpf`` at ``dps`` digits; ``beta`` may carry extra precision."""
    beta_f = float(p.beta if beta is None else beta)
    dps = required_dps(beta_f, p.q, K) if dps is None else dps
    with mpmath.workdps(dps):
        b = mpmath.mpf(p.beta) if beta is None else mpmath.mpf(beta)
        out = [mpmath.mpf(a0)]
        prev, cur = mpmath.mpf(0), out[0]
        for k in range(K):
            prev, cur = cur, recurrence_step(p, k, cur, prev, beta=b)
            out.append(cur)
    return out


def _classify_tail(ratios, threshold):
    tail = ratios[-1]
    if all(abs(r) < threshold for r in ratios):
        return True, "minimal", tail
    if all(abs(r + 1.0) < 0.05 for r in ratios):
        return False, "generic", tail
    return False, "inconclusive", tail


def series_solution(p: ModeParams, K: int = 400, *, beta=None, dps: int | None = None,
                    ratio_threshold: float = RATIO_THRESHOLD, window: int = RATIO_WINDOW) -> SeriesSolution:
    """Multiprecision coefficients with the minimal/generic classification of their tail."""
    if K < 50:
        raise ValueError("the tail diagnostic needs K >= 50")
    beta_f = float(p.beta if beta is None else beta)
    dps = required_dps(beta_f, p.q, K) if dps is None else dps
    coeffs = coefficients_mp(p, K, beta=beta, dps=dps)
    with mpmath.workdps(dps):
        ratios = [float(coeffs[k + 1] / coeffs[k]) for k in range(K - window, K)]
    flag, status, tail = _classify_tail(ratios, ratio_threshold)
    return SeriesSolution(tuple(coeffs), K, tail, flag, 1.0, status, dps)


def minimality_diagnostic(p: ModeParams, K: int = 400, *, beta=None, dps: int | None = None,
                          ratio_threshold: float = RATIO_THRESHOLD,
                          window: int = RATIO_WINDOW) -> SeriesSolution:
    """Decide whether the coefficients are the minimal solution of the recurrence.

    ``minimal_flag`` holds iff ``|a_{k+1}/a_k| < ratio_threshold`` over the
    last ``window`` steps. Pass the eigenvalue as ``beta`` (an ``mpf`` or a
    decimal string) with at least ``required_dps(beta, q, K)`` digits;
    otherwise the error in ``beta`` itself excites the dominant branch.
    """
    return series_solution(p, K, beta=beta, dps=dps, ratio_threshold=ratio_threshold, window=window)


def _sum_float(coeffs, zeta):
    """Horner-free partial sums with a geometric tail estimate."""
    total, power = 0.0, 1.0
    terms = []
    for c in coeffs:
        t = c * power
        terms.append(t)
        total += t
        power *= zeta
    last = abs(terms[-1])
    prev = abs(terms[-2]) if len(terms) > 1 else 0.0
    rho = last / prev if prev > 0 else 0.0
    err = last * rho / (1.0 - rho) if rho < 1 else math.inf
    return total, err


def series_u_reg(p: ModeParams, zeta: float, K: int | None = None, *, beta=None,
                 dps: int | None = None, solution: SeriesSolution | None = None) -> SeriesValue:
    """``u(zeta) = sum a_k zeta^k`` with a truncation estimate.

    Inside the unit disk double precision suffices. For ``|zeta| >= 1`` the
    coefficients must be the minimal solution; this is checked with
    :func:`minimality_diagnostic` and a :class:`SeriesDivergenceError` is
    raised if it fails. A ``solution`` from an earlier diagnostic is reused.
    """
    az = abs(zeta)
    if az < 1.0 and beta is None and solution is None:
        if K is None:
            K = 60 if az == 0 else max(60, int(math.ceil(-40.0 / math.log10(az))) + 20)
        total, err = _sum_float(coefficients(p, K), zeta)
        return SeriesValue(total, err, K + 1)
    if solution is None:
        K = 400 if K is None else K
        solution = minimality_diagnostic(p, max(K, 50), beta=beta, dps=dps)
    sol = solution
    if az >= 1.0 and not sol.minimal_flag:
        raise SeriesDivergenceError(
            f"|zeta| = {az} needs the minimal solution, tail ratio is {sol.ratio_tail:.3g}")
    with mpmath.workdps(sol.dps):
        zm = mpmath.mpf(zeta)
        total, power, last = mpmath.mpf(0), mpmath.mpf(1), mpmath.mpf(0)
        n = 0
        for n, c in enumerate(sol.coeffs):
            last = c * power
            total += last
            power *= zm
            if n > 10 and abs(last) < mpmath.mpf(10) ** -25 * abs(total):
                break
        err = float(abs(last))
        return SeriesValue(float(total), err, n + 1)


def series_A(p: ModeParams, z: float, **kwargs) -> float:
    """``A(z) = (z^2 - 1)^{q/2} u((z - 1)/2)``."""
    zeta = 0.5 * (z - 1.0)
    return (z * z - 1.0) ** (0.5 * p.q) * series_u_reg(p, zeta, **kwargs).value


def series_seed(p: ModeParams, zeta: float, terms: int = 20) -> tuple[float, float]:
    """``(u, du/dzeta)`` from the first ``terms`` coefficients (for small ``zeta``)."""
    a = coefficients(p, terms - 1)
    k = np.arange(terms)
    u = float(np.polynomial.polynomial.polyval(zeta, a))
    du = float(np.polynomial.polynomial.polyval(zeta, (k * a)[1:]))
    return u, du
