"""Asymptotic coefficients at the irregular singular point and the exact phase at eigenvalues.

With ``zeta = x^2`` the formal solutions at infinity carry coefficients
``p_k`` from a four-term recurrence. The Stokes constant is
``P = lim p_k / ((k-1)! p_0)``; at eigenvalues, trivial monodromy forces
``P = -1/pi`` and the far-field phase ``3pi/4 (mod pi)``.

The recurrence is run on ``s_k = p_k/(k-1)!`` so the factorial growth cancels.
``s_k`` approaches ``P`` like ``c/k`` with ``c`` of order ``beta``, so the limit
is taken by polynomial extrapolation in ``1/k``. Before settling, ``s_k``
swells by many orders of magnitude for large ``beta``; the run is repeated at
higher precision whenever that swelling eats into the working digits.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath

from .model import ModeParams
from .wkb import PhaseEstimate

__all__ = [
    "AsymptoticCoeffs",
    "PResult",
    "RelabelRule",
    "RELABEL_RULES",
    "GAMMA_EIGEN",
    "P_EIGEN",
    "p_recurrence",
    "raw_coefficients",
    "scaled_coefficients",
    "neville_at_zero",
    "compute_P",
    "phase_label",
    "exact_phase_at_eigenvalue",
]

GAMMA_EIGEN = 0.75 * math.pi
P_EIGEN = -1.0 / math.pi
P_TOL = 1e-10
K_MAX = 64000
NEVILLE_POINTS = 12


@dataclass(frozen=True)
class AsymptoticCoeffs:
    """``scaled[k] = p_k/((k-1)! p_0)`` for ``k >= 1`` (index 0 unused); ``P_est`` is their limit.

    ``head`` holds the unscaled ``p_0..p_3``.
    """

    scaled: tuple
    K: int
    P_est: float
    dps: int
    head: tuple


@dataclass(frozen=True)
class PResult:
    """Stokes constant with two extrapolations from different node sets and the run metadata."""

    P: float
    P_alt: float
    P_plain: float
    K: int
    dps: int
    converged: bool
    hump_digits: float


def _coeffs(k, beta, jj1, q):
    A = (k * (k + 1) - 4 * beta - 4 * jj1 - mpmath.mpf(3) / 4) / (k + 1)
    B = 32 * beta * (k + q) / (k + 1)
    C = -32 * beta * (k * k + (2 * q - 1) * k - q + mpmath.mpf(1) / 4) / (k + 1)
    return A, B, C


def raw_coefficients(p: ModeParams, K: int, *, beta=None, dps: int = 30) -> list:
    """Unscaled ``p_0..p_K`` with ``p_0 = 1`` (overflows nothing in mpmath; use for small ``K``)."""
    if K < 3:
        raise ValueError("K must be at least 3")
    with mpmath.workdps(dps):
        b = mpmath.mpf(p.beta if beta is None else beta)
        out = [mpmath.mpf(0), mpmath.mpf(0), mpmath.mpf(1)]
        for k in range(K):
            A, B, C = _coeffs(k, b, p.jj1, p.q)
            out.append(A * out[-1] + B * out[-2] + C * out[-3])
        return out[2:]


def scaled_coefficients(p: ModeParams, K: int, *, beta=None, dps: int = 60) -> list:
    """``s_1..s_K`` (list index = k, index 0 is ``None``) from the factorial-free recurrence.

    ``s_{k+1} = A_k s_k/k + B_k s_{k-1}/(k(k-1)) + C_k s_{k-2}/(k(k-1)(k-2))``.
    """
    head = raw_coefficients(p, 3, beta=beta, dps=dps)
    with mpmath.workdps(dps):
        b = mpmath.mpf(p.beta if beta is None else beta)
        s = [None, head[1], head[2], head[3] / 2]
        for k in range(3, K):
            A, B, C = _coeffs(k, b, p.jj1, p.q)
            s.append(A * s[k] / k + B * s[k - 1] / (k * (k - 1)) + C * s[k - 2] / (k * (k - 1) * (k - 2)))
        return s


def neville_at_zero(xs, ys):
    """Value at ``x = 0`` of the interpolating polynomial through ``(xs, ys)``."""
    T = list(ys)
    n = len(xs)
    for m in range(1, n):
        for i in range(n - m):
            T[i] = (xs[i + m] * T[i] - xs[i] * T[i + 1]) / (xs[i + m] - xs[i])
    return T[0]


def _extrapolate(s, K, points):
    ks = [int(K / 2 + (K / 2) * i / (points - 1)) for i in range(points)]
    return neville_at_zero([mpmath.mpf(1) / k for k in ks], [s[k] for k in ks])


def p_recurrence(p: ModeParams, K: int, *, beta=None, dps: int = 60) -> AsymptoticCoeffs:
    """Scaled coefficients up to ``K`` with the extrapolated limit on ``[K/2, K]``."""
    if K < 3:
        raise ValueError("K must be at least 3")
    s = scaled_coefficients(p, K, beta=beta, dps=dps)
    head = tuple(float(v) for v in raw_coefficients(p, 3, beta=beta, dps=dps))
    with mpmath.workdps(dps):
        est = float(_extrapolate(s, K - 1, NEVILLE_POINTS)) if K > 2 * NEVILLE_POINTS else float(s[K - 1])
    return AsymptoticCoeffs(tuple(s), K, est, dps, head)


def compute_P(p: ModeParams, K: int | None = None, *, beta=None, P_tol: float = P_TOL,
              K_max: int = K_MAX, dps: int | None = None) -> PResult:
    """``lim s_k`` by Neville extrapolation in ``1/k`` on ``[K/2, K]``, doubling ``K``.

    Stops when successive doublings agree to ``P_tol * |P|``. ``P_alt`` uses
    the disjoint window ``[K/4, K/2]`` as an independent estimate; ``P_plain``
    is ``s_K`` itself. Pass ``beta`` with more digits than a float when ``p``
    is an eigenvalue.
    """
    b = float(p.beta if beta is None else beta)
    K = max(500, int(10 * b)) if K is None else K
    dps = 40 + int(math.sqrt(32.0 * b) / math.log(10.0)) if dps is None else dps
    prev = None
    while True:
        s = scaled_coefficients(p, K, beta=beta, dps=dps)
        with mpmath.workdps(dps):
            hump = max(abs(v) for v in s[1:])
            tail = abs(s[K - 1]) or mpmath.mpf(1)
            hump_digits = float(mpmath.log10(hump / tail))
            if hump_digits > dps - 25:
                dps = int(hump_digits) + 40
                continue
            est = _extrapolate(s, K - 1, NEVILLE_POINTS)
            alt = _extrapolate(s, (K - 1) // 2, NEVILLE_POINTS)
            plain = s[K - 1]
        converged = prev is not None and abs(est - prev) <= P_tol * abs(est)
        if converged or 2 * K > K_max:
            return PResult(float(est), float(alt), float(plain), K, dps, converged, hump_digits)
        prev = est
        K *= 2


@dataclass(frozen=True)
class RelabelRule:
    """Families whose zero count is relabelled by ``l(n) = |n - 3/2| - 1/2``."""

    q: int
    j_min: int

    def applies(self, j: int, q: int) -> bool:
        return q == self.q and j >= self.j_min


RELABEL_RULES: tuple[RelabelRule, ...] = (RelabelRule(q=0, j_min=7), RelabelRule(q=1, j_min=9))


def phase_label(j: int, q: int, n: int, rules=RELABEL_RULES) -> int:
    """Branch integer ``l(n)`` for the ``n``-th eigenvalue (1-based)."""
    if n < 1:
        raise ValueError("eigenvalue index starts at 1")
    if any(r.applies(j, q) for r in rules):
        return int(abs(n - 1.5) - 0.5)
    return n


def exact_phase_at_eigenvalue(p: ModeParams, n: int, rules=RELABEL_RULES) -> PhaseEstimate:
    """``-pi/4 - l(n) pi - max(0, j-1) pi``; exact modulo pi."""
    delta = -0.25 * math.pi - phase_label(p.j, p.q, n, rules) * math.pi - max(0, p.j - 1) * math.pi
    return PhaseEstimate(delta, "monodromy", 0.0, None)
