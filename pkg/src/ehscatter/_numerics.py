"""Small numerical helpers shared across modules: bracketing, quadrature, local fits."""
from __future__ import annotations

import math
import warnings

import numpy as np
from scipy import integrate as _integrate

__all__ = [
    "QuadratureError",
    "bisect_root",
    "quad",
    "fixed_quad",
    "LocalPolynomial",
    "reduce_mod_pi",
]


class QuadratureError(ArithmeticError):
    """Adaptive quadrature did not reach the requested tolerance."""


def bisect_root(fun, lo: float, hi: float, xtol: float = 0.0, maxiter: int = 200) -> float:
    """Plain bisection on a bracket with ``fun(lo) < 0 < fun(hi)`` or the reverse."""
    flo, fhi = fun(lo), fun(hi)
    if flo == 0:
        return lo
    if fhi == 0:
        return hi
    if (flo > 0) == (fhi > 0):
        raise ValueError("bracket does not contain a sign change")
    for _ in range(maxiter):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi or hi - lo <= xtol:
            break
        fm = fun(mid)
        if fm == 0:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def quad(fun, a: float, b: float, *, epsabs: float = 1e-13, epsrel: float = 1e-11,
         limit: int = 400, accept: float | None = None, points=None, args=()) -> float:
    """Adaptive Gauss-Kronrod quadrature (QUADPACK) with a hard failure mode.

    Raises ``QuadratureError`` when the reported error exceeds ``accept``
    (default ``1e3 * max(epsabs, epsrel*|I|)`` with a floor of ``1e-9 |I|``).
    """
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", _integrate.IntegrationWarning)
        val, err = _integrate.quad(fun, a, b, args=args, epsabs=epsabs, epsrel=epsrel, limit=limit, points=points)
    if not math.isfinite(val):
        raise QuadratureError(f"non-finite quadrature result on [{a}, {b}]")
    tol = accept if accept is not None else max(1e3 * epsabs, 1e3 * epsrel * abs(val), 1e-9 * abs(val))
    if err > tol:
        raise QuadratureError(f"quadrature error estimate {err:.3g} exceeds {tol:.3g} on [{a}, {b}]")
    return val


_GL_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def fixed_quad(fun, a: float, b: float, n: int = 64, panels: int = 4) -> float:
    """Composite Gauss-Legendre rule for smooth integrands."""
    if n not in _GL_CACHE:
        _GL_CACHE[n] = np.polynomial.legendre.leggauss(n)
    x, w = _GL_CACHE[n]
    edges = np.linspace(a, b, panels + 1)
    total = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        half, mid = 0.5 * (hi - lo), 0.5 * (hi + lo)
        total += half * math.fsum(wi * fun(mid + half * xi) for xi, wi in zip(x, w))
    return float(total)


class LocalPolynomial:
    """Polynomial stand-in for a function near a point where direct evaluation cancels.

    ``fun`` takes the offset ``t`` from the expansion point. The polynomial is
    fitted on offsets ``radius * [1, 3]`` (and their negatives when
    ``two_sided``) and is meant to be used for ``|t| < radius``.
    """

    def __init__(self, fun, radius: float, *, two_sided: bool, degree: int = 4):
        self.radius = radius
        span = np.linspace(1.0, 3.0, degree + 2) * radius
        nodes = np.concatenate([-span[::-1], span]) if two_sided else span
        vals = np.array([fun(t) for t in nodes])
        self.coef = np.polynomial.polynomial.polyfit(nodes / radius, vals, degree)
        self.overlap_error = float(np.max(np.abs(
            np.polynomial.polynomial.polyval(nodes / radius, self.coef) - vals)))

    def inside(self, t: float) -> bool:
        return abs(t) < self.radius

    def __call__(self, t: float) -> float:
        return float(np.polynomial.polynomial.polyval(t / self.radius, self.coef))


def reduce_mod_pi(x: float) -> float:
    """Representative of ``x`` modulo pi in ``(-pi/2, pi/2]``."""
    r = math.remainder(x, math.pi)
    if r <= -0.5 * math.pi:
        r += math.pi
    return r
