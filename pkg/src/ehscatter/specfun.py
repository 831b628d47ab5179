"""Special functions for the WKB approximations and their error bounds.

Elliptic integrals use Carlson's symmetric forms with the modulus convention
``E(k) = int_0^{pi/2} sqrt(1 - k^2 sin^2 t) dt``. Bessel and Airy values come
from the Cephes/AMOS routines in :mod:`scipy.special`; the auxiliary modulus,
weight and phase functions are assembled here. The confluent hypergeometric
series is summed directly and falls back to multiprecision when cancellation
is severe.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

import mpmath
import numpy as np
from scipy import special as _sp
from scipy.optimize import brentq, minimize_scalar

__all__ = [
    "carlson_rf",
    "carlson_rd",
    "ellip_F",
    "ellip_E",
    "ellip_K",
    "ellip_Ecomp",
    "bessel_J0",
    "bessel_Y0",
    "bessel_J0_prime",
    "bessel_Y0_prime",
    "airy_Ai",
    "airy_Bi",
    "airy_Ai_prime",
    "airy_Bi_prime",
    "PrecisionWarning",
    "kummer_M",
    "whittaker_M0",
    "arg_gamma_half_line",
    "BesselAux",
    "AiryAux",
    "bessel_aux",
    "airy_aux",
    "BESSEL_SPLICE",
    "AIRY_SPLICE",
    "omega0",
    "scan_olver_constants",
    "olver_constants",
]


# --------------------------------------------------------------------------
# Elliptic integrals
# --------------------------------------------------------------------------

def carlson_rf(x: float, y: float, z: float) -> float:
    """Carlson's ``R_F(x, y, z)`` by duplication; at most one argument may vanish."""
    if min(x, y, z) < 0 or (x == 0) + (y == 0) + (z == 0) > 1:
        raise ValueError("R_F needs non-negative arguments with at most one zero")
    while True:
        am = (x + y + z) / 3.0
        X, Y = 1.0 - x / am, 1.0 - y / am
        Z = -(X + Y)
        if max(abs(X), abs(Y), abs(Z)) < 1e-3:
            break
        sx, sy, sz = math.sqrt(x), math.sqrt(y), math.sqrt(z)
        lam = sx * sy + sy * sz + sz * sx
        x, y, z = 0.25 * (x + lam), 0.25 * (y + lam), 0.25 * (z + lam)
    e2 = X * Y - Z * Z
    e3 = X * Y * Z
    return (1 - e2 / 10 + e3 / 14 + e2 * e2 / 24 - 3 * e2 * e3 / 44
            - 5 * e2**3 / 208 + 3 * e3 * e3 / 104 + e2 * e2 * e3 / 16) / math.sqrt(am)


def carlson_rd(x: float, y: float, z: float) -> float:
    """Carlson's ``R_D(x, y, z)`` by duplication; ``z > 0`` and at most one of x, y zero."""
    if min(x, y) < 0 or z <= 0 or (x == 0 and y == 0):
        raise ValueError("R_D needs x, y >= 0 (not both zero) and z > 0")
    fac, acc = 1.0, 0.0
    while True:
        am = (x + y + 3.0 * z) / 5.0
        X, Y = 1.0 - x / am, 1.0 - y / am
        Z = -(X + Y) / 3.0
        if max(abs(X), abs(Y), abs(Z)) < 1e-3:
            break
        sx, sy, sz = math.sqrt(x), math.sqrt(y), math.sqrt(z)
        lam = sx * sy + sy * sz + sz * sx
        acc += fac / (sz * (z + lam))
        x, y, z = 0.25 * (x + lam), 0.25 * (y + lam), 0.25 * (z + lam)
        fac *= 0.25
    e2 = X * Y - 6 * Z * Z
    e3 = (3 * X * Y - 8 * Z * Z) * Z
    e4 = 3 * (X * Y - Z * Z) * Z * Z
    e5 = X * Y * Z**3
    series = (1 - 3 * e2 / 14 + e3 / 6 + 9 * e2 * e2 / 88 - 3 * e4 / 22
              - 9 * e2 * e3 / 52 + 3 * e5 / 26)
    return fac * series / (am * math.sqrt(am)) + 3 * acc


def _check_modulus(k: float) -> None:
    if not 0.0 <= k <= 1.0:
        raise ValueError(f"elliptic modulus must lie in [0, 1], got {k!r}")


def ellip_F(phi: float, k: float) -> float:
    """Incomplete integral of the first kind ``F(phi, k)``, ``0 <= phi <= pi/2``."""
    _check_modulus(k)
    s, c = math.sin(phi), math.cos(phi)
    if s == 0.0:
        return 0.0
    if k == 1.0 and c == 0.0:
        return math.inf
    return s * carlson_rf(c * c, 1.0 - k * k * s * s, 1.0)


def ellip_E(phi: float, k: float) -> float:
    """Incomplete integral of the second kind ``E(phi, k)``, ``0 <= phi <= pi/2``."""
    _check_modulus(k)
    s, c = math.sin(phi), math.cos(phi)
    if s == 0.0:
        return 0.0
    d2 = 1.0 - k * k * s * s
    if k == 1.0:
        return s
    return s * carlson_rf(c * c, d2, 1.0) - (k * k * s**3 / 3.0) * carlson_rd(c * c, d2, 1.0)


def ellip_K(k: float) -> float:
    """Complete integral ``K(k)``; ``+inf`` at ``k = 1``."""
    _check_modulus(k)
    if k == 1.0:
        return math.inf
    return carlson_rf(0.0, 1.0 - k * k, 1.0)


def ellip_Ecomp(k: float) -> float:
    """Complete integral ``E(k)``."""
    _check_modulus(k)
    if k == 1.0:
        return 1.0
    kc2 = 1.0 - k * k
    return carlson_rf(0.0, kc2, 1.0) - (k * k / 3.0) * carlson_rd(0.0, kc2, 1.0)


# --------------------------------------------------------------------------
# Bessel and Airy functions
# --------------------------------------------------------------------------

def bessel_J0(x):
    return _sp.j0(x)


def bessel_Y0(x):
    if np.any(np.asarray(x) <= 0):
        raise ValueError("Y0 requires x > 0")
    return _sp.y0(x)


def bessel_J0_prime(x):
    return -_sp.j1(x)


def bessel_Y0_prime(x):
    return -_sp.y1(x)


def airy_Ai(x):
    return _sp.airy(x)[0]


def airy_Ai_prime(x):
    return _sp.airy(x)[1]


def airy_Bi(x):
    return _sp.airy(x)[2]


def airy_Bi_prime(x):
    return _sp.airy(x)[3]


# --------------------------------------------------------------------------
# Confluent hypergeometric and Whittaker functions
# --------------------------------------------------------------------------

class PrecisionWarning(RuntimeWarning):
    """Emitted when a series loses more than six digits to cancellation."""


def _kummer_series(a, b, z, max_terms, eps, one):
    term = one
    total = one
    abs_sum = abs(one)
    quiet = 0
    for n in range(max_terms):
        term = term * (a + n) / ((b + n) * (n + 1)) * z
        total += term
        abs_sum += abs(term)
        if abs(term) <= eps * abs(total):
            quiet += 1
            if quiet >= 3 and abs(z) < (n + 1):
                return total, abs_sum, True
        else:
            quiet = 0
    return total, abs_sum, False


def kummer_M(a: complex, b: complex, z: complex, *, max_terms: int | None = None,
             extended: bool = True) -> complex:
    """Kummer's function ``M(a, b, z) = sum (a)_n z^n / ((b)_n n!)``.

    The series is summed until three consecutive terms fall below machine
    epsilon relative to the partial sum. If the ratio of the absolute series
    to the result (the cancellation condition) exceeds ``1e6``, the sum is
    redone in multiprecision with enough extra digits (``extended=True``) or
    a :class:`PrecisionWarning` is emitted.
    """
    b_c = complex(b)
    if b_c.imag == 0 and b_c.real <= 0 and b_c.real == int(b_c.real):
        raise ValueError("b must not be a non-positive integer")
    a, b, z = complex(a), b_c, complex(z)
    if max_terms is None:
        max_terms = int(60 + 4 * abs(z) + abs(a))
    val, abs_sum, ok = _kummer_series(a, b, z, max_terms, 1e-17, 1.0 + 0j)
    cond = abs_sum / abs(val) if val != 0 else math.inf
    if not ok:
        warnings.warn(f"Kummer series not converged after {max_terms} terms", PrecisionWarning,
                      stacklevel=2)
    if cond > 1e6:
        if not extended:
            warnings.warn(f"Kummer series cancellation condition {cond:.2g}", PrecisionWarning,
                          stacklevel=2)
            return val
        extra = math.log10(cond) if math.isfinite(cond) else abs(z) / math.log(10)
        with mpmath.workdps(int(25 + extra)):
            mval, _, _ = _kummer_series(mpmath.mpc(a), mpmath.mpc(b), mpmath.mpc(z),
                                        max_terms, mpmath.mpf(10) ** -20, mpmath.mpc(1))
            val = complex(mval)
    return val


def whittaker_M0(kappa: complex, z: complex) -> complex:
    """Whittaker ``M_{kappa,0}(z) = z^{1/2} e^{-z/2} M(1/2 - kappa, 1, z)`` (principal root)."""
    z = complex(z)
    return np.sqrt(z) * np.exp(-0.5 * z) * kummer_M(0.5 - kappa, 1.0, z)


def arg_gamma_half_line(t):
    """Continuous ``arg Gamma(1/2 + i t)`` (imaginary part of the principal log-Gamma)."""
    return np.imag(_sp.loggamma(0.5 + 1j * np.asarray(t, dtype=float)))


# --------------------------------------------------------------------------
# Auxiliary modulus, weight and phase functions
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class BesselAux:
    x: float
    M0: float
    E0: float
    theta0: float


@dataclass(frozen=True)
class AiryAux:
    x: float
    M: float
    E: float
    theta: float


def _splice_bessel() -> float:
    return brentq(lambda x: _sp.j0(x) + _sp.y0(x), 0.05, 0.6, xtol=1e-17, rtol=1e-15)


def _splice_airy() -> float:
    return brentq(lambda x: _sp.airy(x)[0] - _sp.airy(x)[2], -1.0, 0.0, xtol=1e-17, rtol=1e-15)


BESSEL_SPLICE = _splice_bessel()
"""Smallest positive root ``X0`` of ``J0 + Y0``."""

AIRY_SPLICE = _splice_airy()
"""Root ``c`` of ``Ai = Bi`` on the negative axis."""


def _unwrap_near(angle: float, guide: float) -> float:
    return guide + math.remainder(angle - guide, 2 * math.pi)


def bessel_aux(x: float) -> BesselAux:
    """Modulus, weight and phase with ``J0 = (M0/E0) cos th0``, ``Y0 = E0 M0 sin th0``."""
    if x <= 0:
        raise ValueError("bessel_aux requires x > 0")
    j0, y0 = float(_sp.j0(x)), float(_sp.y0(x))
    if x < BESSEL_SPLICE:
        return BesselAux(x, math.sqrt(-2.0 * y0 * j0), math.sqrt(-y0 / j0), -0.25 * math.pi)
    theta = _unwrap_near(math.atan2(y0, j0), x - 0.25 * math.pi)
    return BesselAux(x, math.hypot(j0, y0), 1.0, theta)


def _bessel_M0_sq(x: float) -> float:
    j0, y0 = float(_sp.j0(x)), float(_sp.y0(x))
    return -2.0 * y0 * j0 if x < BESSEL_SPLICE else j0 * j0 + y0 * y0


def airy_aux(x: float) -> AiryAux:
    """Modulus, weight and phase with ``Ai = (M/E) sin th``, ``Bi = E M cos th``."""
    if x >= 0:
        # exponentially scaled values Ai*exp(xi), Bi*exp(-xi)
        xi = 2.0 / 3.0 * x**1.5
        ai_s, _, bi_s, _ = (float(v) for v in _sp.airye(x))
        log_E = 0.5 * (math.log(bi_s) - math.log(ai_s)) + xi
        E = math.exp(log_E) if log_E < 700 else math.inf
        return AiryAux(x, math.sqrt(2.0 * ai_s * bi_s), E, 0.25 * math.pi)
    ai, _, bi, _ = (float(v) for v in _sp.airy(x))
    if x >= AIRY_SPLICE:
        return AiryAux(x, math.sqrt(2.0 * ai * bi), math.sqrt(bi / ai), 0.25 * math.pi)
    guide = 2.0 / 3.0 * (-x) ** 1.5 + 0.25 * math.pi
    return AiryAux(x, math.hypot(ai, bi), 1.0, _unwrap_near(math.atan2(ai, bi), guide))


def _airy_M_sq(x: float) -> float:
    if x >= 0:
        ai_s, _, bi_s, _ = _sp.airye(x)
        return 2.0 * float(ai_s) * float(bi_s)
    ai, _, bi, _ = _sp.airy(x)
    return float(2 * ai * bi) if x >= AIRY_SPLICE else float(ai * ai + bi * bi)


def omega0(x):
    """Weight ``(1 + x)/ln(e + 1/x)`` used in the logarithmic Bessel error bound."""
    return (1.0 + x) / np.log(math.e + 1.0 / x)


# --------------------------------------------------------------------------
# Error-bound constants
# --------------------------------------------------------------------------

_CONSTANT_FUNCTIONS = {
    "lambda_airy": (lambda x: math.pi * math.sqrt(abs(x)) * _airy_M_sq(x), 1.0),
    "lambda00": (lambda x: math.pi * x * _bessel_M0_sq(x), 2.0),
    "lambda01": (lambda x: math.pi * x * _bessel_M0_sq(x) * abs(math.cos(bessel_aux(x).theta0)), 2.0),
    "l00": (lambda x: math.pi * float(omega0(x)) * _bessel_M0_sq(x), 2.0),
    "l01": (lambda x: math.pi * float(omega0(x)) * abs(float(_sp.j0(x))) * bessel_aux(x).E0
            * bessel_aux(x).M0, 2.0),
}
"""Each entry: (function to maximize, its limit as the argument tends to infinity)."""


def _refined_sup(fun, grid: np.ndarray) -> tuple[float, float]:
    vals = np.array([fun(x) for x in grid])
    i = int(np.argmax(vals))
    best_x, best = float(grid[i]), float(vals[i])
    lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, len(grid) - 1)]
    if hi > lo:
        res = minimize_scalar(lambda x: -fun(x), bounds=(lo, hi), method="bounded",
                              options={"xatol": 1e-12 * max(1.0, abs(best_x))})
        if -res.fun > best:
            best_x, best = float(res.x), float(-res.fun)
    return best_x, best


def scan_olver_constants(points: int = 4000) -> dict[str, tuple[float, float]]:
    """Recompute the error-bound constants by grid scan plus golden-section refinement.

    Returns ``{name: (value, argmax)}``; an ``argmax`` of ``inf`` marks a
    supremum approached only asymptotically.
    """
    pos = np.logspace(-8, 5, points)
    out = {}
    for name, (fun, limit) in _CONSTANT_FUNCTIONS.items():
        grid = np.concatenate([-pos[::-1], pos]) if name == "lambda_airy" else pos
        x, val = _refined_sup(fun, grid)
        out[name] = (limit, math.inf) if limit >= val else (val, x)
    return out


@lru_cache(maxsize=1)
def olver_constants() -> dict[str, float]:
    """Frozen error-bound constants read from the packaged ``olver_constants.txt``."""
    text = resources.files("ehscatter.data").joinpath("olver_constants.txt").read_text()
    consts = {}
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            key, val = line.split("=")
            consts[key.strip()] = float(val)
    return consts
