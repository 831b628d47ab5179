"""Radial equation, mode parameters and WKB case classification.

The radial amplitude ``A(z)`` on ``z > 1`` obeys

    d/dz[(z^2 - 1) dA/dz] + [beta*z - j(j+1) - q^2/(z^2 - 1)] A = 0,

which after ``A = (z^2-1)^{-1/2} w`` becomes ``w'' = [-u^2 f(z) + g(z)] w`` with
``u^2 = beta`` and

    f(z) = ((z - a)(z^2 - 1) - b) / (z^2 - 1)^2,     g(z) = -1/(z^2 - 1)^2,

where ``a = j(j+1)/beta`` and ``b = q^2/beta``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from ._numerics import bisect_root, fixed_quad

__all__ = [
    "ModeParams",
    "CaseTag",
    "WkbCase",
    "coeff_f",
    "coeff_f_raw",
    "coeff_g",
    "f_derivatives",
    "transition_point",
    "case_II_alpha",
    "classify_case",
    "ode_residual",
]

TOL_CASE = 1e-12


@dataclass(frozen=True)
class ModeParams:
    """Quantum numbers ``(j, q)`` and spectral parameter ``beta``.

    ``beta`` may be given as an ``int`` or ``Fraction``; the exact value is
    then kept in ``beta_exact`` for the ``a == 1`` test.
    """

    j: int
    q: int
    beta: float
    beta_exact: Fraction | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if isinstance(self.j, bool) or int(self.j) != self.j or self.j < 0:
            raise ValueError(f"j must be a non-negative integer, got {self.j!r}")
        if isinstance(self.q, bool) or int(self.q) != self.q or not 0 <= self.q <= self.j:
            raise ValueError(f"q must be an integer with 0 <= q <= j, got q={self.q!r}, j={self.j!r}")
        exact = self.beta_exact
        if exact is None and isinstance(self.beta, (int, Fraction)) and not isinstance(self.beta, bool):
            exact = Fraction(self.beta)
        beta = float(self.beta)
        if not (beta > 0.0 and math.isfinite(beta)):
            raise ValueError(f"beta must be positive and finite, got {self.beta!r}")
        object.__setattr__(self, "j", int(self.j))
        object.__setattr__(self, "q", int(self.q))
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "beta_exact", exact)

    @property
    def jj1(self) -> int:
        return self.j * (self.j + 1)

    @cached_property
    def a(self) -> float:
        return self.jj1 / self.beta

    @cached_property
    def b(self) -> float:
        return self.q**2 / self.beta

    @cached_property
    def u(self) -> float:
        return math.sqrt(self.beta)

    @property
    def mu(self) -> int:
        return self.q * (self.q + 1) - self.jj1

    def with_beta(self, beta) -> "ModeParams":
        return ModeParams(self.j, self.q, beta)


class CaseTag(str, enum.Enum):
    I = "I"
    II = "II"
    III = "III"
    IV = "IV"


@dataclass(frozen=True)
class WkbCase:
    """Case tag with its transform data.

    ``z0`` is the transition point (case I) or the turning point ``a``
    (case II); ``alpha`` is nonzero only in case II.
    """

    tag: CaseTag
    z0: float | None = None
    alpha: float = 0.0


def coeff_f_raw(a: float, b: float, z):
    """The rational function ``f`` for any ``z != +-1``."""
    z2m1 = z * z - 1.0
    return ((z - a) * z2m1 - b) / (z2m1 * z2m1)


def coeff_f(p: ModeParams, z: float) -> float:
    """``f(z)`` on the physical branch ``z > 1``."""
    if z == 1.0 or z == -1.0:
        raise ValueError("f is singular at z = +-1")
    return coeff_f_raw(p.a, p.b, z)


def coeff_g(z):
    return -1.0 / (z * z - 1.0) ** 2


def f_derivatives(a: float, b: float, z, t=None):
    """Return ``(f, f', f'')`` from the exact partial-fraction form.

    ``f = c1/(z-1) + c2/(z-1)^2 + c3/(z+1) + c4/(z+1)^2``; differentiating the
    partial fractions avoids finite differences near the poles. Pass
    ``t = z - 1`` when it is known more accurately than ``z``.
    """
    c1 = 0.5 * (1.0 - a) + 0.25 * b
    c3 = 0.5 * (1.0 + a) - 0.25 * b
    c2 = c4 = -0.25 * b
    zm = z - 1.0 if t is None else t
    zp = zm + 2.0
    f0 = c1 / zm + c2 / zm**2 + c3 / zp + c4 / zp**2
    f1 = -c1 / zm**2 - 2 * c2 / zm**3 - c3 / zp**2 - 2 * c4 / zp**3
    f2 = 2 * c1 / zm**3 + 6 * c2 / zm**4 + 2 * c3 / zp**3 + 6 * c4 / zp**4
    return f0, f1, f2


def transition_point(a: float, b: float) -> float:
    """Unique root of ``(z-a)(z^2-1) = b`` on ``(max(1, a), inf)`` for ``b > 0``."""
    if b <= 0:
        raise ValueError("a transition point requires b > 0")

    def h(z):
        return (z - a) * (z * z - 1.0) - b

    lo = max(1.0, a)
    hi = lo + 1.0
    while h(hi) <= 0:
        hi = lo + 2.0 * (hi - lo)
    return bisect_root(h, lo, hi, xtol=4e-16 * hi)


def case_II_alpha(a: float) -> float:
    """``alpha = (2/pi) * int_1^a sqrt((a-t)/(t^2-1)) dt`` for ``a > 1``.

    With ``t = 1 + (a-1) sin^2(th)`` the integrand becomes the smooth
    ``2 (a-1) cos^2(th) / sqrt((a-1) sin^2(th) + 2)`` on ``[0, pi/2]``.
    """
    if a <= 1:
        raise ValueError("alpha is defined for a > 1")
    d = a - 1.0

    def integrand(th):
        c = math.cos(th)
        return 2.0 * d * c * c / math.sqrt(d * math.sin(th) ** 2 + 2.0)

    return (2.0 / math.pi) * fixed_quad(integrand, 0.0, 0.5 * math.pi)


def is_case_III(p: ModeParams, tol_case: float = TOL_CASE) -> bool:
    if p.q != 0:
        return False
    if p.beta_exact is not None:
        return p.beta_exact == p.jj1
    return abs(p.a - 1.0) <= tol_case


def classify_case(p: ModeParams, tol_case: float = TOL_CASE) -> WkbCase:
    """Assign the WKB case; every ``q >= 1`` has a transition point."""
    if p.q >= 1:
        return WkbCase(CaseTag.I, z0=transition_point(p.a, p.b))
    if is_case_III(p, tol_case):
        return WkbCase(CaseTag.III)
    if p.a > 1.0:
        return WkbCase(CaseTag.II, z0=p.a, alpha=case_II_alpha(p.a))
    return WkbCase(CaseTag.IV)


def ode_residual(j: int, q: int, beta: float, phi, dphi, d2phi, z):
    """Residual of the radial equation for a trial function given with derivatives."""
    z2m1 = z * z - 1.0
    return z2m1 * d2phi + 2.0 * z * dphi + (beta * z - j * (j + 1) - q * q / z2m1) * phi
