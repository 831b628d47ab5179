"""Liouville-Green (WKB) approximations: maps, phases, error bounds, eigenfunctions.

For each case the radial equation ``w'' = [-u^2 f + g] w`` is mapped by a
Liouville transformation ``z -> zeta`` onto a comparison equation solved by an
Airy (I), Whittaker (II), or Bessel (III, IV) function. The scattering phase
``Delta`` in ``A ~ z^{-3/4} sin(2 sqrt(beta z) + Delta)`` follows in closed form
and, except in case II, a Volterra-type bound on its error ``delta``.

Near an endpoint or transition point the remainder ``psi`` is a difference of
large terms; it is replaced there by a :class:`LocalPolynomial` fitted on
well-conditioned samples.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.optimize import brentq

from . import specfun
from ._numerics import LocalPolynomial, QuadratureError, quad
from .model import CaseTag, ModeParams, WkbCase, case_II_alpha, classify_case, f_derivatives, transition_point

__all__ = [
    "PhaseEstimate",
    "LiouvilleMap",
    "liouville_map",
    "phase_case_I",
    "phase_case_II",
    "phase_case_III",
    "phase_case_IV",
    "phase_wkb",
    "delta_case_I",
    "delta_case_II",
    "delta_case_III",
    "delta_case_IV",
    "eigenfunction_wkb",
    "QuadratureError",
]

LOCAL_RADIUS = 1e-2
_EPS_ZETA = dict(epsabs=0.0, epsrel=1e-13, limit=400)


@dataclass(frozen=True)
class PhaseEstimate:
    """A scattering phase with its provenance and error bound (``inf`` if none)."""

    delta_jq: float
    method: str
    err_bound: float = 0.0
    case: CaseTag | None = None

    def __post_init__(self):
        if not self.err_bound >= 0:
            raise ValueError("err_bound must be non-negative")


def _sqrt_abs_f(a, b, z):
    return math.sqrt(abs(((z - a) * (z * z - 1.0) - b))) / (z * z - 1.0)


def _sqrt_abs_f_t(a, b, t):
    """``sqrt|f|`` at ``z = 1 + t`` evaluated from ``t`` directly."""
    z2m1 = t * (t + 2.0)
    return math.sqrt(abs((1.0 - a + t) * z2m1 - b)) / z2m1


def _psi_terms(a, b, z, t=None):
    """Return ``(A, B)`` with ``(4ff'' - 5f'^2)/(16 f^3) = A`` and ``g/f = B``."""
    t = z - 1.0 if t is None else t
    f0, f1, f2 = f_derivatives(a, b, z, t)
    g = -1.0 / (t * (t + 2.0)) ** 2
    return (4 * f0 * f2 - 5 * f1 * f1) / (16 * f0**3), g / f0


class LiouvilleMap:
    """Map ``z -> zeta`` of one WKB case with derivative and remainder ``psi``.

    ``lhs(zeta)`` is the left side of the defining relation, normalised so
    that ``|d lhs(zeta(z))/dz| = sqrt|f(z)|``.
    """

    def __init__(self, a: float, b: float, case: WkbCase):
        self.a, self.b, self.case = a, b, case
        self.domain = (1.0, math.inf)

    def sqrt_abs_f(self, z):
        return _sqrt_abs_f(self.a, self.b, z)

    def zeta(self, z):
        raise NotImplementedError

    def dzeta(self, z):
        raise NotImplementedError

    def lhs(self, zeta):
        raise NotImplementedError

    def psi_direct(self, z):
        raise NotImplementedError

    def _check(self, z):
        if not z > 1.0:
            raise ValueError("the Liouville map is defined for z > 1")


# --------------------------------------------------------------------------
# Case I: simple transition point, Airy comparison equation
# --------------------------------------------------------------------------

class CaseIMap(LiouvilleMap):
    """``(2/3)(-zeta)^{3/2} = int_{z0}^z sqrt f`` for ``z >= z0``, and the mirror below.

    Internally points are addressed by their offset ``d = z - z0``, and the
    numerator of ``f`` is used in the factored form ``d * Q(z)``.
    """

    def __init__(self, a, b, case):
        super().__init__(a, b, case)
        self.z0 = case.z0
        self.zmid = 1.0 + 0.5 * (self.z0 - 1.0)
        self.radius = LOCAL_RADIUS * min(1.0, self.z0 - 1.0)

    def _Q(self, t):
        z0 = self.z0
        return t * t + t * z0 + z0 * z0 - self.a * (t + z0) - 1.0

    def _z2m1(self, d):
        tm1 = (self.z0 - 1.0) + d
        return tm1 * (tm1 + 2.0)

    def f_off(self, d):
        return d * self._Q(self.z0 + d) / self._z2m1(d) ** 2

    def _root_integrand(self, s, sign):
        # sqrt|f(z0 + sign s^2)| * 2s
        d = sign * s * s
        return 2.0 * s * s * math.sqrt(self._Q(self.z0 + d)) / self._z2m1(d)

    @cached_property
    def _s_mid(self) -> float:
        return math.sqrt(self.z0 - self.zmid)

    @cached_property
    def _upper_mid(self) -> float:
        return quad(self._root_integrand, 0.0, self._s_mid, args=(-1.0,), **_EPS_ZETA)

    def _int_minus_far(self, t):
        """``int_{1+t}^{zmid} sqrt(-f)`` in ``y = -ln(z - 1)``."""
        a, b = self.a, self.b

        def integrand(y):
            tm1 = math.exp(-y)
            return tm1 * _sqrt_abs_f_t(a, b, tm1)

        return quad(integrand, -math.log(self.zmid - 1.0), -math.log(t), **_EPS_ZETA)

    def zeta_t(self, t):
        """``zeta`` at ``z = 1 + t`` for ``z < zmid``."""
        return (1.5 * (self._upper_mid + self._int_minus_far(t))) ** (2.0 / 3.0)

    def zeta_off(self, d):
        if d >= 0:
            return -((1.5 * quad(self._root_integrand, 0.0, math.sqrt(d), args=(1.0,), **_EPS_ZETA))
                     ** (2.0 / 3.0))
        s = math.sqrt(-d)
        if s <= self._s_mid:
            return (1.5 * quad(self._root_integrand, 0.0, s, args=(-1.0,), **_EPS_ZETA)) ** (2.0 / 3.0)
        return self.zeta_t((self.z0 - 1.0) + d)

    def zeta(self, z):
        self._check(z)
        return self.zeta_off(z - self.z0)

    def _ratio_off(self, d):
        return -self.f_off(d) / self.zeta_off(d)

    @cached_property
    def _ratio_fit(self) -> LocalPolynomial:
        # -f/zeta is analytic and positive at z0
        return LocalPolynomial(self._ratio_off, self.radius, two_sided=True)

    def dzeta(self, z):
        self._check(z)
        d = z - self.z0
        r = self._ratio_fit(d) if self._ratio_fit.inside(d) else self._ratio_off(d)
        return -math.sqrt(r)

    def lhs(self, zeta):
        return (2.0 / 3.0) * abs(zeta) ** 1.5

    def psi_off(self, d, zeta=None):
        zeta = self.zeta_off(d) if zeta is None else zeta
        z = self.z0 + d
        f0 = self.f_off(d)
        _, f1, f2 = f_derivatives(self.a, self.b, z, (self.z0 - 1.0) + d)
        g = -1.0 / self._z2m1(d) ** 2
        return 5.0 / (16.0 * zeta * zeta) - ((4 * f0 * f2 - 5 * f1 * f1) / (16 * f0**3) + g / f0) * zeta

    def psi_t(self, t, zeta=None):
        zeta = self.zeta_t(t) if zeta is None else zeta
        t1, t2 = _psi_terms(self.a, self.b, 1.0 + t, t)
        return 5.0 / (16.0 * zeta * zeta) - (t1 + t2) * zeta

    @cached_property
    def _psi_fit(self) -> LocalPolynomial:
        return LocalPolynomial(self.psi_off, self.radius, two_sided=True)

    def _psi_at(self, d, zeta):
        return self._psi_fit(d) if self._psi_fit.inside(d) else self.psi_off(d, zeta)

    def psi(self, z):
        return self._psi_at(z - self.z0, None)

    def variation(self) -> float:
        """``(1/2) int |psi(v)| |v|^{-1/2} dv`` over the whole zeta axis."""

        def near(s, sign):
            # (1/2)|psi| sqrt|f| / |zeta| dz with z = z0 + sign s^2
            d = sign * s * s
            zeta = self.zeta_off(d)
            return 0.25 * abs(self._psi_at(d, zeta)) * self._root_integrand(s, sign) / abs(zeta)

        def below_far(y):
            tm1 = math.exp(-y)
            zeta = self.zeta_t(tm1)
            return 0.5 * abs(self.psi_t(tm1, zeta)) * _sqrt_abs_f_t(self.a, self.b, tm1) * tm1 / zeta

        opts = dict(epsabs=1e-12, epsrel=1e-9, limit=400)
        total = quad(near, 0.0, 4.0, args=(1.0,), **opts) + quad(near, 4.0, math.inf, args=(1.0,), **opts)
        total += quad(near, 0.0, self._s_mid, args=(-1.0,), **opts)
        # close to z = 1 the remainder tends to 5/(16 zeta^2); integrate in
        # y = -ln(z - 1) to a cutoff and add the exact tail (5/48) zeta^{-3/2}
        y0 = -math.log(self.zmid - 1.0)
        y1 = y0 + 30.0
        total += quad(below_far, y0, y1, **opts)
        total += (5.0 / 48.0) * self.zeta_t(math.exp(-y1)) ** -1.5
        return total


# --------------------------------------------------------------------------
# Case II: turning point at z = a, Whittaker comparison equation
# --------------------------------------------------------------------------

class CaseIIMap(LiouvilleMap):
    """Implicit map with ``zeta(1) = 0`` and ``zeta(a) = alpha``."""

    def __init__(self, a, b, case):
        super().__init__(a, b, case)
        self.alpha = case.alpha
        self.zmid = 0.5 * (1.0 + self.a)
        self.radius = LOCAL_RADIUS * min(1.0, self.a - 1.0)

    def _near_a(self, s, sign):
        # sqrt|f(a + sign s^2)| * 2s with f = (z - a)/(z^2 - 1)
        t = self.a + sign * s * s
        return 2.0 * s * s / math.sqrt(t * t - 1.0)

    def _near_1(self, s):
        return 2.0 * math.sqrt((self.a - 1.0 - s * s) / (s * s + 2.0))

    def _int_below(self, d):
        """``int_{a+d}^a sqrt(-f)`` for ``d < 0``, split at the midpoint."""
        s_mid = math.sqrt(self.a - self.zmid)
        s = math.sqrt(-d)
        if s <= s_mid:
            return quad(self._near_a, 0.0, s, args=(-1.0,), **_EPS_ZETA)
        upper = quad(self._near_a, 0.0, s_mid, args=(-1.0,), **_EPS_ZETA)
        t = (self.a - 1.0) + d
        return upper + quad(self._near_1, math.sqrt(t), math.sqrt(self.zmid - 1.0), **_EPS_ZETA)

    def int_above(self, z):
        """``int_a^z sqrt f`` with ``t = a + s^2``."""
        return quad(self._near_a, 0.0, math.sqrt(z - self.a), args=(1.0,), **_EPS_ZETA)

    def int_above_closed(self, z):
        """Closed form of :meth:`int_above` through the incomplete ``E``."""
        a = self.a
        phi = math.asin(math.sqrt((z - a) / (z - 1.0)))
        return (2.0 * math.sqrt((z - a) * (z + 1.0) / (z - 1.0))
                - 2.0 * math.sqrt(1.0 + a) * specfun.ellip_E(phi, math.sqrt(2.0 / (1.0 + a))))

    def _lhs_above(self, zeta):
        al = self.alpha
        r = math.sqrt(zeta * (zeta - al))
        return r - 0.5 * al * math.log((2.0 * zeta - al + 2.0 * r) / al)

    @staticmethod
    def _angle_fn(th):
        return 0.5 * math.pi - th - math.sin(th) * math.cos(th)

    def zeta_off(self, d):
        al = self.alpha
        if d <= 0:
            target = self._int_below(d) / al if d < 0 else 0.0
            if target >= 0.5 * math.pi:
                return 0.0
            if target <= 0.0:
                return al
            th = brentq(lambda t: self._angle_fn(t) - target, 0.0, 0.5 * math.pi, xtol=1e-15)
            return al * math.sin(th) ** 2
        target = quad(self._near_a, 0.0, math.sqrt(d), args=(1.0,), **_EPS_ZETA)
        lo = al + target
        hi = lo + al + 1.0
        while self._lhs_above(hi) < target:
            hi = al + 2.0 * (hi - al)
        return brentq(lambda s: self._lhs_above(s) - target, lo, hi, xtol=1e-14 * hi, rtol=1e-15)

    def zeta(self, z):
        self._check(z)
        return self.zeta_off(z - self.a)

    def lhs(self, zeta):
        al = self.alpha
        if zeta <= al:
            th = math.asin(math.sqrt(max(zeta, 0.0) / al))
            return al * self._angle_fn(th)
        return self._lhs_above(zeta)

    def _dzeta_off(self, d):
        zeta = self.zeta_off(d)
        t = self.a + d
        return math.sqrt(d / (t * t - 1.0) * zeta / (zeta - self.alpha))

    @cached_property
    def _dzeta_fit(self) -> LocalPolynomial:
        return LocalPolynomial(self._dzeta_off, self.radius, two_sided=True)

    def dzeta(self, z):
        self._check(z)
        d = z - self.a
        return self._dzeta_fit(d) if self._dzeta_fit.inside(d) else self._dzeta_off(d)


# --------------------------------------------------------------------------
# Case III: a = 1, Bessel comparison equation in zeta
# --------------------------------------------------------------------------

class CaseIIIMap(LiouvilleMap):
    """``zeta = 2 sqrt(z+1) - 2 sqrt(2)``."""

    def __init__(self, a=1.0, b=0.0, case=WkbCase(CaseTag.III)):
        super().__init__(1.0, 0.0, case)

    @staticmethod
    def zeta_t(t):
        # difference of square roots in cancellation-free form
        return 2.0 * t / (math.sqrt(t + 2.0) + math.sqrt(2.0))

    def zeta(self, z):
        self._check(z)
        return self.zeta_t(z - 1.0)

    def dzeta(self, z):
        self._check(z)
        return 1.0 / math.sqrt(z + 1.0)

    def lhs(self, zeta):
        return zeta

    @staticmethod
    def t_of_zeta(zeta):
        """``z - 1`` as a function of ``zeta``."""
        return zeta * (math.sqrt(2.0) + 0.25 * zeta)

    def psi_t(self, t):
        zeta = self.zeta_t(t)
        t1, t2 = _psi_terms(1.0, 0.0, 1.0 + t, t)
        return 1.0 / (4.0 * zeta) + (t1 + t2) * zeta

    @cached_property
    def _psi_fit(self) -> LocalPolynomial:
        return LocalPolynomial(self.psi_t, LOCAL_RADIUS, two_sided=False)

    def psi_of_t(self, t):
        return self._psi_fit(t) if self._psi_fit.inside(t) else self.psi_t(t)

    def psi(self, z):
        return self.psi_of_t(z - 1.0)

    def variation(self, u: float) -> float:
        """``(1/2) int_0^inf |psi(v)| / Omega0(u v) dv``, integrated in ``v = e^{-y}`` near 0."""

        def integrand_v(v):
            return 0.5 * abs(self.psi_of_t(self.t_of_zeta(v))) / float(specfun.omega0(u * v))

        def integrand_y(y):
            v = math.exp(-y)
            return integrand_v(v) * v

        opts = dict(epsabs=1e-12, epsrel=1e-9, limit=400)
        return (quad(integrand_y, 0.0, 60.0, **opts) + quad(integrand_v, 1.0, 10.0, **opts)
                + quad(integrand_v, 10.0, math.inf, **opts))


# --------------------------------------------------------------------------
# Case IV: a < 1, Bessel comparison equation in |zeta|^{1/2}
# --------------------------------------------------------------------------

class CaseIVMap(LiouvilleMap):
    """``(-zeta)^{1/2} = int_1^z sqrt f``."""

    def __init__(self, a, b, case):
        super().__init__(a, 0.0, case)
        self.radius = LOCAL_RADIUS * min(1.0, 1.0 - self.a)

    def _S_of_s(self, s):
        a = self.a

        def integrand(x):
            return 2.0 * math.sqrt((x * x + 1.0 - a) / (x * x + 2.0))

        return quad(integrand, 0.0, s, **_EPS_ZETA)

    def S(self, z):
        """``int_1^z sqrt f`` with ``t = 1 + s^2``."""
        return self._S_of_s(math.sqrt(z - 1.0))

    def zeta(self, z):
        self._check(z)
        return -self.S(z) ** 2

    def dzeta(self, z):
        self._check(z)
        t = z - 1.0
        return -2.0 * self.S(z) * _sqrt_abs_f_t(self.a, 0.0, t)

    def lhs(self, zeta):
        return math.sqrt(-zeta)

    def psi_t(self, t, zeta=None):
        zeta = -self._S_of_s(math.sqrt(t)) ** 2 if zeta is None else zeta
        t1, t2 = _psi_terms(self.a, 0.0, 1.0 + t, t)
        return 1.0 / (16.0 * zeta) - 0.25 * (t1 + t2)

    @cached_property
    def _psi_fit(self) -> LocalPolynomial:
        return LocalPolynomial(self.psi_t, self.radius, two_sided=False)

    def psi_of_t(self, t):
        return self._psi_fit(t) if self._psi_fit.inside(t) else self.psi_t(t)

    def psi(self, z):
        return self.psi_of_t(z - 1.0)

    def variation(self) -> float:
        """``int |psi(v)| |v|^{-1/2} dv = int_1^inf |psi| 2 sqrt f dz`` in ``z = 1 + s^2``."""
        a = self.a

        def integrand(s):
            return abs(self.psi_of_t(s * s)) * 4.0 * math.sqrt((s * s + 1.0 - a) / (s * s + 2.0))

        opts = dict(epsabs=1e-12, epsrel=1e-9, limit=400)
        return quad(integrand, 0.0, 4.0, **opts) + quad(integrand, 4.0, math.inf, **opts)


_MAPS = {CaseTag.I: CaseIMap, CaseTag.II: CaseIIMap, CaseTag.III: CaseIIIMap, CaseTag.IV: CaseIVMap}


def liouville_map(p: ModeParams, case: WkbCase | None = None) -> LiouvilleMap:
    case = classify_case(p) if case is None else case
    return _MAPS[case.tag](p.a, p.b, case)


# --------------------------------------------------------------------------
# Closed-form phases on raw parameters (a, b, u)
# --------------------------------------------------------------------------

def _sqrt_f_minus_inv_sqrt(a, b, t):
    """``sqrt f(t) - t^{-1/2}`` without cancellation for large ``t``."""
    sf = _sqrt_abs_f(a, b, t)
    num = -a * t**3 + t * t + (a - b) * t - 1.0
    return num / (t * (t * t - 1.0) ** 2) / (sf + 1.0 / math.sqrt(t))


def case_I_constant(a: float, b: float) -> float:
    """``lim_{z->inf} (int_{z0}^z sqrt f dt - 2 sqrt z)``."""
    z0 = transition_point(a, b)
    span = 1.0 + z0

    def near(s):
        t = z0 + s * s
        return 2.0 * s * (_sqrt_abs_f(a, b, t) - 1.0 / math.sqrt(t))

    opts = dict(epsabs=1e-14, epsrel=1e-13, limit=400)
    head = quad(near, 0.0, math.sqrt(span), **opts)
    tail = quad(lambda t: _sqrt_f_minus_inv_sqrt(a, b, t), z0 + span, math.inf, **opts)
    return head + tail - 2.0 * math.sqrt(z0)


def delta_case_I(a: float, b: float, u: float) -> float:
    return u * case_I_constant(a, b) + 0.25 * math.pi


def delta_case_II(a: float, u: float) -> float:
    if a <= 1.0:
        raise ValueError("case II requires a > 1")
    alpha = case_II_alpha(a)
    x = 0.5 * alpha * u
    k = math.sqrt(2.0 / (1.0 + a))
    return (-2.0 * u * math.sqrt(1.0 + a) * specfun.ellip_Ecomp(k) + x - x * math.log(x)
            + float(specfun.arg_gamma_half_line(x)) + 0.25 * math.pi)


def delta_case_III(u: float) -> float:
    return -math.sqrt(8.0) * u + 0.25 * math.pi


def delta_case_IV(a: float, u: float) -> float:
    if not 0.0 <= a < 1.0:
        raise ValueError("case IV requires 0 <= a < 1")
    k = math.sqrt(0.5 * (1.0 + a))
    r2b = math.sqrt(2.0) * u
    return (1.0 - a) * r2b * specfun.ellip_K(k) - 2.0 * r2b * specfun.ellip_Ecomp(k) + 0.25 * math.pi


def _capped(x: float) -> float:
    return 0.5 * math.pi * min(1.0, x)


# --------------------------------------------------------------------------
# Public phase operations
# --------------------------------------------------------------------------

def _require(p: ModeParams, tag: CaseTag) -> WkbCase:
    case = classify_case(p)
    if case.tag != tag:
        raise ValueError(f"parameters {p} belong to case {case.tag.value}, not {tag.value}")
    return case


def phase_case_I(p: ModeParams, *, with_bound: bool = True) -> PhaseEstimate:
    case = _require(p, CaseTag.I)
    delta = delta_case_I(p.a, p.b, p.u)
    bound = math.inf
    if with_bound:
        lam = specfun.olver_constants()["lambda_airy"]
        V = CaseIMap(p.a, p.b, case).variation()
        bound = _capped(math.expm1(min(2.0 * lam * V / p.u, 700.0)) / lam)
    return PhaseEstimate(delta, "WKB-I", bound, CaseTag.I)


def phase_case_II(p: ModeParams) -> PhaseEstimate:
    if p.q != 0 or p.a <= 1.0:
        raise ValueError("case II requires q = 0 and a > 1")
    return PhaseEstimate(delta_case_II(p.a, p.u), "WKB-II", math.inf, CaseTag.II)


def phase_case_III(p: ModeParams, *, with_bound: bool = True) -> PhaseEstimate:
    case = _require(p, CaseTag.III)
    bound = math.inf
    if with_bound:
        c = specfun.olver_constants()
        V = CaseIIIMap().variation(p.u)
        bound = _capped(c["l01"] / c["l00"] * math.expm1(min(c["l00"] * V / p.u, 700.0)))
    return PhaseEstimate(delta_case_III(p.u), "WKB-III", bound, CaseTag.III)


def case_IV_bound(a: float, u: float) -> float:
    """Bound on the case IV phase error for raw ``(a, u)``."""
    c = specfun.olver_constants()
    V = CaseIVMap(a, 0.0, WkbCase(CaseTag.IV)).variation()
    return _capped(c["lambda01"] / c["lambda00"] * math.expm1(min(c["lambda00"] * V / u, 700.0)))


def phase_case_IV(p: ModeParams, *, with_bound: bool = True) -> PhaseEstimate:
    _require(p, CaseTag.IV)
    bound = case_IV_bound(p.a, p.u) if with_bound else math.inf
    return PhaseEstimate(delta_case_IV(p.a, p.u), "WKB-IV", bound, CaseTag.IV)


def phase_wkb(p: ModeParams, *, with_bound: bool = True) -> PhaseEstimate:
    """Dispatch to the phase formula of the case ``p`` belongs to."""
    tag = classify_case(p).tag
    if tag == CaseTag.I:
        return phase_case_I(p, with_bound=with_bound)
    if tag == CaseTag.II:
        return phase_case_II(p)
    if tag == CaseTag.III:
        return phase_case_III(p, with_bound=with_bound)
    return phase_case_IV(p, with_bound=with_bound)


# --------------------------------------------------------------------------
# Approximate eigenfunctions
# --------------------------------------------------------------------------

def _whittaker_factor(u: float, alpha: float, zeta: float) -> float:
    """``e^{-i pi/4} sqrt(2 pi/(1+e^{pi u alpha})) M_{i u alpha/2, 0}(2 i u zeta)`` (real)."""
    if zeta == 0.0:
        return 0.0
    x = 2.0 * u * zeta
    kummer = specfun.kummer_M(0.5 - 0.5j * u * alpha, 1.0, 1j * x)
    # e^{-i pi/4} sqrt(i x) = sqrt(x)
    core = math.sqrt(x) * complex(np.exp(-0.5j * x)) * kummer
    norm = math.sqrt(2.0 * math.pi) * math.exp(-0.25 * math.pi * u * alpha) / math.sqrt(
        1.0 + math.exp(-math.pi * u * alpha))
    return norm * core.real


def eigenfunction_wkb(p: ModeParams, z: float, lmap: LiouvilleMap | None = None) -> float:
    """Leading-order approximation of the regular radial amplitude ``A(z)``."""
    if not z > 1.0:
        raise ValueError("eigenfunction_wkb requires z > 1")
    lmap = liouville_map(p) if lmap is None else lmap
    tag, u = lmap.case.tag, p.u
    zeta = lmap.zeta(z)
    scale = 1.0 / math.sqrt(abs(lmap.dzeta(z)))
    if tag == CaseTag.I:
        w = scale * float(specfun.airy_Ai(u ** (2.0 / 3.0) * zeta))
    elif tag == CaseTag.II:
        w = scale * _whittaker_factor(u, lmap.alpha, zeta)
    elif tag == CaseTag.III:
        w = scale * math.sqrt(zeta) * float(specfun.bessel_J0(u * zeta))
    else:
        r = math.sqrt(-zeta)
        w = scale * r * float(specfun.bessel_J0(u * r))
    return w / math.sqrt(z * z - 1.0)
