"""Independent route to the scattering phase: direct integration plus far-field fit.

The regular solution ``u`` of

    zeta (zeta + 1) u'' + (q + 1)(2 zeta + 1) u' + (beta (2 zeta + 1) + mu) u = 0

is seeded from its power series just off ``zeta = 0`` and integrated with an
8th-order Dormand-Prince scheme. Far out, ``A(z) ~ C z^{-3/4} sin(2 sqrt(beta z) + Delta)``;
the pointwise phase ``theta(z) - 2 sqrt(beta z)`` is fitted by a cubic in
``1/sqrt(z)`` and its intercept is the phase.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from ._numerics import reduce_mod_pi
from .frobenius import series_seed
from .model import ModeParams

__all__ = [
    "Trajectory",
    "FarFieldFit",
    "StepCollapseError",
    "NoisyWindowError",
    "integrate_regular",
    "integrate_from",
    "default_window",
    "extract_phase",
    "extract_phase_from",
    "far_field_phase",
    "modified_wronskian",
]

ZETA_SEED = 1e-3
SEED_TERMS = 10
ODE_TOL = 1e-12
FIT_TOL = 1e-4
FIT_POINTS = 400
FIT_DEGREE = 3


class StepCollapseError(ArithmeticError):
    """The integrator could not advance (step size underflow)."""


class NoisyWindowError(ArithmeticError):
    """The pointwise phase does not follow the fitted model over the window."""


def _rhs(p: ModeParams, beta: float):
    q1, mu = p.q + 1, p.mu

    def f(zeta, y):
        u, du = y
        s = 2.0 * zeta + 1.0
        return [du, -(q1 * s * du + (beta * s + mu) * u) / (zeta * (zeta + 1.0))]

    return f


@dataclass(frozen=True)
class Trajectory:
    """Dense solution ``u(zeta)`` on ``[zeta_seed, zeta_max]`` with controller statistics."""

    params: ModeParams
    zeta: np.ndarray
    u: np.ndarray
    du: np.ndarray
    zeta_seed: float
    zeta_max: float
    ode_tol: float
    nfev: int
    n_steps: int
    dense: object

    def u_at(self, zeta):
        return self.dense(zeta)[0]

    def du_at(self, zeta):
        return self.dense(zeta)[1]

    def A(self, z):
        """``A(z) = (z^2 - 1)^{q/2} u((z - 1)/2)``."""
        z = np.asarray(z, dtype=float)
        return (z * z - 1.0) ** (0.5 * self.params.q) * self.u_at(0.5 * (z - 1.0))

    def dA(self, z):
        z = np.asarray(z, dtype=float)
        q = self.params.q
        zeta = 0.5 * (z - 1.0)
        w = z * z - 1.0
        u, du = self.dense(zeta)
        return q * z * w ** (0.5 * q - 1.0) * u + w ** (0.5 * q) * 0.5 * du


def integrate_from(p: ModeParams, zeta0: float, y0, zeta_max: float, ode_tol: float = ODE_TOL):
    """Raw DOP853 run of the ``u`` equation from arbitrary data ``y0 = (u, u')`` at ``zeta0``."""
    sol = solve_ivp(_rhs(p, p.beta), (zeta0, zeta_max), list(y0), method="DOP853",
                    rtol=ode_tol, atol=ode_tol * 1e-12, dense_output=True)
    if sol.status != 0:
        raise StepCollapseError(sol.message)
    return sol


def integrate_regular(p: ModeParams, zeta_max: float, ode_tol: float = ODE_TOL, *,
                      zeta_seed: float = ZETA_SEED, seed_terms: int = SEED_TERMS) -> Trajectory:
    """Regular solution (``u(0) = 1``) from the series at ``zeta_seed`` out to ``zeta_max``."""
    if not 1e-13 <= ode_tol <= 1e-6:
        raise ValueError("ode_tol must lie in [1e-13, 1e-6]")
    if zeta_max <= zeta_seed:
        raise ValueError("zeta_max must exceed the seed point")
    y0 = series_seed(p, zeta_seed, seed_terms)
    sol = integrate_from(p, zeta_seed, y0, zeta_max, ode_tol)
    return Trajectory(p, sol.t, sol.y[0], sol.y[1], zeta_seed, zeta_max, ode_tol,
                      int(sol.nfev), len(sol.t) - 1, sol.sol)


def default_window(p: ModeParams) -> tuple[float, float]:
    """``[z_far, 4 z_far]`` with ``2 sqrt(beta z_far) >= 40 pi`` and ``z_far`` well past ``beta`` and ``j^2``."""
    z_far = max((20.0 * math.pi) ** 2 / p.beta, 100.0 * p.beta, 20.0 * (p.jj1 + 1))
    return z_far, 4.0 * z_far


@dataclass(frozen=True)
class FarFieldFit:
    """``Delta`` in ``(-pi/2, pi/2]``; ``branch`` is the integer with ``Delta_raw = Delta + branch*pi``."""

    Delta: float
    Delta_raw: float
    branch: int
    amplitude: float
    fit_window: tuple[float, float]
    residual: float


def _fit_intercept(w, y, theta, degree):
    """Least squares of ``y`` on ``w^i`` (``i <= degree``) and ``w^2 sin/cos(2 theta)``.

    The pointwise inversion mixes ``sin`` and ``cos`` at order ``1/z = w^2``,
    which leaves a ripple at twice the local phase; fitting it keeps the ripple
    out of the intercept. Returns the intercept and the max residual.
    """
    cols = [w**i for i in range(degree + 1)] + [w * w * np.sin(2 * theta), w * w * np.cos(2 * theta)]
    X = np.stack(cols, axis=1)
    coef, *_ = np.linalg.lstsq(X, y, rcond=None)
    return float(coef[0]), float(np.max(np.abs(X @ coef - y)))


def extract_phase_from(A, dA, beta: float, window: tuple[float, float], *, fit_tol: float = FIT_TOL,
                       points: int = FIT_POINTS, degree: int = FIT_DEGREE) -> FarFieldFit:
    """Fit ``theta(z) - 2 sqrt(beta z)`` by a polynomial in ``1/sqrt(z)`` plus the ``1/z`` ripple.

    ``theta = atan2(A sqrt(beta/z), A' + 3A/(4z))``. ``A`` and ``dA`` are
    vectorised callables. Raises :class:`NoisyWindowError` if the fit leaves a
    residual above ``10 * fit_tol``.
    """
    z_lo, z_hi = window
    w = np.linspace(1.0 / math.sqrt(z_hi), 1.0 / math.sqrt(z_lo), points)
    z = 1.0 / (w * w)
    a, da = A(z), dA(z)
    s = np.sqrt(beta / z)
    theta = np.arctan2(a * s, da + 0.75 * a / z)
    delta_z = np.unwrap(theta - 2.0 * np.sqrt(beta * z))
    raw, resid = _fit_intercept(w, delta_z, theta, degree)
    amp_z = z**0.75 * np.hypot(a, (da + 0.75 * a / z) / s)
    amp, _ = _fit_intercept(w, amp_z, theta, degree)
    if resid > 10.0 * fit_tol:
        raise NoisyWindowError(f"phase residual {resid:.3g} over [{z_lo:g}, {z_hi:g}]")
    red = reduce_mod_pi(raw)
    return FarFieldFit(red, raw, int(round((raw - red) / math.pi)), amp, (z_lo, z_hi), resid)


def extract_phase(traj: Trajectory, p: ModeParams | None = None, window: tuple[float, float] | None = None,
                  **kwargs) -> FarFieldFit:
    """Far-field phase of a trajectory; the window defaults to :func:`default_window`."""
    p = traj.params if p is None else p
    window = default_window(p) if window is None else window
    if 0.5 * (window[1] - 1.0) > traj.zeta_max * (1 + 1e-12):
        raise ValueError("trajectory does not reach the fit window")
    return extract_phase_from(traj.A, traj.dA, p.beta, window, **kwargs)


def far_field_phase(p: ModeParams, ode_tol: float = ODE_TOL, window: tuple[float, float] | None = None,
                    **kwargs) -> FarFieldFit:
    """Integrate the regular solution through the window and fit its phase."""
    window = default_window(p) if window is None else window
    traj = integrate_regular(p, 0.5 * (window[1] - 1.0), ode_tol)
    return extract_phase(traj, p, window, **kwargs)


def modified_wronskian(p: ModeParams, zeta, u, du, v, dv):
    """``zeta^{q+1} (zeta+1)^{q+1} (u v' - u' v)``, constant for two solutions."""
    zeta = np.asarray(zeta, dtype=float)
    return (zeta * (zeta + 1.0)) ** (p.q + 1) * (u * dv - du * v)
