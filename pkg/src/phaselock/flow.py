"""Torus flow integration: Poincare matrix, rotation number, Lyapunov exponent.

The scalar flow dtheta/dtau = u(tau) cos(theta) + v(tau) lifts to the linear
system Y' = C(tau) Y with C in su(1,1); the time-2pi fundamental matrix acts
on Phi = e^{i theta} as the Mobius return map.  Integrating the matrix pair
(a, b) instead of theta keeps the group structure exact: the determinant
|a|^2 - |b|^2 stays real and only drifts by integrator error, which we measure
and then remove by projection.

Standard cosine fields (those carrying TorusParams) run through compiled
Dormand-Prince kernels; arbitrary (u, v) callables fall back to scipy.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.integrate import solve_ivp

from . import _integrate
from .params import TorusParams
from .su11 import (TWO_PI, AccuracyError, MapClass, MapKind, Su11Matrix, act,
                   classify, fixed_points, lyapunov_exponent, project)

MAX_STEP = math.pi / 16

_BASE_WINDING_PERIODS = 64
_MAX_WINDING_PERIODS = 4096
_INTEGER_RESIDUAL = 1e-6


class IntegrationError(RuntimeError):
    """The adaptive integrator failed (step underflow or budget exhausted)."""


@dataclass(frozen=True)
class CosineField:
    """A nonautonomous field dtheta/dtau = u(tau) cos(theta) + v(tau).

    u and v must be 2pi-periodic.  params is set when the field comes from
    lift_field, which unlocks the compiled integration path; hand-built
    fields (params=None) use the scipy fallback.
    """

    u: Callable[[float], float]
    v: Callable[[float], float]
    provenance: str
    params: Optional[TorusParams] = None


@dataclass(frozen=True)
class PoincareResult:
    """Return-map data at one parameter point.

    rho is an exact integer (as a float) whenever the map is hyperbolic,
    parabolic or the identity; the "snapped" flag records that rounding.
    det_defect is |det - 1| of the raw fundamental matrix before projection,
    a direct readout of accumulated integrator error.
    """

    matrix: Su11Matrix
    map_class: MapClass
    rho: float
    lyapunov: float
    winding_periods: int
    flags: frozenset
    det_defect: float


def lift_field(t: TorusParams) -> CosineField:
    """Build the cosine field of the torus flow with parameters t.

    Rejects the confluent sentinel delta = 1: that flow is singular on the
    tau = 0 circle and has no rotation-number theory here.
    """
    if t.delta >= 1.0:
        raise ValueError(
            f"lift_field: delta = {t.delta} is outside [0, 1); the confluent "
            "family is algebraic-only (see module heun)")
    omega, delta, bigd, bcap, acap = t.omega, t.delta, t.D, t.B, t.A

    def u(tau: float) -> float:
        return 1.0 / (omega * (1.0 - delta * math.cos(tau)))

    def v(tau: float) -> float:
        return (bcap + acap * math.sin(tau)) / (omega * (1.0 - delta * math.cos(tau))) + bigd

    tag = "RSJ" if (delta == 0.0 and bigd == 0.0) else "dRSJ"
    return CosineField(u=u, v=v, provenance=tag, params=t)


def linear_lift_rhs(f: CosineField, tau: float) -> np.ndarray:
    """The su(1,1) coefficient matrix C(tau) of the linear lift Y' = C Y.

    C = (i/2) [[-v, -u], [u, v]]; its projectivization restricted to the unit
    circle reproduces the scalar field exactly.
    """
    u = f.u(tau)
    v = f.v(tau)
    return 0.5j * np.array([[-v, -u], [u, v]], dtype=complex)


def _raw_poincare(f: CosineField, rtol: float, atol: float):
    """Fundamental matrix over one period and its determinant defect."""
    if f.params is not None:
        p = f.params
        a, b, status, nsteps = _integrate.integrate_pair(
            p.omega, p.delta, p.D, p.B, p.A, rtol, atol, MAX_STEP)
        if status != _integrate.OK:
            raise IntegrationError(
                f"pair integration failed (status {status}) after {nsteps} "
                f"steps at {p}")
        m = np.array([[a, b], [b.conjugate(), a.conjugate()]])
        defect = abs((a.real * a.real + a.imag * a.imag)
                     - (b.real * b.real + b.imag * b.imag) - 1.0)
        return m, defect

    def rhs(tau, y):
        return (linear_lift_rhs(f, tau) @ y.reshape(2, 2)).ravel()

    sol = solve_ivp(rhs, (0.0, TWO_PI), np.eye(2, dtype=complex).ravel(),
                    method="RK45", rtol=rtol, atol=atol, max_step=MAX_STEP)
    if not sol.success:
        raise IntegrationError(f"matrix integration failed: {sol.message}")
    m = sol.y[:, -1].reshape(2, 2)
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    return m, abs(det - 1.0)


def poincare_matrix(f: CosineField, tol: float = 1e-10,
                    atol: Optional[float] = None) -> Su11Matrix:
    """Time-2pi return map of the linear lift as an SU(1,1) matrix.

    tol is used as both relative and absolute tolerance unless atol is given
    separately.  A determinant defect of 1e-6 or more before projection is an
    integration failure and raises AccuracyError.
    """
    raw, _ = _raw_poincare(f, tol, tol if atol is None else atol)
    return project(raw)


def _scalar_winding(f: CosineField, theta0: float, n_periods: int,
                    rtol: float, atol: float) -> float:
    """theta(2 pi n_periods) of the scalar flow started at theta0."""
    t_end = TWO_PI * n_periods
    if f.params is not None:
        p = f.params
        theta, status, nsteps = _integrate.integrate_theta(
            p.omega, p.delta, p.D, p.B, p.A, theta0, t_end, rtol, atol, MAX_STEP)
        if status != _integrate.OK:
            raise IntegrationError(
                f"scalar integration failed (status {status}) after {nsteps} "
                f"steps at {p}")
        return theta

    def rhs(tau, y):
        return (f.u(tau) * math.cos(y[0]) + f.v(tau),)

    sol = solve_ivp(rhs, (0.0, t_end), (theta0,), method="RK45",
                    rtol=rtol, atol=atol, max_step=MAX_STEP)
    if not sol.success:
        raise IntegrationError(f"scalar integration failed: {sol.message}")
    return float(sol.y[0, -1])


def rotation_number(f: CosineField, tol: float = 1e-10,
                    atol: Optional[float] = None) -> PoincareResult:
    """Rotation number and Lyapunov exponent via the return map.

    Hyperbolic, parabolic and identity maps have integer rotation number; the
    integer is read off as the one-period winding started on a circle fixed
    point (the attracting one when there is a choice), which must be integral
    to 1e-6.  Elliptic maps get their fractional part exactly from the
    multiplier argument at the in-disk fixed point, beta = arg h'(z0); the
    integer part comes from a multi-period scalar winding estimate, starting
    at 64 periods and doubling (up to 4096) until the estimate lands within
    0.25 of a branch k + beta/2pi.
    """
    if atol is None:
        atol = tol
    raw, defect = _raw_poincare(f, tol, atol)
    m = project(raw)
    mc = classify(m)

    if mc.kind is MapKind.ELLIPTIC:
        z0, mult = fixed_points(m)[0]
        frac = cmath.phase(mult) / TWO_PI
        n = _BASE_WINDING_PERIODS
        flags = set()
        while True:
            theta_end = _scalar_winding(f, 0.0, n, tol, atol)
            rho_est = theta_end / (TWO_PI * n)
            rho = round(rho_est - frac) + frac
            if abs(rho - rho_est) <= 0.25:
                break
            if n >= _MAX_WINDING_PERIODS:
                flags.add("adaptive_N_exhausted")
                break
            n *= 2
        return PoincareResult(m, mc, rho, 0.0, n, frozenset(flags), defect)

    # Locked cases: start the winding on a point the map returns to exactly.
    if mc.kind is MapKind.IDENTITY:
        theta_star = 0.0
    else:
        z_star, _ = fixed_points(m)[0]
        theta_star = cmath.phase(z_star)
    theta_end = _scalar_winding(f, theta_star, 1, tol, atol)
    winding = (theta_end - theta_star) / TWO_PI
    k = round(winding)
    residual = abs(winding - k)
    if residual >= _INTEGER_RESIDUAL:
        raise AccuracyError(
            f"winding residual {residual:.3e} at a {mc.kind.value} map; "
            "integer rotation number is not credible at this tolerance")
    return PoincareResult(m, mc, float(k), lyapunov_exponent(m), 1,
                          frozenset({"snapped"}), defect)


def flow_map_consistency(f: CosineField, samples: int = 8,
                         tol: float = 1e-10) -> float:
    """Max distance between the integrated flow map and the Mobius action.

    Two independent computations of the same circle map: e^{i theta(2pi)}
    from the scalar flow versus act(M, e^{i theta0}).  Default tolerances
    keep this below 1e-7.
    """
    if samples < 1:
        raise ValueError("flow_map_consistency: samples must be >= 1")
    m = poincare_matrix(f, tol)
    worst = 0.0
    for i in range(samples):
        theta0 = TWO_PI * i / samples
        theta1 = _scalar_winding(f, theta0, 1, tol, tol)
        err = abs(cmath.exp(1j * theta1) - act(m, cmath.exp(1j * theta0)))
        worst = max(worst, err)
    return worst
