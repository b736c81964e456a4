"""Adaptive Dormand-Prince 5(4) kernels for the cosine-family fields.

The package's two hot loops live here, compiled with numba: the su(1,1)
fundamental-pair integration over one period, and the scalar winding lift
over many periods.  Both are specialized to the parametric field

    u(tau) = 1 / (omega * (1 - delta*cos(tau)))
    v(tau) = (B + A*sin(tau)) * u(tau) + D

so the RHS is a handful of flops and the sweep of a 64x64 portrait stays in
the seconds range.  Arbitrary callable fields take the scipy route in
``flow``; the tableau and the error controller here match scipy's RK45
(Dormand-Prince) so both paths honor the same tolerance contract.

No fastmath, no threading: results are bit-reproducible across runs and
across process pools.
"""

from __future__ import annotations

import math

from numba import njit

TWO_PI = 2.0 * math.pi

# Dormand-Prince 5(4) tableau.
_C2, _C3, _C4, _C5 = 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0
_A21 = 1.0 / 5.0
_A31, _A32 = 3.0 / 40.0, 9.0 / 40.0
_A41, _A42, _A43 = 44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0
_A51, _A52, _A53, _A54 = (19372.0 / 6561.0, -25360.0 / 2187.0,
                          64448.0 / 6561.0, -212.0 / 729.0)
_A61, _A62, _A63, _A64, _A65 = (9017.0 / 3168.0, -355.0 / 33.0,
                                46732.0 / 5247.0, 49.0 / 176.0,
                                -5103.0 / 18656.0)
_B1, _B3, _B4, _B5, _B6 = (35.0 / 384.0, 500.0 / 1113.0, 125.0 / 192.0,
                           -2187.0 / 6784.0, 11.0 / 84.0)
# Difference between the 5th and embedded 4th order weights.
_E1, _E3, _E4, _E5, _E6, _E7 = (71.0 / 57600.0, -71.0 / 16695.0,
                                71.0 / 1920.0, -17253.0 / 339200.0,
                                22.0 / 525.0, -1.0 / 40.0)

_SAFETY = 0.9
_MIN_FACTOR = 0.2
_MAX_FACTOR = 10.0
_MAX_STEPS = 50_000_000

# Status codes shared by both kernels.
OK = 0
STEP_UNDERFLOW = 1
STEP_BUDGET = 2


@njit(cache=True)
def _uv(tau, omega, delta, bigd, bcap, acap):
    u = 1.0 / (omega * (1.0 - delta * math.cos(tau)))
    v = (bcap + acap * math.sin(tau)) * u + bigd
    return u, v


@njit(cache=True)
def _pair_rhs(tau, a, b, omega, delta, bigd, bcap, acap):
    # Y' = C(tau) Y with C = (i/2) [[-v, -u], [u, v]] preserves the
    # [[a, b], [conj b, conj a]] structure, so only (a, b) is integrated.
    u, v = _uv(tau, omega, delta, bigd, bcap, acap)
    da = -0.5j * (v * a + u * b.conjugate())
    db = -0.5j * (v * b + u * a.conjugate())
    return da, db


@njit(cache=True)
def integrate_pair(omega, delta, bigd, bcap, acap, rtol, atol, max_step):
    """Fundamental su(1,1) pair (a, b) over tau in [0, 2pi] from (1, 0).

    Args:
        omega, delta, bigd, bcap, acap: field parameters (bigd is D,
            bcap is B, acap is A).
        rtol, atol: local error tolerances.
        max_step: step ceiling.

    Returns:
        (a, b, status, nsteps) with status one of OK / STEP_UNDERFLOW /
        STEP_BUDGET.
    """
    t = 0.0
    a = 1.0 + 0.0j
    b = 0.0 + 0.0j
    ka1, kb1 = _pair_rhs(t, a, b, omega, delta, bigd, bcap, acap)
    h = min(max_step, 1e-2)
    nsteps = 0
    while True:
        remaining = TWO_PI - t
        if remaining <= 0.0:
            break
        if h < 1e-14 * (1.0 + abs(t)):
            return a, b, STEP_UNDERFLOW, nsteps
        last = h >= remaining
        hs = remaining if last else h

        ta = a + hs * _A21 * ka1
        tb = b + hs * _A21 * kb1
        ka2, kb2 = _pair_rhs(t + _C2 * hs, ta, tb, omega, delta, bigd, bcap, acap)
        ta = a + hs * (_A31 * ka1 + _A32 * ka2)
        tb = b + hs * (_A31 * kb1 + _A32 * kb2)
        ka3, kb3 = _pair_rhs(t + _C3 * hs, ta, tb, omega, delta, bigd, bcap, acap)
        ta = a + hs * (_A41 * ka1 + _A42 * ka2 + _A43 * ka3)
        tb = b + hs * (_A41 * kb1 + _A42 * kb2 + _A43 * kb3)
        ka4, kb4 = _pair_rhs(t + _C4 * hs, ta, tb, omega, delta, bigd, bcap, acap)
        ta = a + hs * (_A51 * ka1 + _A52 * ka2 + _A53 * ka3 + _A54 * ka4)
        tb = b + hs * (_A51 * kb1 + _A52 * kb2 + _A53 * kb3 + _A54 * kb4)
        ka5, kb5 = _pair_rhs(t + _C5 * hs, ta, tb, omega, delta, bigd, bcap, acap)
        ta = a + hs * (_A61 * ka1 + _A62 * ka2 + _A63 * ka3 + _A64 * ka4 + _A65 * ka5)
        tb = b + hs * (_A61 * kb1 + _A62 * kb2 + _A63 * kb3 + _A64 * kb4 + _A65 * kb5)
        ka6, kb6 = _pair_rhs(t + hs, ta, tb, omega, delta, bigd, bcap, acap)
        na = a + hs * (_B1 * ka1 + _B3 * ka3 + _B4 * ka4 + _B5 * ka5 + _B6 * ka6)
        nb = b + hs * (_B1 * kb1 + _B3 * kb3 + _B4 * kb4 + _B5 * kb5 + _B6 * kb6)
        ka7, kb7 = _pair_rhs(t + hs, na, nb, omega, delta, bigd, bcap, acap)

        ea = hs * (_E1 * ka1 + _E3 * ka3 + _E4 * ka4 + _E5 * ka5 + _E6 * ka6 + _E7 * ka7)
        eb = hs * (_E1 * kb1 + _E3 * kb3 + _E4 * kb4 + _E5 * kb5 + _E6 * kb6 + _E7 * kb7)
        sa = atol + rtol * max(abs(a), abs(na))
        sb = atol + rtol * max(abs(b), abs(nb))
        err = math.sqrt(0.5 * ((abs(ea) / sa) ** 2 + (abs(eb) / sb) ** 2))

        if err <= 1.0:
            nsteps += 1
            # Project back onto the invariant manifold: the traceless
            # generator conserves |a|^2 - |b|^2 exactly, so any deviation
            # is truncation error and a scalar rescale removes it without
            # changing the Moebius action.  The RHS is linear, so the FSAL
            # stage rescales along with the state.
            d = (na.real * na.real + na.imag * na.imag
                 - nb.real * nb.real - nb.imag * nb.imag)
            if 0.25 < d < 4.0:
                r = math.sqrt(d)
                na /= r
                nb /= r
                ka7 /= r
                kb7 /= r
            a = na
            b = nb
            if last:
                t = TWO_PI
            else:
                t += hs
                ka1, kb1 = ka7, kb7  # FSAL
            if err == 0.0:
                factor = _MAX_FACTOR
            else:
                factor = min(_MAX_FACTOR, max(_MIN_FACTOR, _SAFETY * err ** -0.2))
            h = min(hs * factor, max_step)
        else:
            h = hs * max(_MIN_FACTOR, _SAFETY * err ** -0.2)
        if nsteps >= _MAX_STEPS:
            return a, b, STEP_BUDGET, nsteps
    return a, b, OK, nsteps


@njit(cache=True)
def _theta_rhs(tau, theta, omega, delta, bigd, bcap, acap):
    u, v = _uv(tau, omega, delta, bigd, bcap, acap)
    return u * math.cos(theta) + v


@njit(cache=True)
def integrate_theta(omega, delta, bigd, bcap, acap, theta0, t_end, rtol, atol,
                    max_step):
    """Scalar winding lift theta(tau) over [0, t_end] from theta0.

    Returns (theta_end, status, nsteps); status codes as in integrate_pair.
    """
    t = 0.0
    y = theta0
    k1 = _theta_rhs(t, y, omega, delta, bigd, bcap, acap)
    h = min(max_step, 1e-2)
    nsteps = 0
    while True:
        remaining = t_end - t
        if remaining <= 0.0:
            break
        if h < 1e-14 * (1.0 + abs(t)):
            return y, STEP_UNDERFLOW, nsteps
        last = h >= remaining
        hs = remaining if last else h

        ty = y + hs * _A21 * k1
        k2 = _theta_rhs(t + _C2 * hs, ty, omega, delta, bigd, bcap, acap)
        ty = y + hs * (_A31 * k1 + _A32 * k2)
        k3 = _theta_rhs(t + _C3 * hs, ty, omega, delta, bigd, bcap, acap)
        ty = y + hs * (_A41 * k1 + _A42 * k2 + _A43 * k3)
        k4 = _theta_rhs(t + _C4 * hs, ty, omega, delta, bigd, bcap, acap)
        ty = y + hs * (_A51 * k1 + _A52 * k2 + _A53 * k3 + _A54 * k4)
        k5 = _theta_rhs(t + _C5 * hs, ty, omega, delta, bigd, bcap, acap)
        ty = y + hs * (_A61 * k1 + _A62 * k2 + _A63 * k3 + _A64 * k4 + _A65 * k5)
        k6 = _theta_rhs(t + hs, ty, omega, delta, bigd, bcap, acap)
        ny = y + hs * (_B1 * k1 + _B3 * k3 + _B4 * k4 + _B5 * k5 + _B6 * k6)
        k7 = _theta_rhs(t + hs, ny, omega, delta, bigd, bcap, acap)

        ey = hs * (_E1 * k1 + _E3 * k3 + _E4 * k4 + _E5 * k5 + _E6 * k6 + _E7 * k7)
        sy = atol + rtol * max(abs(y), abs(ny))
        err = abs(ey) / sy

        if err <= 1.0:
            nsteps += 1
            y = ny
            if last:
                t = t_end
            else:
                t += hs
                k1 = k7
            if err == 0.0:
                factor = _MAX_FACTOR
            else:
                factor = min(_MAX_FACTOR, max(_MIN_FACTOR, _SAFETY * err ** -0.2))
            h = min(hs * factor, max_step)
        else:
            h = hs * max(_MIN_FACTOR, _SAFETY * err ** -0.2)
        if nsteps >= _MAX_STEPS:
            return y, STEP_BUDGET, nsteps
    return y, OK, nsteps


def warmup():
    """Force JIT compilation of both kernels (cheap after the first call)."""
    integrate_pair(1.0, 0.0, 0.0, 0.0, 0.0, 1e-6, 1e-6, math.pi / 16.0)
    integrate_theta(1.0, 0.0, 0.0, 0.0, 0.0, 0.0, TWO_PI, 1e-6, 1e-6,
                    math.pi / 16.0)
