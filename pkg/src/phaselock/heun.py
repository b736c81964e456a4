"""Second-order scalar reductions of the linear systems.

A system is equivalent to a Heun-type equation on E = Y2 exactly when its
free diagonal parameters solve a quadratic constraint; this module houses
those solvers, the coefficient formulas, and two kinds of numerical witness:

* equivalence residuals, which apply the scalar operator to (E, E', E'')
  expressed through the system matrix A(z), giving a linear functional
  L(z).Y that must vanish identically;
* gauge residuals, which check the operator identity Op1[g f] = g Op0[f]
  relating different diagonal branches of the same system.

Both are pointwise algebra, no ODE solving involved, so the contracts are
tight (1e-9 / 1e-8) and perturbed inputs fail them by many orders.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .params import (CheSystemParams, GheSystemParams, TorusParams,
                     che_matrices, ghe_matrices)

_E2 = np.array([0.0, 1.0])
_CUT_IMAG = 1e-12


@dataclass(frozen=True)
class HeunGeneralCoeffs:
    """Coefficients of z(z-1/alpha)(z-alpha)E'' + (...)E' + (uz+d)E = 0."""

    alpha: float
    p: complex
    q: complex
    s: complex
    u: complex
    d: complex


@dataclass(frozen=True)
class HeunConfluentCoeffs:
    """Coefficients of z(z-1)^2 E'' + (pz(z-1)+qz+s)E' + (uz+d)E = 0."""

    p: complex
    q: complex
    s: complex
    u: complex
    d: complex


@dataclass(frozen=True)
class DcheCoeffs:
    """Double-confluent data; only mu is determined by the torus parameters."""

    mu: float
    lam: Optional[float] = None
    ell: Optional[complex] = None


@dataclass(frozen=True)
class NoSolution:
    """The diagonal constraint system is inconsistent."""


@dataclass(frozen=True)
class OneParameterFamily:
    """Degenerate diagonal constraint: a2 is pinned, a1 is free."""

    a2: complex


def ghe_solve_diagonal(alpha: float, b: float, c: float, nu: complex,
                       root_sign: int = 1, psi_branch: str = "conj"):
    """Solve b^2 = phi(conj(nu)+c-phi) for phi and pick the paired psi.

    root_sign selects the +/- branch of the quadratic; psi_branch is "conj"
    for psi = conj(phi) or "complement" for psi = nu + c - conj(phi).
    Complex phi is legitimate (the discriminant may be negative).
    """
    if not alpha > 1.0:
        raise ValueError(f"ghe_solve_diagonal: alpha = {alpha} must be > 1")
    if not b > 0.0:
        raise ValueError(f"ghe_solve_diagonal: b = {b} must be > 0")
    nu = complex(nu)
    w = nu.conjugate() + c
    root = cmath.sqrt(w * w - 4.0 * b * b)
    phi = 0.5 * (w + root) if root_sign >= 0 else 0.5 * (w - root)
    if psi_branch == "conj":
        psi = phi.conjugate()
    elif psi_branch == "complement":
        psi = nu + c - phi.conjugate()
    else:
        raise ValueError(f"ghe_solve_diagonal: unknown psi_branch {psi_branch!r}")
    return phi, psi


def ghe_coefficients(p: GheSystemParams) -> HeunGeneralCoeffs:
    """Heun coefficients of a compatible general system.

    q = conj(nu)+c+1-2phi, s = nu+c+1-2psi, u = (conj(nu)+c-phi-psi)(c+1-phi-psi),
    d = nu((c+conj(nu)-phi)/alpha - psi alpha); the leading E' coefficient
    carries p = -nu.
    """
    if not p.heun_compatible:
        raise ValueError("ghe_coefficients: (phi, psi) do not satisfy the "
                         "diagonal constraint; run ghe_solve_diagonal first")
    nu, c, phi, psi = p.nu, p.c, p.phi, p.psi
    nubar = nu.conjugate()
    return HeunGeneralCoeffs(
        alpha=p.alpha,
        p=-nu,
        q=nubar + c + 1.0 - 2.0 * phi,
        s=nu + c + 1.0 - 2.0 * psi,
        u=(nubar + c - phi - psi) * (c + 1.0 - phi - psi),
        d=nu * ((c + nubar - phi) / p.alpha - psi * p.alpha),
    )


def che_solve_diagonal(b: float, g: float, nu: complex, root_sign: int = 1):
    """Solve b^2 = a2(g-a2), a2(nu-conj nu) + a1(2a2-g) = 0.

    Returns (a1, a2), or the degenerate outcomes: OneParameterFamily when
    b = +/- g/2 with real nu (a2 = g/2 is a double root, a1 free), NoSolution
    when b = +/- g/2 with nonreal nu.
    """
    if b == 0.0:
        raise ValueError("che_solve_diagonal: b must be nonzero")
    nu = complex(nu)
    if 4.0 * b * b == g * g:
        if g * nu.imag == 0.0:
            return OneParameterFamily(a2=complex(0.5 * g))
        return NoSolution()
    root = cmath.sqrt(complex(g * g - 4.0 * b * b))
    a2 = 0.5 * (g + root) if root_sign >= 0 else 0.5 * (g - root)
    a1 = -a2 * (nu - nu.conjugate()) / (2.0 * a2 - g)
    return a1, a2


def che_coefficients(p: CheSystemParams) -> HeunConfluentCoeffs:
    """Confluent Heun coefficients of a compatible system."""
    if not p.heun_compatible:
        raise ValueError("che_coefficients: (a1, a2) do not satisfy the "
                         "diagonal constraint; run che_solve_diagonal first")
    nu, g, a1, a2 = p.nu, p.g, p.a1, p.a2
    nubar = nu.conjugate()
    return HeunConfluentCoeffs(
        p=nubar + 2.0 - 2.0 * nu - 2.0 * a1,
        q=nu + g - 2.0 * a2,
        s=-nu,
        u=(a1 + nu - 1.0) * (a1 + nu - nubar),
        d=nu * (a2 - g - a1 - nu + nubar),
    )


def dche_coefficients(t: TorusParams, ell: Optional[complex] = None,
                      a: Optional[float] = None) -> DcheCoeffs:
    """Double-confluent parameters at delta = 0: mu = A/(2 omega).

    lam = (a^2 - s^2)/4 with s = 2 mu needs the auxiliary system parameter a,
    which the torus chart does not determine; it is computed only when the
    caller supplies one, and ell is passed through untouched.
    """
    if t.delta != 0.0:
        raise ValueError(f"dche_coefficients: delta = {t.delta}, need delta = 0")
    mu = t.A / (2.0 * t.omega)
    lam = None
    if a is not None:
        s = 2.0 * mu
        lam = (a * a - s * s) / 4.0
    return DcheCoeffs(mu=mu, lam=lam, ell=ell)


# -- pointwise equivalence witnesses ----------------------------------------

def _default_samples(radius: float, n: int = 16):
    """n circle points at half-integer angles; |Im z| stays >= r sin(pi/n),
    so all-real singularity sets are kept at a safe distance automatically."""
    return tuple(radius * cmath.exp(2j * cmath.pi * (k + 0.5) / n)
                 for k in range(n))


def _check_distances(z_samples, poles, min_dist, what):
    for z in z_samples:
        for pole in poles:
            if abs(z - pole) < min_dist:
                raise ValueError(
                    f"{what}: sample {z} is within {min_dist} of the "
                    f"singularity at {pole}")


def _ghe_op_coeffs(h: HeunGeneralCoeffs, z: complex):
    ainv = 1.0 / h.alpha
    a2c = z * (z - ainv) * (z - h.alpha)
    a1c = (h.p * (z - h.alpha) * (z - ainv)
           + h.q * z * (z - ainv) + h.s * z * (z - h.alpha))
    return a2c, a1c, h.u * z + h.d


def _che_op_coeffs(h: HeunConfluentCoeffs, z: complex):
    w = z - 1.0
    return z * w * w, h.p * z * w + h.q * z + h.s, h.u * z + h.d


def _functional_residual(system_at, op_coeffs, z_samples) -> float:
    """max |L(z) e_k| / scale with L = a2c row2(A'+A^2) + a1c row2(A) + a0c e2."""
    worst = 0.0
    for z in z_samples:
        a_val, a_prime = system_at(z)
        second = (a_prime + a_val @ a_val)[1, :]
        first = a_val[1, :]
        a2c, a1c, a0c = op_coeffs(z)
        lfun = a2c * second + a1c * first + a0c * _E2
        scale = (abs(a2c) * np.abs(second).max()
                 + abs(a1c) * np.abs(first).max() + abs(a0c))
        worst = max(worst, float(np.abs(lfun).max()) / max(1.0, scale))
    return worst


def ghe_equivalence_residual(p: GheSystemParams, h: HeunGeneralCoeffs,
                             z_samples=None) -> float:
    """How far the system p is from satisfying the Heun equation h on E = Y2.

    Below 1e-9 for a compatible (p, h) pair; a 0.1 perturbation of phi pushes
    it above 1e-3.  No compatibility precondition, so it doubles as the
    negative control.
    """
    if z_samples is None:
        z_samples = _default_samples(1.0)
    alpha = p.alpha
    _check_distances(z_samples, (0.0, alpha, 1.0 / alpha), 0.05,
                     "ghe_equivalence_residual")
    tri = ghe_matrices(p)
    ainv = 1.0 / alpha

    def system_at(z):
        d1, d2, d3 = z, z - alpha, z - ainv
        a_val = tri.K / d1 + tri.R1 / d2 + tri.R2 / d3
        a_prime = -(tri.K / d1 ** 2 + tri.R1 / d2 ** 2 + tri.R2 / d3 ** 2)
        return a_val, a_prime

    return _functional_residual(system_at, lambda z: _ghe_op_coeffs(h, z),
                                z_samples)


def che_equivalence_residual(p: CheSystemParams, h: HeunConfluentCoeffs,
                             z_samples=None) -> float:
    """Confluent analogue of ghe_equivalence_residual (singularities 0, 1)."""
    if z_samples is None:
        z_samples = _default_samples(2.0)
    _check_distances(z_samples, (0.0, 1.0), 0.1, "che_equivalence_residual")
    tri = che_matrices(p)

    def system_at(z):
        w = z - 1.0
        a_val = tri.Amat / z + tri.Bmat / w ** 2 + tri.Cmat / w
        a_prime = -(tri.Amat / z ** 2 + 2.0 * tri.Bmat / w ** 3
                    + tri.Cmat / w ** 2)
        return a_val, a_prime

    return _functional_residual(system_at, lambda z: _che_op_coeffs(h, z),
                                z_samples)


# -- gauge consistency -------------------------------------------------------

_TEST_FNS = (
    (lambda z: 1.0, lambda z: 0.0, lambda z: 0.0),
    (lambda z: z, lambda z: 1.0, lambda z: 0.0),
    (lambda z: z * z, lambda z: 2.0 * z, lambda z: 2.0),
    (cmath.exp, cmath.exp, cmath.exp),
)


def _gauge_residual(op0, op1, gauge, test_fns, z_samples) -> float:
    worst = 0.0
    for z in z_samples:
        g, lg, lgp = gauge(z)
        a2c0, a1c0, a0c0 = op0(z)
        a2c1, a1c1, a0c1 = op1(z)
        for f, f1, f2 in test_fns:
            fv, f1v, f2v = f(z), f1(z), f2(z)
            # exact product-rule derivatives of g*f through the log-derivative
            gf = g * fv
            gf1 = g * (lg * fv + f1v)
            gf2 = g * ((lgp + lg * lg) * fv + 2.0 * lg * f1v + f2v)
            lhs = a2c1 * gf2 + a1c1 * gf1 + a0c1 * gf
            rhs = g * (a2c0 * f2v + a1c0 * f1v + a0c0 * fv)
            worst = max(worst,
                        abs(lhs - rhs) / max(1.0, abs(lhs), abs(rhs)))
    return worst


def _reject_cut_samples(z_samples, cut_end, what):
    """Principal powers put the cut on the real axis left of the base point."""
    for z in z_samples:
        if abs(z.imag) <= _CUT_IMAG and z.real <= cut_end:
            raise ValueError(f"{what}: sample {z} lies on the branch cut")


def ghe_gauge_residual(branch0: GheSystemParams, branch1: GheSystemParams,
                       test_fns=None, z_samples=None) -> float:
    """Residual of Op1[g f] = g Op0[f] for two diagonal branches.

    g(z) = (z-alpha)^(phi1-phi0) (z-1/alpha)^(psi1-psi0), principal powers.
    Below 1e-8 for genuine branches of one system; a wrong exponent fails
    by more than 1e-3.
    """
    if (branch0.alpha, branch0.b, branch0.c, branch0.nu) != \
            (branch1.alpha, branch1.b, branch1.c, branch1.nu):
        raise ValueError("ghe_gauge_residual: branches belong to different systems")
    if not (branch0.heun_compatible and branch1.heun_compatible):
        raise ValueError("ghe_gauge_residual: both branches must be compatible")
    if test_fns is None:
        test_fns = _TEST_FNS
    if z_samples is None:
        z_samples = _default_samples(2.0, n=8)
    alpha = branch0.alpha
    ainv = 1.0 / alpha
    _reject_cut_samples(z_samples, alpha, "ghe_gauge_residual")
    _check_distances(z_samples, (0.0, alpha, ainv), 0.05, "ghe_gauge_residual")
    h0 = ghe_coefficients(branch0)
    h1 = ghe_coefficients(branch1)
    dphi = branch1.phi - branch0.phi
    dpsi = branch1.psi - branch0.psi

    def gauge(z):
        w1, w2 = z - alpha, z - ainv
        g = w1 ** dphi * w2 ** dpsi
        lg = dphi / w1 + dpsi / w2
        lgp = -(dphi / w1 ** 2 + dpsi / w2 ** 2)
        return g, lg, lgp

    return _gauge_residual(lambda z: _ghe_op_coeffs(h0, z),
                           lambda z: _ghe_op_coeffs(h1, z),
                           gauge, test_fns, z_samples)


def che_gauge_residual(branch0: CheSystemParams, branch1: CheSystemParams,
                       test_fns=None, z_samples=None) -> float:
    """Confluent branch relation: g(z) = (z-1)^(a1'-a1) exp((a2-a2')/(z-1))."""
    if (branch0.b, branch0.g, branch0.nu) != \
            (branch1.b, branch1.g, branch1.nu):
        raise ValueError("che_gauge_residual: branches belong to different systems")
    if not (branch0.heun_compatible and branch1.heun_compatible):
        raise ValueError("che_gauge_residual: both branches must be compatible")
    if test_fns is None:
        test_fns = _TEST_FNS
    if z_samples is None:
        z_samples = _default_samples(2.0, n=8)
    _reject_cut_samples(z_samples, 1.0, "che_gauge_residual")
    _check_distances(z_samples, (0.0, 1.0), 0.1, "che_gauge_residual")
    h0 = che_coefficients(branch0)
    h1 = che_coefficients(branch1)
    da1 = branch1.a1 - branch0.a1
    ea2 = branch0.a2 - branch1.a2

    def gauge(z):
        w = z - 1.0
        g = w ** da1 * cmath.exp(ea2 / w)
        lg = da1 / w - ea2 / w ** 2
        lgp = -da1 / w ** 2 + 2.0 * ea2 / w ** 3
        return g, lg, lgp

    return _gauge_residual(lambda z: _che_op_coeffs(h0, z),
                           lambda z: _che_op_coeffs(h1, z),
                           gauge, test_fns, z_samples)
