"""Closed-form results and criterion-based diagnostics.

The A = D = 0 axis admits exact answers: the rotation number in closed form,
the growth points B_n where the monodromy turns scalar, and the eigenvalue
data behind the monodromy criterion.  Off the axis the tools become scans and
audits built on the flow module: the scalar-distance profile d(M) along a
vertical line (constriction detection) and the quantization property check.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from scipy.optimize import minimize_scalar

from .flow import IntegrationError, lift_field, poincare_matrix, rotation_number
from .params import TorusParams
from .su11 import AccuracyError, scalar_distance


def closed_form_rho(omega: float, delta: float, B: float) -> float:
    """Exact rotation number on the A = D = 0 axis.

    0 for |B| <= 1 (the field has an equilibrium), otherwise
    sqrt(B^2-1)/(omega sqrt(1-delta^2)) with the sign of B.
    """
    if omega <= 0.0:
        raise ValueError(f"closed_form_rho: omega = {omega} must be > 0")
    if not 0.0 <= delta < 1.0:
        raise ValueError(f"closed_form_rho: delta = {delta} outside [0, 1)")
    if abs(B) <= 1.0:
        return 0.0
    rho = math.sqrt(B * B - 1.0) / (omega * math.sqrt(1.0 - delta * delta))
    return rho if B > 0.0 else -rho


def z_minus(delta: float) -> float:
    """The in-disk zero (1 - sqrt(1-delta^2))/delta of the denominator."""
    if not 0.0 < delta < 1.0:
        raise ValueError(f"z_minus: delta = {delta} outside (0, 1)")
    return (1.0 - math.sqrt(1.0 - delta * delta)) / delta


def mu_pair(omega: float, delta: float, B: float) -> Tuple[float, float]:
    """Residue exponents (mu1, mu2) = (-B +/- sqrt(B^2-1))/(2 omega sqrt(1-delta^2)).

    Their difference is the closed-form rotation number.
    """
    if B <= 1.0:
        raise ValueError(f"mu_pair: B = {B} must be > 1")
    if omega <= 0.0:
        raise ValueError(f"mu_pair: omega = {omega} must be > 0")
    if not 0.0 <= delta < 1.0:
        raise ValueError(f"mu_pair: delta = {delta} outside [0, 1)")
    den = 2.0 * omega * math.sqrt(1.0 - delta * delta)
    root = math.sqrt(B * B - 1.0)
    return (-B + root) / den, (-B - root) / den


@dataclass(frozen=True)
class GrowthPoint:
    """Axis point B_n where the n-th phase-lock area attaches."""

    n: int
    B: float


def growth_points(omega: float, delta: float, n_max: int) -> List[GrowthPoint]:
    """B_n = sqrt(omega^2 (1-delta^2) n^2 + 1) for n = 0..n_max."""
    if omega <= 0.0:
        raise ValueError(f"growth_points: omega = {omega} must be > 0")
    if not 0.0 <= delta < 1.0:
        raise ValueError(f"growth_points: delta = {delta} outside [0, 1)")
    if n_max < 0:
        raise ValueError(f"growth_points: n_max = {n_max} must be >= 0")
    w2 = omega * omega * (1.0 - delta * delta)
    return [GrowthPoint(n=n, B=math.sqrt(w2 * n * n + 1.0))
            for n in range(n_max + 1)]


def scalar_monodromy_condition(omega: float, delta: float, D: float,
                               n: int) -> float:
    """The B >= 1 solving B^2 - 1 = omega^2 (1-delta^2)(D-n)^2.

    Necessary for an identity Poincare map at A = 0; sufficient only at D = 0
    (where it reduces to the growth points), so off-axis values are candidates.
    """
    if not 0.0 <= delta < 1.0:
        raise ValueError(f"scalar_monodromy_condition: delta = {delta} outside [0, 1)")
    gap = D - n
    return math.sqrt(1.0 + omega * omega * (1.0 - delta * delta) * gap * gap)


def residue_eigen_differences(b: float, c: float,
                              nu: complex) -> Tuple[complex, complex]:
    """Eigenvalue differences (lambda0, lambda_alpha) of the residues at 0, alpha.

    lambda0 = nu; lambda_alpha = sqrt((conj(nu)+c)^2 - 4b^2), principal branch,
    defined up to overall sign and independent of the diagonal parameter phi.
    """
    nu = complex(nu)
    w = nu.conjugate() + c
    return nu, cmath.sqrt(w * w - 4.0 * b * b)


@dataclass(frozen=True)
class ScanMinimum:
    """A strict local minimum of d(M) on the scan line, after refinement."""

    A: float
    d: float
    refined: bool


@dataclass(frozen=True)
class ScanReport:
    B: float
    threshold: float
    samples: List[Tuple[float, float, float]]
    minima: List[ScanMinimum]

    @property
    def candidates(self) -> List[ScanMinimum]:
        """Local minima below threshold: constriction candidates."""
        return [m for m in self.minima if m.d < self.threshold]

    @property
    def min_distance(self) -> float:
        vals = [d for _, _, d in self.samples] + [m.d for m in self.minima]
        return min(vals)


def scan_scalar_distance(omega: float, delta: float, D: float, B_fixed: float,
                         A_range: Tuple[float, float], nA: int,
                         threshold: float = 1e-2, tol: float = 1e-10,
                         refine: bool = True) -> ScanReport:
    """Profile of d(M) along the vertical segment B = B_fixed, A in A_range.

    Strict local minima of the sampled profile are polished by a bounded
    one-dimensional minimization (unless refine=False), since a constriction
    sits at an isolated zero of d that a coarse grid straddles.
    """
    if nA < 2:
        raise ValueError(f"scan_scalar_distance: nA = {nA} must be >= 2")
    a_lo, a_hi = A_range
    if not a_lo < a_hi:
        raise ValueError("scan_scalar_distance: empty A range")

    def dist_at(a: float) -> float:
        f = lift_field(TorusParams(omega=omega, delta=delta, D=D,
                                   B=B_fixed, A=a))
        return scalar_distance(poincare_matrix(f, tol))

    step = (a_hi - a_lo) / (nA - 1)
    grid = [a_lo + i * step for i in range(nA)]
    dvals = [dist_at(a) for a in grid]
    samples = [(B_fixed, a, d) for a, d in zip(grid, dvals)]

    minima = []
    for i in range(1, nA - 1):
        if dvals[i] < dvals[i - 1] and dvals[i] < dvals[i + 1]:
            a_star, d_star, polished = grid[i], dvals[i], False
            if refine:
                res = minimize_scalar(dist_at, bounds=(grid[i - 1], grid[i + 1]),
                                      method="bounded",
                                      options={"xatol": 1e-6})
                if res.fun < d_star:
                    a_star, d_star = float(res.x), float(res.fun)
                polished = True
            minima.append(ScanMinimum(A=a_star, d=d_star, refined=polished))

    return ScanReport(B=B_fixed, threshold=threshold, samples=samples,
                      minima=minima)


@dataclass(frozen=True)
class QuantizationViolation:
    params: TorusParams
    rho: float
    lyapunov: float
    dist: float
    reason: str


@dataclass(frozen=True)
class QuantizationReport:
    n_samples: int
    n_locked: int
    violations: List[QuantizationViolation]
    max_det_defect: float
    lyap_threshold: float
    dist_tol: float

    @property
    def ok(self) -> bool:
        return not self.violations


def quantization_audit(samples: Sequence[TorusParams],
                       lyap_threshold: float = 1e-3, dist_tol: float = 1e-6,
                       tol: float = 1e-10) -> QuantizationReport:
    """Check Lambda > threshold => rho is integer on a batch of parameters.

    Numerical failures are reported as violations too (reason field), never
    swallowed: a sample that cannot certify its integer winding is exactly
    the kind of point the audit exists to surface.
    """
    violations = []
    n_locked = 0
    max_defect = 0.0
    for t in samples:
        try:
            r = rotation_number(lift_field(t), tol)
        except (IntegrationError, AccuracyError) as e:
            violations.append(QuantizationViolation(
                params=t, rho=math.nan, lyapunov=math.nan, dist=math.nan,
                reason=f"{type(e).__name__}: {e}"))
            continue
        max_defect = max(max_defect, r.det_defect)
        if r.lyapunov > lyap_threshold:
            n_locked += 1
            dist = abs(r.rho - round(r.rho))
            if dist >= dist_tol:
                violations.append(QuantizationViolation(
                    params=t, rho=r.rho, lyapunov=r.lyapunov, dist=dist,
                    reason="noninteger rho at positive Lyapunov exponent"))
    return QuantizationReport(n_samples=len(samples), n_locked=n_locked,
                              violations=violations, max_det_defect=max_defect,
                              lyap_threshold=lyap_threshold, dist_tol=dist_tol)
