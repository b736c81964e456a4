"""Determinant-1 Mobius matrices of the unit disk: the group SU(1,1).

A matrix M = [[a, b], [conj(b), conj(a)]] with |a|^2 - |b|^2 = 1 acts on the
Riemann sphere by

    Phi  ->  (M21 + M22*Phi) / (M11 + M12*Phi),

the convention inherited from projectivizing Y -> M Y with Phi = Y2/Y1.
This action preserves the unit circle and the unit disk, and every Poincare
map and monodromy in the package is carried by such a matrix.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

TWO_PI = 2.0 * math.pi

#: classification tolerance on |Re a| - 1 (and on the identity check)
EPS_CLASSIFY = 1e-9
#: determinant defects below this are projected away, larger ones are errors
MAX_PROJECTION_DEFECT = 1e-6


class AccuracyError(RuntimeError):
    """A numerical result violates its analytic constraint beyond tolerance."""


class MapKind(Enum):
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"
    HYPERBOLIC = "hyperbolic"
    IDENTITY = "identity"


@dataclass(frozen=True)
class MapClass:
    kind: MapKind
    trace_half: float  # Re a = (tr M)/2, real for SU(1,1)


@dataclass(frozen=True)
class Su11Matrix:
    """The matrix [[a, b], [conj(b), conj(a)]], det = |a|^2 - |b|^2 = 1."""

    a: complex
    b: complex

    def __post_init__(self):
        object.__setattr__(self, "a", complex(self.a))
        object.__setattr__(self, "b", complex(self.b))
        a2 = abs(self.a) ** 2
        b2 = abs(self.b) ** 2
        det = a2 - b2
        # The 1e-9 budget is scaled by |a|^2 + |b|^2: for a strongly
        # hyperbolic matrix (entries ~1e4) the subtraction itself carries
        # rounding noise ~(|a|^2 + |b|^2)*eps, so an absolute gate would
        # reject exact group elements.  At entry magnitudes O(1) this is
        # the plain 1e-9 check.
        if not math.isfinite(det) or abs(det - 1.0) > 1e-9 * max(1.0, a2 + b2):
            raise ValueError(f"not an SU(1,1) pair: |a|^2 - |b|^2 = {det!r}")

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b],
                         [self.b.conjugate(), self.a.conjugate()]])

    def __matmul__(self, other: "Su11Matrix") -> "Su11Matrix":
        return Su11Matrix(self.a * other.a + self.b * other.b.conjugate(),
                          self.a * other.b + self.b * other.a.conjugate())


def project(m, max_defect: float = MAX_PROJECTION_DEFECT) -> Su11Matrix:
    """Project a near-SU(1,1) 2x2 matrix onto the group.

    Divides by the principal sqrt of the determinant, then symmetrizes
    a <- (M11 + conj(M22))/2, b <- (M12 + conj(M21))/2.  The pre-projection
    determinant defect must be below ``max_defect``; a larger defect means
    the integrator (not the model) failed, and raises AccuracyError.
    """
    m = np.asarray(m, dtype=complex)
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    defect = abs(det - 1.0)
    if not math.isfinite(defect) or defect >= max_defect:
        raise AccuracyError(f"determinant defect {defect:.3e} exceeds "
                            f"{max_defect:.1e} before projection")
    root = cmath.sqrt(det)
    scaled = m / root
    a = 0.5 * (scaled[0, 0] + scaled[1, 1].conjugate())
    b = 0.5 * (scaled[0, 1] + scaled[1, 0].conjugate())
    return Su11Matrix(a, b)


def act(m: Su11Matrix, phi: complex) -> complex:
    """Apply the Mobius map of ``m`` to a point of the Riemann sphere.

    A pole of the map (denominator under 1e-300) returns complex infinity.
    """
    den = m.a + m.b * phi
    if abs(den) < 1e-300:
        return complex(math.inf, 0.0)
    return (m.b.conjugate() + m.a.conjugate() * phi) / den


def classify(m: Su11Matrix) -> MapClass:
    """Elliptic / parabolic / hyperbolic / identity by the real half-trace.

    The identity test (both signs of +-Id) runs first so that near-scalar
    matrices are not misreported as parabolic.
    """
    re_a = m.a.real
    for sign in (1.0, -1.0):
        dist = math.sqrt(2.0 * abs(m.a - sign) ** 2 + 2.0 * abs(m.b) ** 2)
        if dist < EPS_CLASSIFY:
            return MapClass(MapKind.IDENTITY, re_a)
    mag = abs(re_a)
    if mag < 1.0 - EPS_CLASSIFY:
        return MapClass(MapKind.ELLIPTIC, re_a)
    if mag > 1.0 + EPS_CLASSIFY:
        return MapClass(MapKind.HYPERBOLIC, re_a)
    return MapClass(MapKind.PARABOLIC, re_a)


def fixed_points(m: Su11Matrix) -> list[tuple[complex, complex]]:
    """Fixed points of the Mobius map with their multipliers.

    Solves b*Phi^2 + (a - conj(a))*Phi - conj(b) = 0; the multiplier at a
    fixed point is the map derivative 1/(a + b*Phi)^2.  Ordering is fixed:
    elliptic returns [inside-disk, outside], hyperbolic [attracting,
    repelling] (both on the circle), parabolic the double point alone.
    The identity map has no isolated fixed points and is rejected.
    """
    kind = classify(m).kind
    if kind is MapKind.IDENTITY:
        raise ValueError("identity map: every point is fixed")
    a, b = m.a, m.b
    if abs(b) < 1e-300:
        # diagonal elliptic: 0 and infinity
        return [(0.0 + 0.0j, 1.0 / a ** 2),
                (complex(math.inf, 0.0), 1.0 / a.conjugate() ** 2)]

    if kind is MapKind.PARABOLIC:
        z = complex(0.0, -a.imag) / b
        z /= abs(z)  # the double root lies on the circle
        return [(z, 1.0 / (a + b * z) ** 2)]

    # discriminant via the group identity: (a-conj a)^2 + 4|b|^2 = 4(Re a^2 - 1)
    disc = 4.0 * (a.real ** 2 - 1.0)
    root = cmath.sqrt(complex(disc, 0.0))
    n_plus = complex(0.0, -2.0 * a.imag) + root
    n_minus = complex(0.0, -2.0 * a.imag) - root
    n_big = n_plus if abs(n_plus) >= abs(n_minus) else n_minus
    z_big = n_big / (2.0 * b)
    # stable companion root from the product relation z1*z2 = -conj(b)/b
    z_small = (-b.conjugate() / b) / z_big
    pts = [z_big, z_small]

    if kind is MapKind.ELLIPTIC:
        pts.sort(key=abs)  # inside the disk first
    else:
        for i, z in enumerate(pts):
            pts[i] = z / abs(z)  # hyperbolic points lie on the circle
        pts.sort(key=lambda z: abs(1.0 / (a + b * z) ** 2))  # attracting first
    return [(z, 1.0 / (a + b * z) ** 2) for z in pts]


def scalar_distance(m) -> float:
    """Relative Frobenius distance of a 2x2 matrix from the scalar line.

    d(M) = ||M - (tr M / 2) Id||_F / ||M||_F, in [0, sqrt(2)]; zero exactly
    for scalar matrices.  Accepts an Su11Matrix or anything array-like.
    """
    if isinstance(m, Su11Matrix):
        m = m.matrix
    m = np.asarray(m, dtype=complex)
    norm = np.linalg.norm(m)
    if norm == 0.0:
        raise ValueError("scalar_distance of the zero matrix")
    half_trace = 0.5 * (m[0, 0] + m[1, 1])
    return float(np.linalg.norm(m - half_trace * np.eye(2)) / norm)


def lyapunov_exponent(m: Su11Matrix) -> float:
    """max ln|multiplier| / 2pi over circle fixed points; 0 unless hyperbolic."""
    if classify(m).kind is not MapKind.HYPERBOLIC:
        return 0.0
    return max(math.log(abs(mult)) for _, mult in fixed_points(m)) / TWO_PI
