"""Parameter spaces and the exact changes of variables between them.

Three charts describe the same objects: the torus flow (omega, delta, D, B, A),
the Fuchsian system chart (alpha, b, c, nu) with free diagonal entries
(phi, psi), and the confluent chart (b, g, nu) with free (a1, a2).  The maps
here are closed-form and exactly invertible on their domains; everything
differential lives in ``flow`` and ``heun``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

_SCALAR_TOL = 1e-10


def _check_finite(name, *values):
    for v in values:
        if not math.isfinite(abs(complex(v))):
            raise ValueError(f"{name}: non-finite parameter {v!r}")


@dataclass(frozen=True)
class TorusParams:
    """Parameters (omega, delta, D, B, A) of the cosine torus flow.

    delta = 1 is allowed as a sentinel tagging the confluent chart (see
    ``che_to_torus``); the flow engine itself rejects it.
    """

    omega: float
    delta: float
    D: float
    B: float
    A: float

    def __post_init__(self):
        _check_finite("TorusParams", self.omega, self.delta, self.D,
                      self.B, self.A)
        if self.omega == 0.0:
            raise ValueError("TorusParams: omega must be nonzero")
        if not 0.0 <= self.delta <= 1.0:
            raise ValueError(f"TorusParams: delta = {self.delta} outside [0, 1]")

    @property
    def confluent(self) -> bool:
        return self.delta == 1.0


@dataclass(frozen=True)
class GheSystemParams:
    """Normalized Fuchsian chart: singularities 0, alpha, 1/alpha, infinity.

    alpha > 1 picks the canonical representative of the pair {alpha, 1/alpha};
    b > 0 fixes the residual U(1,1) rotation freedom.
    """

    alpha: float
    b: float
    c: float
    nu: complex
    phi: complex = 0j
    psi: complex = 0j

    def __post_init__(self):
        object.__setattr__(self, "nu", complex(self.nu))
        object.__setattr__(self, "phi", complex(self.phi))
        object.__setattr__(self, "psi", complex(self.psi))
        _check_finite("GheSystemParams", self.alpha, self.b, self.c,
                      self.nu, self.phi, self.psi)
        if not self.alpha > 1.0:
            raise ValueError(f"GheSystemParams: alpha = {self.alpha} must be > 1")
        if not self.b > 0.0:
            raise ValueError(f"GheSystemParams: b = {self.b} must be > 0")

    @property
    def heun_compatible(self) -> bool:
        """Whether (phi, psi) satisfy b^2 = phi(conj(nu)+c-phi) with psi paired."""
        b2 = self.b ** 2
        lhs = self.phi * (self.nu.conjugate() + self.c - self.phi)
        if abs(lhs - b2) >= _SCALAR_TOL * (1.0 + b2):
            return False
        pair = (self.phi.conjugate(),
                self.nu + self.c - self.phi.conjugate())
        return any(abs(self.psi - cand) < _SCALAR_TOL * (1.0 + abs(self.psi))
                   for cand in pair)


@dataclass(frozen=True)
class CheSystemParams:
    """Confluent chart: Fuchsian 0, infinity and rank-1 irregular point at 1."""

    b: float
    g: float
    nu: complex
    a1: complex = 0j
    a2: complex = 0j

    def __post_init__(self):
        object.__setattr__(self, "nu", complex(self.nu))
        object.__setattr__(self, "a1", complex(self.a1))
        object.__setattr__(self, "a2", complex(self.a2))
        _check_finite("CheSystemParams", self.b, self.g, self.nu,
                      self.a1, self.a2)
        if self.b == 0.0:
            raise ValueError("CheSystemParams: b must be nonzero")

    @property
    def heun_compatible(self) -> bool:
        """Whether (a1, a2) satisfy b^2 = a2(g-a2), a2(nu-conj nu)+a1(2a2-g) = 0."""
        b2 = self.b ** 2
        if abs(self.a2 * (self.g - self.a2) - b2) >= _SCALAR_TOL * (1.0 + b2):
            return False
        lhs = self.a2 * (self.nu - self.nu.conjugate()) + self.a1 * (2.0 * self.a2 - self.g)
        scale = 1.0 + abs(self.a2 * (self.nu - self.nu.conjugate())) \
            + abs(self.a1) * abs(2.0 * self.a2 - self.g)
        return abs(lhs) < _SCALAR_TOL * scale


@dataclass(frozen=True, eq=False)
class FuchsianTriple:
    """Residue matrices (K at 0, R1 at alpha, R2 at 1/alpha) of a general system."""

    K: np.ndarray
    R1: np.ndarray
    R2: np.ndarray

    def __post_init__(self):
        for name in ("K", "R1", "R2"):
            m = np.asarray(getattr(self, name), dtype=complex)
            if m.shape != (2, 2) or not np.all(np.isfinite(m.view(float))):
                raise ValueError(f"FuchsianTriple.{name}: need a finite 2x2 matrix")
            object.__setattr__(self, name, m)


@dataclass(frozen=True, eq=False)
class ConfluentTriple:
    """Matrices (Amat at 0, Bmat second-order and Cmat first-order at 1)."""

    Amat: np.ndarray
    Bmat: np.ndarray
    Cmat: np.ndarray

    def __post_init__(self):
        for name in ("Amat", "Bmat", "Cmat"):
            m = np.asarray(getattr(self, name), dtype=complex)
            if m.shape != (2, 2) or not np.all(np.isfinite(m.view(float))):
                raise ValueError(f"ConfluentTriple.{name}: need a finite 2x2 matrix")
            object.__setattr__(self, name, m)


def ghe_to_torus(p: GheSystemParams) -> TorusParams:
    """Fuchsian chart to torus chart.

    omega = (alpha + 1/alpha) / (2 b (alpha - 1/alpha)),  delta = 2/(alpha + 1/alpha),
    D = -Re nu,  B = (c + Re nu) / (2b),  A = Im nu / (b (alpha - 1/alpha)).
    """
    alpha, b = p.alpha, p.b
    spread = alpha - 1.0 / alpha
    mean2 = alpha + 1.0 / alpha
    return TorusParams(omega=mean2 / (2.0 * b * spread),
                       delta=2.0 / mean2,
                       D=-p.nu.real,
                       B=(p.c + p.nu.real) / (2.0 * b),
                       A=p.nu.imag / (b * spread))


def torus_to_ghe(t: TorusParams) -> GheSystemParams:
    """Torus chart to the alpha > 1 Fuchsian chart (phi = psi = 0).

    Requires delta in (0, 1): delta = 0 sends alpha to infinity (that flow is
    handled directly by the flow engine), and omega <= 0 is rejected because
    the normalization b > 0 absorbs the sign of omega by tau reversal instead.
    """
    if not 0.0 < t.delta < 1.0:
        raise ValueError(f"torus_to_ghe: delta = {t.delta} outside (0, 1)")
    if t.omega <= 0.0:
        raise ValueError("torus_to_ghe: omega must be positive in this chart")
    alpha = (1.0 + math.sqrt(1.0 - t.delta ** 2)) / t.delta
    spread = alpha - 1.0 / alpha
    b = (alpha + 1.0 / alpha) / (2.0 * t.omega * spread)
    re_nu = -t.D
    nu = complex(re_nu, t.A * b * spread)
    c = 2.0 * b * t.B - re_nu
    return GheSystemParams(alpha=alpha, b=b, c=c, nu=nu)


def che_to_torus(p: CheSystemParams) -> TorusParams:
    """Confluent chart to torus parameters, tagged with the delta = 1 sentinel."""
    return TorusParams(omega=1.0 / p.b,
                       delta=1.0,
                       D=-p.nu.real,
                       B=p.g / (2.0 * p.b),
                       A=p.nu.imag / p.b)


def torus_to_che(omega: float, B: float, A: float, D: float) -> CheSystemParams:
    """Torus scalars to the confluent chart; a1, a2 stay at the unresolved 0."""
    if omega == 0.0:
        raise ValueError("torus_to_che: omega must be nonzero")
    return CheSystemParams(b=1.0 / omega, g=2.0 * B / omega,
                           nu=complex(-D, A / omega))


def ghe_matrices(p: GheSystemParams) -> FuchsianTriple:
    """Concrete residue matrices of the normalized general system."""
    b, c, nu, phi, psi = p.b, p.c, p.nu, p.phi, p.psi
    k = np.array([[nu, 0.0], [0.0, 0.0]], dtype=complex)
    r1 = np.array([[phi, b], [-b, phi - nu.conjugate() - c]], dtype=complex)
    r2 = np.array([[psi - nu - c, -b], [b, psi]], dtype=complex)
    return FuchsianTriple(k, r1, r2)


def che_matrices(p: CheSystemParams) -> ConfluentTriple:
    """Concrete matrices of the normalized confluent system."""
    b, g, nu, a1, a2 = p.b, p.g, p.nu, p.a1, p.a2
    amat = np.array([[nu, 0.0], [0.0, 0.0]], dtype=complex)
    bmat = np.array([[a2, b], [-b, a2 - g]], dtype=complex)
    cmat = np.array([[a1, 0.0], [0.0, a1 + nu - nu.conjugate()]], dtype=complex)
    return ConfluentTriple(amat, bmat, cmat)


def _tt(m: np.ndarray) -> np.ndarray:
    """Conjugation by the permutation matrix: swap both diagonals."""
    return np.array([[m[1, 1], m[1, 0]], [m[0, 1], m[0, 0]]])


def _is_scalar(m: np.ndarray) -> bool:
    half_trace = 0.5 * (m[0, 0] + m[1, 1])
    residual = np.linalg.norm(m - half_trace * np.eye(2))
    return residual <= _SCALAR_TOL * (1.0 + np.linalg.norm(m))


def is_torus_dynamical_fuchsian(f: FuchsianTriple) -> bool:
    """Whether the system preserves the torus |Phi| = 1 x |z| = 1.

    The criterion is R2 - conj(R1)^tt scalar and K + conj(K)^tt + R1 + R2
    scalar, where ^tt swaps the diagonal entries and the off-diagonal entries.
    """
    first = f.R2 - _tt(np.conj(f.R1))
    second = f.K + _tt(np.conj(f.K)) + f.R1 + f.R2
    return _is_scalar(first) and _is_scalar(second)


def is_torus_dynamical_confluent(c: ConfluentTriple) -> bool:
    """Confluent analogue: A + conj(A)^tt + conj(C)^tt, B + conj(B)^tt and
    C - conj(C)^tt must all be scalar matrices."""
    first = c.Amat + _tt(np.conj(c.Amat)) + _tt(np.conj(c.Cmat))
    second = c.Bmat + _tt(np.conj(c.Bmat))
    third = c.Cmat - _tt(np.conj(c.Cmat))
    return _is_scalar(first) and _is_scalar(second) and _is_scalar(third)
