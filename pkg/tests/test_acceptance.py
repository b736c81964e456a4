"""Acceptance gate: twelve numbered criteria, one verdict line each.

Every test prints `criterion NN ...: PASS/FAIL (detail)` so a bare
`pytest -s tests/test_acceptance.py` reads as a checklist.  Tolerances and
populations are pinned here and nowhere else; the per-module test files cover
the same machinery at finer grain.
"""

import math
import time
from dataclasses import replace

import numpy as np
import pytest

from phaselock.analysis import (closed_form_rho, growth_points,
                                quantization_audit, scan_scalar_distance)
from phaselock.flow import _raw_poincare, flow_map_consistency, lift_field, \
    poincare_matrix, rotation_number
from phaselock.heun import (NoSolution, OneParameterFamily, che_coefficients,
                            che_equivalence_residual, che_gauge_residual,
                            che_solve_diagonal, ghe_coefficients,
                            ghe_equivalence_residual, ghe_gauge_residual,
                            ghe_solve_diagonal)
from phaselock.params import CheSystemParams, GheSystemParams, TorusParams
from phaselock.portrait import sweep
from phaselock.rng import SplitMix64
from phaselock.su11 import scalar_distance

B_GRID = (1.1, 1.5, 2.0, 3.0)
OMEGA_GRID = (0.5, 1.0, 2.0)
DELTA_GRID = (0.0, 0.3, 0.6)


def _verdict(n: int, name: str, ok: bool, detail: str) -> None:
    print("criterion %02d %s: %s (%s)" % (n, name, "PASS" if ok else "FAIL",
                                          detail))
    assert ok, f"criterion {n}: {detail}"


def _axis(omega, delta, B, A=0.0, D=0.0):
    return TorusParams(omega=omega, delta=delta, D=D, B=B, A=A)


def _criteria_1_to_4_population():
    pop = []
    for b in B_GRID:
        for om in OMEGA_GRID:
            for de in DELTA_GRID:
                pop.append(_axis(om, de, b))
    for b in (0.0, 0.3, 0.9):
        pop.append(_axis(1.0, 0.6, b))
    for de in (0.0, 0.5):
        for gp in growth_points(1.0, de, 3):
            if gp.n == 0:
                continue
            for shift in (0.0, -0.05, 0.05):
                pop.append(_axis(1.0, de, gp.B + shift))
    rng = SplitMix64(20260816)
    for _ in range(200):
        b = rng.uniform(-4.0, 4.0)
        a = rng.uniform(-4.0, 4.0)
        pop.append(TorusParams(omega=1.0, delta=0.4, D=0.0, B=b, A=a))
    return pop


@pytest.fixture(scope="module")
def portraits():
    """The 64x64 sweeps shared by criteria 11 and 12."""
    rect = (0.0, 3.0, 0.0, 3.0)
    t0 = time.perf_counter()
    serial = sweep(1.0, 0.3, 0.0, rect, 64, 64, workers=1)
    pooled = sweep(1.0, 0.3, 0.0, rect, 64, 64, workers=8)
    elapsed = time.perf_counter() - t0
    flat = sweep(1.0, 0.0, 0.0, rect, 64, 64, workers=8)
    return {"serial": serial, "pooled": pooled, "flat": flat,
            "elapsed_11": elapsed}


def test_criterion_01_closed_form_rotation_number():
    t0 = time.perf_counter()
    worst = 0.0
    for b in B_GRID:
        for om in OMEGA_GRID:
            for de in DELTA_GRID:
                rho = rotation_number(lift_field(_axis(om, de, b))).rho
                want = math.sqrt(b * b - 1.0) / (om * math.sqrt(1.0 - de * de))
                worst = max(worst, abs(rho - want))
    dt = time.perf_counter() - t0
    _verdict(1, "closed-form rho", worst < 1e-8 and dt < 10.0,
             "max err %.2e over 36 points, %.1fs" % (worst, dt))


def test_criterion_02_zero_tongue():
    ok = True
    for b in (0.0, 0.3, 0.9):
        r = rotation_number(lift_field(_axis(1.0, 0.6, b)))
        ok = ok and r.rho == 0.0 and r.lyapunov > 0.0
    _verdict(2, "locked zero tongue", ok, "rho exactly 0, Lambda > 0 at 3 B")


def test_criterion_03_growth_points():
    t0 = time.perf_counter()
    worst_rho = 0.0
    worst_center = 0.0
    best_flank = math.inf
    for de in (0.0, 0.5):
        for gp in growth_points(1.0, de, 3):
            if gp.n == 0:
                continue
            rho = rotation_number(lift_field(_axis(1.0, de, gp.B))).rho
            worst_rho = max(worst_rho, abs(rho - gp.n))
            d0 = scalar_distance(poincare_matrix(lift_field(_axis(1.0, de, gp.B))))
            worst_center = max(worst_center, d0)
            for shift in (-0.05, 0.05):
                d = scalar_distance(poincare_matrix(
                    lift_field(_axis(1.0, de, gp.B + shift))))
                best_flank = min(best_flank, d)
    dt = time.perf_counter() - t0
    ok = worst_rho < 1e-8 and worst_center < 1e-6 and best_flank > 1e-3 \
        and dt < 10.0
    _verdict(3, "growth points", ok,
             "rho err %.2e, center d %.2e, flank d %.2e, %.1fs"
             % (worst_rho, worst_center, best_flank, dt))


def test_criterion_04_quantization_audit():
    t0 = time.perf_counter()
    rng = SplitMix64(20260816)
    samples = [TorusParams(omega=1.0, delta=0.4, D=0.0,
                           B=rng.uniform(-4.0, 4.0), A=rng.uniform(-4.0, 4.0))
               for _ in range(200)]
    rep = quantization_audit(samples)
    dt = time.perf_counter() - t0
    ok = rep.ok and dt < 60.0
    _verdict(4, "quantization audit", ok,
             "%d samples, %d locked, %d violations, %.1fs"
             % (rep.n_samples, rep.n_locked, len(rep.violations), dt))


def test_criterion_05_su11_exactness_and_consistency():
    worst_defect = 0.0
    for p in _criteria_1_to_4_population():
        _, defect = _raw_poincare(lift_field(p), 1e-10, 1e-10)
        worst_defect = max(worst_defect, defect)
    rng = SplitMix64(5)
    worst_cons = 0.0
    for _ in range(20):
        om = rng.uniform(0.5, 2.0)
        de = rng.uniform(0.0, 0.6)
        dd = rng.uniform(-1.0, 1.0)
        b = rng.uniform(-3.0, 3.0)
        a = rng.uniform(-3.0, 3.0)
        f = lift_field(TorusParams(omega=om, delta=de, D=dd, B=b, A=a))
        worst_cons = max(worst_cons, flow_map_consistency(f, samples=8))
    ok = worst_defect < 1e-9 and worst_cons < 1e-7
    _verdict(5, "SU(1,1) exactness", ok,
             "max det defect %.2e, max map consistency %.2e"
             % (worst_defect, worst_cons))


def _ghe_params(alpha, b, c, nu, sign=1, branch="conj"):
    phi, psi = ghe_solve_diagonal(alpha, b, c, nu, root_sign=sign,
                                  psi_branch=branch)
    return GheSystemParams(alpha=alpha, b=b, c=c, nu=nu, phi=phi, psi=psi)


def test_criterion_06_ghe_equivalence():
    t0 = time.perf_counter()
    rng = SplitMix64(6)
    worst_pos = 0.0
    weakest_ctrl = math.inf
    for _ in range(50):
        alpha = rng.uniform(1.2, 4.0)
        b = rng.uniform(0.1, 2.0)
        c = rng.uniform(-2.0, 2.0)
        nu = complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0))
        for sign in (1, -1):
            for branch in ("conj", "complement"):
                p = _ghe_params(alpha, b, c, nu, sign, branch)
                r = ghe_equivalence_residual(p, ghe_coefficients(p))
                worst_pos = max(worst_pos, r)
        p = _ghe_params(alpha, b, c, nu)
        h = ghe_coefficients(p)
        ctrl = ghe_equivalence_residual(replace(p, phi=p.phi + 0.1), h)
        weakest_ctrl = min(weakest_ctrl, ctrl)
    dt = time.perf_counter() - t0
    ok = worst_pos < 1e-9 and weakest_ctrl > 1e-3 and dt < 5.0
    _verdict(6, "GHE equivalence", ok,
             "200 branches worst %.2e, weakest control %.2e, %.1fs"
             % (worst_pos, weakest_ctrl, dt))


def test_criterion_07_che_equivalence():
    rng = SplitMix64(7)
    worst = 0.0
    n_res = 0
    for _ in range(50):
        b = rng.uniform(0.2, 2.0)
        g = rng.uniform(-2.0, 2.0)
        nu = complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0))
        for sign in (1, -1):
            out = che_solve_diagonal(b, g, nu, root_sign=sign)
            if isinstance(out, (NoSolution, OneParameterFamily)):
                continue
            p = CheSystemParams(b=b, g=g, nu=nu, a1=out[0], a2=out[1])
            worst = max(worst, che_equivalence_residual(p, che_coefficients(p)))
            n_res += 1
    degenerates_exact = (
        che_solve_diagonal(1.0, 2.0, 0j) == OneParameterFamily(a2=1.0 + 0j)
        and che_solve_diagonal(1.0, 2.0, 1j) == NoSolution()
        and che_solve_diagonal(1.0, -2.0, 0.5 + 0j)
        == OneParameterFamily(a2=-1.0 + 0j))
    fam_worst = 0.0
    for a1 in (0j, 1.0 + 0j, -0.7 + 0.3j):
        p = CheSystemParams(b=1.0, g=2.0, nu=0j, a1=a1, a2=1.0 + 0j)
        fam_worst = max(fam_worst,
                        che_equivalence_residual(p, che_coefficients(p)))
    ok = worst < 1e-9 and degenerates_exact and fam_worst < 1e-9
    _verdict(7, "CHE equivalence", ok,
             "%d residuals worst %.2e, degenerates %s, family worst %.2e"
             % (n_res, worst, degenerates_exact, fam_worst))


def test_criterion_08_gauge_consistency():
    rng = SplitMix64(8)
    worst_ghe = 0.0
    for _ in range(10):
        alpha = rng.uniform(1.2, 4.0)
        b = rng.uniform(0.1, 2.0)
        c = rng.uniform(-2.0, 2.0)
        nu = complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0))
        p0 = _ghe_params(alpha, b, c, nu, 1)
        p1 = _ghe_params(alpha, b, c, nu, -1)
        worst_ghe = max(worst_ghe, ghe_gauge_residual(p0, p1))
    worst_che = 0.0
    used = 0
    for _ in range(20):
        b = rng.uniform(0.2, 2.0)
        g = rng.uniform(-2.0, 2.0)
        nu = complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0))
        o0 = che_solve_diagonal(b, g, nu, root_sign=1)
        o1 = che_solve_diagonal(b, g, nu, root_sign=-1)
        if isinstance(o0, (NoSolution, OneParameterFamily)):
            continue
        p0 = CheSystemParams(b=b, g=g, nu=nu, a1=o0[0], a2=o0[1])
        p1 = CheSystemParams(b=b, g=g, nu=nu, a1=o1[0], a2=o1[1])
        worst_che = max(worst_che, che_gauge_residual(p0, p1))
        used += 1
    ok = worst_ghe < 1e-8 and worst_che < 1e-8
    _verdict(8, "gauge consistency", ok,
             "GHE worst %.2e, CHE worst %.2e (%d pairs)"
             % (worst_ghe, worst_che, used))


def test_criterion_09_constriction_breaking():
    t0 = time.perf_counter()
    flat = scan_scalar_distance(1.0, 0.0, 0.0, 1.0, (0.5, 6.0), 256)
    bent = scan_scalar_distance(1.0, 0.25, 0.0, 1.0, (0.5, 6.0), 256)
    dt = time.perf_counter() - t0
    flat_min = min((m.d for m in flat.candidates), default=math.inf)
    ok = flat_min < 1e-2 and bent.min_distance > 1e-2 and dt < 120.0
    _verdict(9, "constriction breaking", ok,
             "delta=0 min d %.2e, delta=0.25 min d %.2e, %.1fs"
             % (flat_min, bent.min_distance, dt))


def test_criterion_10_symmetries():
    rng = SplitMix64(10)
    worst_mirror = 0.0
    worst_anti = 0.0
    for _ in range(20):
        om = rng.uniform(0.25, 2.0)
        de = rng.uniform(0.0, 0.8)
        dd = rng.uniform(-1.0, 1.0)
        b = rng.uniform(-4.0, 4.0)
        a = rng.uniform(-4.0, 4.0)
        base = rotation_number(lift_field(
            TorusParams(omega=om, delta=de, D=dd, B=b, A=a))).rho
        mirror = rotation_number(lift_field(
            TorusParams(omega=om, delta=de, D=dd, B=b, A=-a))).rho
        anti = rotation_number(lift_field(
            TorusParams(omega=om, delta=de, D=-dd, B=-b, A=a))).rho
        worst_mirror = max(worst_mirror, abs(base - mirror))
        worst_anti = max(worst_anti, abs(base + anti))
    ok = worst_mirror < 1e-9 and worst_anti < 1e-9
    _verdict(10, "rho symmetries", ok,
             "mirror %.2e, antisymmetry %.2e over 20 points"
             % (worst_mirror, worst_anti))


def test_criterion_11_portrait_determinism(portraits):
    serial, pooled = portraits["serial"], portraits["pooled"]
    identical = (serial.rho.tobytes() == pooled.rho.tobytes()
                 and serial.lyapunov.tobytes() == pooled.lyapunov.tobytes()
                 and serial.class_codes.tobytes() == pooled.class_codes.tobytes())
    nan_free = not (np.isnan(serial.rho).any()
                    or np.isnan(serial.lyapunov).any())
    dt = portraits["elapsed_11"]
    ok = identical and nan_free and serial.meta["failures"] == 0 and dt < 600.0
    _verdict(11, "portrait determinism", ok,
             "64x64, workers 1 vs 8 identical %s, nan-free %s, %.1fs"
             % (identical, nan_free, dt))


def test_criterion_12_figure_class_quantization(portraits):
    def plateaus_only(g):
        locked = g.lyapunov > 0.0
        with np.errstate(invalid="ignore"):
            frac = np.abs(g.rho - np.round(g.rho))
        return not bool(np.any(locked & (frac >= 1e-6)))

    flat_ok = plateaus_only(portraits["flat"])
    bent_ok = plateaus_only(portraits["pooled"])
    n_flat = int(np.count_nonzero(portraits["flat"].lyapunov > 0.0))
    n_bent = int(np.count_nonzero(portraits["pooled"].lyapunov > 0.0))
    ok = flat_ok and bent_ok and n_flat > 0 and n_bent > 0
    _verdict(12, "figure-class quantization", ok,
             "delta=0: %d locked cells on integer plateaus %s; "
             "delta=0.3: %d cells %s" % (n_flat, flat_ok, n_bent, bent_ok))
