"""Phase-lock portraits: rasterizing rho and Lambda over a (B, A) rectangle.

Every cell is an independent rotation_number call, so the sweep is a pure
data-parallel map.  Work is partitioned statically by grid row and assembled
by index, which makes the output bit-identical for any worker count: a cell's
value depends only on its own (B, A) floats and the fixed tolerances.

Cell failures (integrator breakdown, non-credible winding) become NaN cells
and a counter in meta; they never abort a sweep.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .flow import IntegrationError, lift_field, rotation_number
from .params import TorusParams
from .su11 import AccuracyError, MapKind

CLASS_CODES = {
    MapKind.ELLIPTIC: 0,
    MapKind.PARABOLIC: 1,
    MapKind.HYPERBOLIC: 2,
    MapKind.IDENTITY: 3,
}
FAILED = -1
CLASS_NAMES = {
    0: "elliptic",
    1: "parabolic",
    2: "hyperbolic",
    3: "identity",
    FAILED: "failed",
}


@dataclass
class PortraitGrid:
    """Raster over [B_min, B_max] x [A_min, A_max], endpoints inclusive.

    rho, lyapunov and class_codes are (nB, nA) arrays; cell (i, j) sits at
    (b_values()[i], a_values()[j]).  class_codes holds CLASS_CODES values,
    FAILED (-1) for NaN cells.
    """

    B_min: float
    B_max: float
    A_min: float
    A_max: float
    nB: int
    nA: int
    rho: np.ndarray
    lyapunov: np.ndarray
    class_codes: np.ndarray
    meta: dict

    def b_values(self) -> np.ndarray:
        return np.linspace(self.B_min, self.B_max, self.nB)

    def a_values(self) -> np.ndarray:
        return np.linspace(self.A_min, self.A_max, self.nA)


def _sweep_row(task):
    """One grid row; module-level so process pools can pickle it."""
    i, b, a_values, omega, delta, bigd, tol = task
    n = len(a_values)
    rho = np.empty(n)
    lyap = np.empty(n)
    codes = np.empty(n, dtype=np.int8)
    max_defect = 0.0
    failures = 0
    for j, a in enumerate(a_values):
        try:
            r = rotation_number(lift_field(TorusParams(
                omega=omega, delta=delta, D=bigd, B=b, A=a)), tol)
        except (IntegrationError, AccuracyError):
            rho[j] = math.nan
            lyap[j] = math.nan
            codes[j] = FAILED
            failures += 1
            continue
        rho[j] = r.rho
        lyap[j] = r.lyapunov
        codes[j] = CLASS_CODES[r.map_class.kind]
        max_defect = max(max_defect, r.det_defect)
    return i, rho, lyap, codes, max_defect, failures


def sweep(omega: float, delta: float, D: float,
          rect: Tuple[float, float, float, float], nB: int, nA: int,
          workers: Optional[int] = None, tol: float = 1e-10) -> PortraitGrid:
    """Rasterize rotation number and Lyapunov exponent over rect.

    rect = (B_min, B_max, A_min, A_max).  workers > 1 runs grid rows on a
    process pool; None or 1 stays in-process.  Either way the arrays are
    identical, which is asserted by the test suite, not just promised.
    """
    if not 0.0 <= delta < 1.0:
        raise ValueError(f"sweep: delta = {delta} outside [0, 1)")
    if nB < 1 or nA < 1:
        raise ValueError("sweep: grid must have at least one cell")
    b_min, b_max, a_min, a_max = rect
    b_values = np.linspace(b_min, b_max, nB)
    a_values = np.linspace(a_min, a_max, nA)

    tasks = [(i, float(b_values[i]), tuple(float(a) for a in a_values),
              omega, delta, D, tol) for i in range(nB)]

    rho = np.empty((nB, nA))
    lyap = np.empty((nB, nA))
    codes = np.empty((nB, nA), dtype=np.int8)
    max_defect = 0.0
    failures = 0

    if workers is not None and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = pool.map(_sweep_row, tasks)
            for i, r_row, l_row, c_row, row_defect, row_failures in rows:
                rho[i] = r_row
                lyap[i] = l_row
                codes[i] = c_row
                max_defect = max(max_defect, row_defect)
                failures += row_failures
    else:
        for task in tasks:
            i, r_row, l_row, c_row, row_defect, row_failures = _sweep_row(task)
            rho[i] = r_row
            lyap[i] = l_row
            codes[i] = c_row
            max_defect = max(max_defect, row_defect)
            failures += row_failures

    # Quantization is enforced, not assumed: a positive exponent at a
    # non-integer rho would mean the snapping logic shipped a wrong value.
    locked = lyap > 0.0
    with np.errstate(invalid="ignore"):
        offgrid = np.abs(rho - np.round(rho)) >= 1e-6
    violations = int(np.count_nonzero(locked & offgrid))
    meta = {
        "omega": omega,
        "delta": delta,
        "D": D,
        "tol": tol,
        "failures": failures,
        "max_det_defect": max_defect,
        "quantization_violations": violations,
    }
    grid = PortraitGrid(B_min=b_min, B_max=b_max, A_min=a_min, A_max=a_max,
                        nB=nB, nA=nA, rho=rho, lyapunov=lyap,
                        class_codes=codes, meta=meta)
    if violations:
        raise AccuracyError(
            f"sweep: {violations} cells have positive Lyapunov exponent at "
            "non-integer rotation number")
    return grid


def _g9(x: float) -> str:
    return "%.9g" % x


def write_csv(g: PortraitGrid, path: str) -> None:
    """Rows `B,A,rho,lyapunov,class` in row-major (i outer) order.

    Floats carry 9 significant digits, NaN prints as `nan`, lines end in LF
    with a final newline.
    """
    b_values = g.b_values()
    a_values = g.a_values()
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write("B,A,rho,lyapunov,class\n")
            for i in range(g.nB):
                for j in range(g.nA):
                    fh.write("%s,%s,%s,%s,%s\n" % (
                        _g9(b_values[i]), _g9(a_values[j]),
                        _g9(g.rho[i, j]), _g9(g.lyapunov[i, j]),
                        CLASS_NAMES[int(g.class_codes[i, j])]))
    except OSError as e:
        raise OSError(f"write_csv: {path}: {e}") from e


def write_pgm(g: PortraitGrid, channel: str, path: str,
              clip: Tuple[float, float]) -> None:
    """Binary PGM (P5, maxval 255) of one channel, image top = A_max.

    Values are clipped to [lo, hi] and scaled linearly; NaN cells map to 0.
    """
    lo, hi = clip
    if not lo < hi:
        raise ValueError(f"write_pgm: clip range ({lo}, {hi}) is empty")
    if channel == "rho":
        data = g.rho
    elif channel == "lyapunov":
        data = g.lyapunov
    else:
        raise ValueError(f"write_pgm: unknown channel {channel!r}")

    img = data.T[::-1, :]
    out = np.zeros(img.shape, dtype=np.uint8)
    finite = np.isfinite(img)
    scaled = np.clip((img[finite] - lo) / (hi - lo) * 255.0, 0.0, 255.0)
    out[finite] = np.rint(scaled).astype(np.uint8)
    try:
        with open(path, "wb") as fh:
            fh.write(b"P5\n%d %d\n255\n" % (g.nB, g.nA))
            fh.write(out.tobytes())
    except OSError as e:
        raise OSError(f"write_pgm: {path}: {e}") from e
