"""Rasterize two phase-lock portraits and write CSV + PGM pairs.

The sweep covers B in [0, 3], A in [0, 3] twice: once at delta = 0 (the
undeformed junction) and once at delta = 0.3.  The rho channel shows the
tongue boundaries directly; the lyapunov channel lights up the locked
interiors.  Locked cells sit on integer rho plateaus in both portraits,
which the script checks cell by cell before writing anything.

Run from the repo root after an editable install:

    python demos/tongue_portrait.py [outdir]

Outputs land in demos/out/ by default.  ~10 s on a warm cache.
"""

import os
import sys
import time

import numpy as np

from phaselock.portrait import sweep, write_csv, write_pgm

RECT = (0.0, 3.0, 0.0, 3.0)
N = 128


def locked_on_plateaus(grid):
    locked = grid.lyapunov > 0.0
    with np.errstate(invalid="ignore"):
        frac = np.abs(grid.rho - np.round(grid.rho))
    return not bool(np.any(locked & (frac >= 1e-6)))


def main(outdir):
    os.makedirs(outdir, exist_ok=True)
    for delta in (0.0, 0.3):
        tag = ("d%03d" % round(100 * delta))
        t0 = time.perf_counter()
        grid = sweep(1.0, delta, 0.0, RECT, N, N)
        dt = time.perf_counter() - t0

        locked = int(np.count_nonzero(grid.lyapunov > 0.0))
        print("delta=%.2f: %dx%d cells in %.1fs, %d locked (%.0f%%), "
              "%d failures" % (delta, N, N, dt, locked,
                               100.0 * locked / (N * N),
                               grid.meta["failures"]))
        if not locked_on_plateaus(grid):
            raise SystemExit("locked cell off an integer plateau; "
                             "portrait not written")

        csv_path = os.path.join(outdir, "portrait_%s.csv" % tag)
        write_csv(grid, csv_path)
        for channel, clip in (("rho", (0.0, 3.0)), ("lyapunov", (0.0, 1.5))):
            pgm_path = os.path.join(outdir, "portrait_%s_%s.pgm"
                                    % (tag, channel))
            write_pgm(grid, channel, pgm_path, clip=clip)
            print("  wrote", pgm_path)
        print("  wrote", csv_path)

    print("\nThe delta=0.3 rho image shows the same tongues as delta=0, "
          "shifted and widened;\nthe lock boundaries stay sharp because "
          "every locked cell keeps an exactly integer rho.")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else
         os.path.join(os.path.dirname(__file__), "out"))
