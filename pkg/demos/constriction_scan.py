"""Scan d(M) along the B = 1 boundary line and watch constrictions vanish.

At delta = 0 the rho = 1 tongue boundary pinches down to points as A grows;
the scan finds them as refined minima of the scalar distance far below
threshold.  Switching on the deformation (delta = 0.25) breaks every one of
them: the profile lifts off zero along the whole line.
"""

from phaselock.analysis import scan_scalar_distance

A_RANGE = (0.5, 6.0)

for delta in (0.0, 0.25):
    rep = scan_scalar_distance(1.0, delta, 0.0, 1.0, A_RANGE, 256)
    print("delta=%.2f: %d samples, min d(M) = %.3e" % (delta,
                                                       len(rep.samples),
                                                       rep.min_distance))
    if rep.candidates:
        for m in rep.candidates:
            print("   constriction near A = %.6f, refined d = %.3e"
                  % (m.A, m.d))
    else:
        print("   no candidates below threshold %.0e" % rep.threshold)
