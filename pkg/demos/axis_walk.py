"""Walk the A = 0 axis where everything is known in closed form.

Three stops:

1. rho(B) against the exact square-root law, across the deformation range.
2. The growth points B_n, where the tongue boundary meets the axis and the
   monodromy collapses to a scalar.  The scalar-distance d(M) is the
   detector: ~1e-11 at B_n, order 0.1 a half-tenth away.
3. The same B_n recomputed through the defining identity, as a cross-check
   that the closed form and the integrator agree about where the axis
   crossings sit.
"""

import math

from phaselock.analysis import closed_form_rho, growth_points
from phaselock.flow import lift_field, poincare_matrix, rotation_number
from phaselock.params import TorusParams
from phaselock.su11 import scalar_distance


def axis(omega, delta, B):
    return lift_field(TorusParams(omega=omega, delta=delta, D=0.0, B=B, A=0.0))


def stop_one():
    print("rho along the axis (omega = 1):")
    print("  %-6s %-6s %-14s %-14s %s" % ("delta", "B", "integrated",
                                          "closed form", "err"))
    for delta in (0.0, 0.3, 0.6):
        for B in (0.5, 1.0, 1.5, 2.5):
            got = rotation_number(axis(1.0, delta, B)).rho
            want = closed_form_rho(1.0, delta, B)
            print("  %-6.1f %-6.1f %-14.10f %-14.10f %.1e"
                  % (delta, B, got, want, abs(got - want)))
    print()


def stop_two():
    print("growth points and the scalar-distance dip (omega = 1):")
    for delta in (0.0, 0.5):
        for gp in growth_points(1.0, delta, 3):
            if gp.n == 0:
                continue
            center = scalar_distance(poincare_matrix(axis(1.0, delta, gp.B)))
            flank = scalar_distance(
                poincare_matrix(axis(1.0, delta, gp.B + 0.05)))
            print("  delta=%.1f n=%d B_%d=%.6f  d(M)=%.2e  "
                  "d(M at B+0.05)=%.2e" % (delta, gp.n, gp.n, gp.B,
                                           center, flank))
    print()


def stop_three():
    print("defining identity B_n^2 = omega^2 (1 - delta^2) n^2 + 1:")
    worst = 0.0
    for delta in (0.0, 0.5):
        for gp in growth_points(1.0, delta, 3):
            lhs = gp.B * gp.B
            rhs = (1.0 - delta * delta) * gp.n * gp.n + 1.0
            worst = max(worst, abs(lhs - rhs))
            # and rho(B_n) must integrate back to exactly n
            rho = rotation_number(axis(1.0, delta, gp.B)).rho
            worst = max(worst, abs(rho - gp.n))
    print("  worst defect over n <= 3, both deltas: %.1e" % worst)
    assert worst < 1e-8


if __name__ == "__main__":
    stop_one()
    stop_two()
    stop_three()
