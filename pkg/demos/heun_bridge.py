"""From torus parameters to Heun coefficients, and back through the residuals.

The chain demonstrated here:

    TorusParams --torus_to_ghe--> linear system chart
               --ghe_solve_diagonal--> (phi, psi) exponent pair
               --ghe_coefficients--> second-order equation
               --ghe_equivalence_residual--> numerical certificate

Both roots of the diagonal condition give valid equations; the gauge
residual at the end certifies that they differ by an explicit elementary
factor, not by content.  The confluent chart gets the same treatment plus
its degenerate classification, which the generic solver refuses to fudge.
"""

import dataclasses

from phaselock.heun import (NoSolution, OneParameterFamily, che_coefficients,
                            che_equivalence_residual, che_gauge_residual,
                            che_solve_diagonal, ghe_coefficients,
                            ghe_equivalence_residual, ghe_gauge_residual,
                            ghe_solve_diagonal)
from phaselock.params import CheSystemParams, TorusParams, torus_to_ghe

TORUS = TorusParams(omega=1.0, delta=0.6, D=0.5, B=1.2, A=0.8)


def ghe_leg():
    base = torus_to_ghe(TORUS)
    print("torus", TORUS)
    print("  -> alpha=%.6f b=%.6f c=%.6f nu=%.6f%+.6fj"
          % (base.alpha, base.b, base.c, base.nu.real, base.nu.imag))
    systems = []
    for sign, label in ((1, "+"), (-1, "-")):
        phi, psi = ghe_solve_diagonal(base.alpha, base.b, base.c, base.nu,
                                      root_sign=sign)
        p = dataclasses.replace(base, phi=phi, psi=psi)
        h = ghe_coefficients(p)
        res = ghe_equivalence_residual(p, h)
        print("  root %s: phi=%.6f%+.6fj  q=%.6f%+.6fj  residual=%.2e"
              % (label, phi.real, phi.imag, h.q.real, h.q.imag, res))
        systems.append(p)
    print("  gauge residual between roots: %.2e"
          % ghe_gauge_residual(systems[0], systems[1]))
    print()


def che_leg():
    print("confluent chart, generic point (b=1, g=0.3, nu=0.4+0.2j):")
    pair = []
    for sign in (1, -1):
        a1, a2 = che_solve_diagonal(1.0, 0.3, 0.4 + 0.2j, root_sign=sign)
        p = CheSystemParams(b=1.0, g=0.3, nu=0.4 + 0.2j, a1=a1, a2=a2)
        res = che_equivalence_residual(p, che_coefficients(p))
        print("  root %+d: a1=%.6f%+.6fj a2=%.6f%+.6fj  residual=%.2e"
              % (sign, a1.real, a1.imag, a2.real, a2.imag, res))
        pair.append(p)
    print("  gauge residual between roots: %.2e"
          % che_gauge_residual(pair[0], pair[1]))

    print("degenerate points (4 b^2 == g^2):")
    for b, g, nu in ((1.0, 2.0, 0j), (1.0, 2.0, 1j), (1.0, -2.0, 0.5 + 0j)):
        out = che_solve_diagonal(b, g, nu)
        if isinstance(out, OneParameterFamily):
            print("  b=%g g=%g nu=%s -> one-parameter family, a2=%s"
                  % (b, g, nu, out.a2))
        elif isinstance(out, NoSolution):
            print("  b=%g g=%g nu=%s -> no solution" % (b, g, nu))
        else:
            print("  b=%g g=%g nu=%s -> %s" % (b, g, nu, out))


if __name__ == "__main__":
    ghe_leg()
    che_leg()
