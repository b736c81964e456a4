"""Phase-lock analysis of cosine torus flows.

The flow dtheta/dtau = (cos theta + B + A sin tau)/(omega (1 - delta cos tau)) + D
has a Mobius return map in SU(1,1), computed here exactly enough that rotation
numbers, Lyapunov exponents, growth points and constriction diagnostics come
with stated tolerances.  The algebraic half of the package relates the same
flows to Fuchsian and confluent linear systems and their Heun-type scalar
reductions.
"""

from .analysis import (GrowthPoint, QuantizationReport, QuantizationViolation,
                       ScanMinimum, ScanReport, closed_form_rho, growth_points,
                       mu_pair, quantization_audit, residue_eigen_differences,
                       scalar_monodromy_condition, scan_scalar_distance,
                       z_minus)
from .flow import (CosineField, IntegrationError, PoincareResult,
                   flow_map_consistency, lift_field, linear_lift_rhs,
                   poincare_matrix, rotation_number)
from .heun import (DcheCoeffs, HeunConfluentCoeffs, HeunGeneralCoeffs,
                   NoSolution, OneParameterFamily, che_coefficients,
                   che_equivalence_residual, che_gauge_residual,
                   che_solve_diagonal, dche_coefficients, ghe_coefficients,
                   ghe_equivalence_residual, ghe_gauge_residual,
                   ghe_solve_diagonal)
from .params import (CheSystemParams, ConfluentTriple, FuchsianTriple,
                     GheSystemParams, TorusParams, che_matrices, che_to_torus,
                     ghe_matrices, ghe_to_torus, is_torus_dynamical_confluent,
                     is_torus_dynamical_fuchsian, torus_to_che, torus_to_ghe)
from .portrait import PortraitGrid, sweep, write_csv, write_pgm
from .rng import SplitMix64
from .su11 import (AccuracyError, MapClass, MapKind, Su11Matrix, act, classify,
                   fixed_points, lyapunov_exponent, project, scalar_distance)

__version__ = "0.1.0"

__all__ = [
    "AccuracyError",
    "CheSystemParams",
    "ConfluentTriple",
    "CosineField",
    "DcheCoeffs",
    "FuchsianTriple",
    "GheSystemParams",
    "GrowthPoint",
    "HeunConfluentCoeffs",
    "HeunGeneralCoeffs",
    "IntegrationError",
    "MapClass",
    "MapKind",
    "NoSolution",
    "OneParameterFamily",
    "PoincareResult",
    "PortraitGrid",
    "QuantizationReport",
    "QuantizationViolation",
    "ScanMinimum",
    "ScanReport",
    "SplitMix64",
    "Su11Matrix",
    "TorusParams",
    "act",
    "che_coefficients",
    "che_equivalence_residual",
    "che_gauge_residual",
    "che_matrices",
    "che_solve_diagonal",
    "che_to_torus",
    "classify",
    "closed_form_rho",
    "dche_coefficients",
    "fixed_points",
    "flow_map_consistency",
    "ghe_coefficients",
    "ghe_equivalence_residual",
    "ghe_gauge_residual",
    "ghe_matrices",
    "ghe_solve_diagonal",
    "ghe_to_torus",
    "growth_points",
    "is_torus_dynamical_confluent",
    "is_torus_dynamical_fuchsian",
    "lift_field",
    "linear_lift_rhs",
    "lyapunov_exponent",
    "mu_pair",
    "poincare_matrix",
    "project",
    "quantization_audit",
    "residue_eigen_differences",
    "rotation_number",
    "scalar_distance",
    "scalar_monodromy_condition",
    "scan_scalar_distance",
    "sweep",
    "torus_to_che",
    "torus_to_ghe",
    "write_csv",
    "write_pgm",
    "z_minus",
]
