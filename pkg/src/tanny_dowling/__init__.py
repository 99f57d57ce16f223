"""Exact noncentral Whitney, Dowling and Tanny-Dowling polynomials.

The package computes the families exactly over the rationals, checks the
integral identities that tie the Tanny-Dowling polynomials to Bernoulli
polynomials and to Laplace-type integrals of the Dowling polynomials, and
cross-checks those identities with floating-point quadrature.
"""

from .bernoulli import bernoulli_number, bernoulli_numbers, bernoulli_poly, bernoulli_poly_eval
from .exact_arith import (
    binomial,
    factorial,
    falling_factorial,
    format_rational,
    parse_rational,
    rat_pow,
)
from .identities import (
    IdentityCheck,
    IdentityId,
    SweepGrid,
    VerificationReport,
    check_bernoulli_stirling,
    check_corollary2,
    check_kellner,
    check_reductions,
    check_theorem1,
    check_theorem3_exact,
    check_theorem4_series,
    check_worpitzky_classic,
    check_worpitzky_general,
    gamma_moment,
    theorem4_values,
    verify_sweep,
)
from .polynomials import (
    Polynomial,
    dowling_poly,
    exponential_poly,
    geometric_poly,
    poly_definite_integral,
    poly_eval,
    poly_scale_arg,
    tanny_dowling_poly,
)
from .quadrature import (
    ConvergenceError,
    LaguerreRule,
    QuadratureResult,
    adaptive_simpson,
    check_theorem1_numeric,
    check_theorem3_numeric,
    improper_integral_theorem4,
    laguerre_rule,
)
from .triangles import (
    WhitneyParams,
    WhitneyTriangle,
    stirling2,
    whitney2_explicit,
    whitney2_table,
)

__version__ = "0.1.0"
