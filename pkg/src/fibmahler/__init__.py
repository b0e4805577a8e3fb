"""t-metric Mahler measure data for rationals with Fibonacci exponents.

Library layout:

  arith     exact integer arithmetic (Fibonacci table, power comparison,
            primality) and high-precision scalars
  lattice   the vector families V, C, R, S, factorizations, level deltas
  simplex   exact-rational convex-combination tests (hull vertices)
  measures  coefficient vectors c_i and measure-function evaluation
  solver    breakpoints t_n and s_n, prime-pair compatibility, pair search
  envelope  piecewise minimum envelope and verification certificates
  cache     disk persistence for the enumerated families
  cli       command-line surface (tables, verification, plots)
"""

from .arith import FibTable, cmp_power, fib_table, golden_ratio, is_prime
from .envelope import (Envelope, ExceptionalReport, VerificationCertificate,
                       VerificationSummary, build_envelope,
                       exceptional_points, verify_conjecture, verify_mintest)
from .lattice import (SetFamily, build_R_chain, build_S, delta, enumerate_C,
                      enumerate_factorizations, enumerate_R, enumerate_V,
                      is_almost_consecutive_free, shift_lambda, x_vector)
from .measures import (CoefficientVector, PrimePair, coefficient_vector,
                       eval_measure_fn, eval_measure_pow, mahler_rational,
                       omega)
from .simplex import VertexReport, check_witness, feasible_combination, vertex_filter
from .solver import (Breakpoint, CompatibilityReport, compatible,
                     find_compatible_pairs, max_compatible_N, solve_sn,
                     solve_tn, weak_compatible)

__version__ = "0.1.0"

__all__ = [
    "FibTable", "cmp_power", "fib_table", "golden_ratio", "is_prime",
    "SetFamily", "build_R_chain", "build_S", "delta", "enumerate_C",
    "enumerate_factorizations", "enumerate_R", "enumerate_V",
    "is_almost_consecutive_free", "shift_lambda", "x_vector",
    "CoefficientVector", "PrimePair", "coefficient_vector",
    "eval_measure_fn", "eval_measure_pow", "mahler_rational", "omega",
    "VertexReport", "check_witness", "feasible_combination", "vertex_filter",
    "Breakpoint", "CompatibilityReport", "compatible",
    "find_compatible_pairs", "max_compatible_N", "solve_sn", "solve_tn",
    "weak_compatible",
    "Envelope", "ExceptionalReport", "VerificationCertificate",
    "VerificationSummary", "build_envelope", "exceptional_points",
    "verify_conjecture", "verify_mintest",
    "__version__",
]
