"""Real-character double sums, Gauss-type sums and the transition function C(alpha)."""

from .arith import Factorization, MultiplicativeBundle, factorize, jacobi_symbol, multiplicative_values
from .charsum import SumJob, SumResult, double_sum
from .gauss import ComplexValue, GaussTableEntry, GaussValue, RootInteger, gauss_g, gauss_quadratic_closed
from .quadrature import ConvergenceError
from .transition import EvalConfig, LocalExpansion, Verdict, c_prime, c_value, classify_c_prime, classify_f, riemann_f
from .verify import Report, Row

__all__ = [
    "ComplexValue",
    "ConvergenceError",
    "EvalConfig",
    "Factorization",
    "GaussTableEntry",
    "GaussValue",
    "LocalExpansion",
    "MultiplicativeBundle",
    "Report",
    "RootInteger",
    "Row",
    "SumJob",
    "SumResult",
    "Verdict",
    "c_prime",
    "c_value",
    "classify_c_prime",
    "classify_f",
    "double_sum",
    "factorize",
    "gauss_g",
    "gauss_quadratic_closed",
    "jacobi_symbol",
    "multiplicative_values",
    "riemann_f",
]
