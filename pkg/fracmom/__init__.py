"""
Exact and high-precision fractional moments

    I_k f = integral_0^1 x^k f({1/x}) dx

for trigonometric, Bernoulli, power and symmetric-power integrands.
Closed forms are returned as SymValue combinations of rationals and
named constants; independent numeric oracles cross-check them.
"""

from .config import Config, Precision, default_precision
from .constants import Real
from .errors import DomainError, FracMomError, PrecisionUnachievable, UnsupportedArgument
from .moments import (
    BernoulliPoly,
    Cosine,
    GenericPoly,
    MomentResult,
    Power,
    Sine,
    SymPower,
    engine_moment,
    identity_suite,
    moment,
)
from .oracle import cross_check, oracle_interval_series, oracle_polygamma
from .symbolic import SymValue, eval_sym

__version__ = "0.1.0"
