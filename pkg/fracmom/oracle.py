"""
Numerical ground truth for the closed forms.

Two independent evaluations of I_k f:

* interval series: I_k f = sum_{j>=1} integral_0^1 f(s) (j+s)^-(k+2) ds. The
  first J intervals use Gauss-Legendre quadrature; the rest is summed
  analytically by expanding (j+s)^-(k+2) in powers of s/j, which turns the
  tail into Hurwitz zeta values zeta(k+2+t, J+1) weighted by the moments
  of f. Plain truncation would converge like 1/J for k = 0.
* polygamma kernel: I_k f = (-1)^k/(k+1)! integral_0^1 f(s) psi^(k+1)(s+1) ds
  by tanh-sinh quadrature.

Plus a float64 2-D quadrature of the double integral and the quadratures
the sequence checks compare against.
"""

from __future__ import annotations

import functools
import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, Optional, Tuple

import mpmath
import numpy as np

from .config import Config, Precision
from .constants import Real, zeta_tail
from .errors import PrecisionUnachievable, UnsupportedArgument
from .exactmath import binom, factorial
from .moments import GenericPoly, MomentFamily, Power, Source, engine_moment, moment
from .symbolic import eval_sym

logger = logging.getLogger(__name__)

INTERVAL_SERIES = "interval-series"
POLYGAMMA_KERNEL = "polygamma-kernel"


@dataclass(frozen=True)
class OracleResult:
    value: Real
    error_bound: mpmath.mpf
    method: str
    params: Dict[str, object] = field(default_factory=dict)


def _legendre_with_derivative(n: int, x):
    p_prev, p = mpmath.mpf(1), x
    for j in range(1, n):
        p_prev, p = p, ((2 * j + 1) * x * p - j * p_prev) / (j + 1)
    return p, n * (x * p - p_prev) / (x * x - 1)


@functools.lru_cache(maxsize=None)
def gauss_legendre(order: int, dps: int) -> Tuple[Tuple[mpmath.mpf, ...], Tuple[mpmath.mpf, ...]]:
    """
    Nodes and weights of the order-point Gauss-Legendre rule on [0, 1].

    numpy's float64 nodes seed a Newton iteration on the three-term
    recurrence carried out at dps digits.
    """
    seeds, _ = np.polynomial.legendre.leggauss(order)
    nodes, weights = [], []
    with mpmath.workdps(dps + 10):
        tol = mpmath.mpf(10) ** (-(dps + 5))
        for seed in seeds:
            x = mpmath.mpf(float(seed))
            for _ in range(100):
                p, dp = _legendre_with_derivative(order, x)
                step = p / dp
                x -= step
                if abs(step) < tol:
                    break
            else:
                raise PrecisionUnachievable(f"Gauss-Legendre node near {seed} did not converge at {dps} digits")
            _, dp = _legendre_with_derivative(order, x)
            nodes.append((x + 1) / 2)
            weights.append(1 / ((1 - x * x) * dp * dp))
    return tuple(nodes), tuple(weights)


def _quadrature_order(precision: Precision) -> int:
    # the j = 1 integrand has a pole at s = -1; the rule gains about 1.5 digits per node
    return max(Config.GL_ORDER, math.ceil(precision.working_dps / 1.5) + 4)


def _check_k(k: int):
    if k < 0:
        raise UnsupportedArgument(f"moment order k must be >= 0, got {k}")


def oracle_interval_series(family: MomentFamily, k: int, precision, intervals: Optional[int] = None) -> OracleResult:
    _check_k(k)
    precision = Precision.of(precision)
    J = Config.INTERVALS if intervals is None else intervals
    if J < 1:
        raise UnsupportedArgument(f"interval-series needs at least one interval, got {J}")
    order = _quadrature_order(precision)
    check_order = order - (Config.GL_ORDER - Config.GL_CHECK_ORDER)
    r = k + 2
    with mpmath.workdps(precision.working_dps):
        target = mpmath.mpf(10) ** (-(precision.digits + 2))
        nodes, weights = gauss_legendre(order, precision.working_dps)
        weighted = [w * family.evaluate(s) for s, w in zip(nodes, weights)]

        body = mpmath.fsum(fw * mpmath.fsum((j + s) ** (-r) for j in range(1, J + 1)) for s, fw in zip(nodes, weighted))

        # quadrature error: the first interval is the least smooth one; interval j
        # carries at most ((1+s)/(j+s))^r <= (2/(j+1))^r of it, summed over all j
        check_nodes, check_weights = gauss_legendre(check_order, precision.working_dps)
        first = mpmath.fsum(fw * (1 + s) ** (-r) for s, fw in zip(nodes, weighted))
        first_check = mpmath.fsum(w * family.evaluate(s) * (1 + s) ** (-r) for s, w in zip(check_nodes, check_weights))
        quadrature_bound = abs(first - first_check) * 2 ** r * zeta_tail(r, 2, precision.working_dps).value

        # tail: sum_{j>J} (j+s)^-r = sum_t C(-r, t) s^t zeta(r+t, J+1)
        size = mpmath.fsum(abs(fw) for fw in weighted)
        powers = list(weighted)
        tail = mpmath.mpf(0)
        for t in range(Config.TAIL_TERMS_CAP):
            mu = mpmath.fsum(powers)
            z = mpmath.zeta(r + t, J + 1)
            c = int(binom(r + t - 1, t))
            tail += (-1) ** t * c * mu * z
            term_bound = c * size * z
            if term_bound < target:
                break
            powers = [p * s for p, s in zip(powers, nodes)]
        else:
            raise PrecisionUnachievable(
                f"interval-series tail for k={k} needs more than {Config.TAIL_TERMS_CAP} terms at J={J}"
            )
        logger.debug("interval-series %s k=%d: order %d, J=%d, T=%d", family.name, k, order, J, t + 1)
        value = body + tail
        # the truncated tail is below 2 * target whatever J is
        bound = quadrature_bound + 2 * target + mpmath.mpf(10) ** (-precision.working_dps)
        return OracleResult(
            Real(+value, precision.digits),
            bound,
            INTERVAL_SERIES,
            {"J": J, "order": order, "tail_terms": t + 1, "precision": precision.digits},
        )


def oracle_polygamma(family: MomentFamily, k: int, precision) -> OracleResult:
    _check_k(k)
    precision = Precision.of(precision)
    with mpmath.workdps(precision.working_dps):
        factor = mpmath.mpf((-1) ** k) / factorial(k + 1)
        value, error = mpmath.quad(
            lambda s: family.evaluate(s) * mpmath.psi(k + 1, s + 1),
            [0, 1],
            error=True,
            maxdegree=Config.QUAD_MAX_DEGREE,
        )
        bound = abs(factor) * error + mpmath.mpf(10) ** (-precision.working_dps)
        if bound > mpmath.mpf(10) ** (-precision.digits):
            raise PrecisionUnachievable(
                f"polygamma-kernel quadrature for {family.name} k={k} stalled at error {mpmath.nstr(bound, 5)}"
            )
        return OracleResult(
            Real(+(factor * value), precision.digits),
            bound,
            POLYGAMMA_KERNEL,
            {"max_degree": Config.QUAD_MAX_DEGREE, "precision": precision.digits},
        )


def oracle_hermite(n: int, k: int, precision) -> OracleResult:
    """
    integral_0^n x^k sum_{i<n} {1/x + i/n} dx through {nx} + (n-1)/2 and x = n t:
    n^(k+1) (I_k[t] + (n-1)/(2(k+1))), with I_k[t] from the interval series.
    """
    if n < 1:
        raise UnsupportedArgument("n must be >= 1")
    base = oracle_interval_series(Power(1), k, precision)
    precision = Precision.of(precision)
    with mpmath.workdps(precision.working_dps):
        scale = mpmath.mpf(n) ** (k + 1)
        value = scale * (base.value.value + mpmath.mpf(n - 1) / (2 * (k + 1)))
        return OracleResult(Real(+value, precision.digits), scale * base.error_bound, INTERVAL_SERIES, dict(base.params, n=n))


def _quadrature(integrand: Callable, precision, method: str) -> OracleResult:
    precision = Precision.of(precision)
    with mpmath.workdps(precision.working_dps):
        value, error = mpmath.quad(integrand, [0, 1], error=True, maxdegree=Config.QUAD_MAX_DEGREE)
        return OracleResult(Real(+value, precision.digits), error, method, {"precision": precision.digits})


def loggamma_quadrature(f: Callable, precision, shifted: bool = True) -> OracleResult:
    """integral_0^1 f(x) log Gamma(x+1) dx, or log Gamma(x) with shifted=False."""
    shift = 1 if shifted else 0
    return _quadrature(lambda x: f(x) * mpmath.loggamma(x + shift), precision, "loggamma-quadrature")


def log_quadrature(f: Callable, precision) -> OracleResult:
    """integral_0^1 f(x) log x dx."""
    return _quadrature(lambda x: f(x) * mpmath.log(x), precision, "log-quadrature")


@dataclass(frozen=True)
class DoubleIntegralEstimate:
    value: float
    error_bound: float
    params: Dict[str, object]


def oracle_double_integral(m: int, k: int) -> DoubleIntegralEstimate:
    """
    integral_0^1 integral_0^1 {x/y}^m {y/x}^k dx dy in float64.

    Swapping x and y folds the region x > y onto x < y, where {x/y} = x/y and
    {y/x} = y/x - j on x in [y/(j+1), y/j]. Each of those pieces gets a
    Gauss-Legendre rule; pieces below y/(L+1) and the strip y < cutoff are
    dropped and accounted for in the error bound.
    """
    if m < 1 or k < 1:
        raise UnsupportedArgument(f"double integral needs m, k >= 1, got m={m}, k={k}")
    nodes, weights = np.polynomial.legendre.leggauss(Config.DOUBLE_NODES)
    half = (nodes + 1) / 2
    cutoff, pieces = Config.DOUBLE_CUTOFF, Config.DOUBLE_INNER_PIECES

    edges = np.linspace(cutoff, 1.0, Config.DOUBLE_PANELS + 1)
    width = np.diff(edges)
    y = (edges[:-1, None] + width[:, None] * half[None, :]).ravel()
    wy = (width[:, None] * weights[None, :] / 2).ravel()

    j = np.arange(1, pieces + 1, dtype=np.float64)
    lo = y[:, None] / (j[None, :] + 1)
    hi = y[:, None] / j[None, :]
    x = lo[..., None] + (hi - lo)[..., None] * half
    wx = (hi - lo)[..., None] * weights / 2
    ratio = x / y[:, None, None]
    frac = np.clip(1.0 / ratio - j[None, :, None], 0.0, 1.0)
    integrand = ratio ** m * frac ** k + ratio ** k * frac ** m
    inner = np.einsum("ijn,ijn->i", integrand, wx)
    value = float(np.dot(inner, wy))

    low = min(m, k)
    dropped = 2.0 / ((low + 1) * (pieces + 1) ** (low + 1)) + cutoff ** 2
    logger.debug("double integral m=%d k=%d: %d outer nodes, %d pieces", m, k, y.size, pieces)
    return DoubleIntegralEstimate(
        value,
        dropped + 1e-9,
        {"panels": Config.DOUBLE_PANELS, "nodes": Config.DOUBLE_NODES, "pieces": pieces, "cutoff": cutoff},
    )


# --- cross checks ---


@dataclass
class VerificationReport:
    family: MomentFamily
    k: int
    precision: int
    tol: mpmath.mpf
    symbolic: str
    regime: str
    source: Source
    closed: Real
    engine: Optional[Real] = None
    oracles: Dict[str, OracleResult] = field(default_factory=dict)
    differences: Dict[str, mpmath.mpf] = field(default_factory=dict)
    passed: bool = False
    discrepancy: Optional[str] = None

    @property
    def max_difference(self):
        return max(self.differences.values(), default=mpmath.mpf(0))

    def to_record(self) -> Dict[str, object]:
        record: Dict[str, object] = {"family": self.family.name}
        record.update(self.family.params())
        record.update(
            {
                "k": self.k,
                "symbolic": self.symbolic,
                "value": self.closed.to_fixed(self.precision),
                "precision": self.precision,
                "method": self.source.value,
                "regime": self.regime,
            }
        )
        if self.engine is not None:
            record["engine"] = self.engine.to_fixed(self.precision)
        for name, result in self.oracles.items():
            record[name.replace("-", "_")] = result.value.to_fixed(self.precision)
        record["max_difference"] = mpmath.nstr(self.max_difference, 5)
        record["passed"] = self.passed
        record["discrepancy"] = self.discrepancy
        return record


def cross_check(family: MomentFamily, k: int, precision, tol, intervals: Optional[int] = None) -> VerificationReport:
    """Compare closed form, engine and both oracles; failures are recorded, not raised."""
    precision = Precision.of(precision)
    result = moment(family, k)
    with mpmath.workdps(precision.working_dps):
        tol = mpmath.mpf(tol)
    report = VerificationReport(
        family,
        k,
        precision.digits,
        tol,
        result.value.to_text(),
        result.regime,
        result.source,
        eval_sym(result.value, precision),
        discrepancy=result.discrepancy,
    )
    values = [("closed", report.closed)]
    if not isinstance(family, GenericPoly):
        report.engine = eval_sym(engine_moment(family, k), precision)
        values.append(("engine", report.engine))

    problems = []
    for name, oracle in ((INTERVAL_SERIES, oracle_interval_series), (POLYGAMMA_KERNEL, oracle_polygamma)):
        try:
            if name == INTERVAL_SERIES:
                found = oracle(family, k, precision, intervals)
            else:
                found = oracle(family, k, precision)
        except PrecisionUnachievable as exc:
            problems.append(str(exc))
            continue
        report.oracles[name] = found
        values.append((name, found.value))

    with mpmath.workdps(precision.working_dps):
        for (a, va), (b, vb) in itertools.combinations(values, 2):
            report.differences[f"{a}~{b}"] = abs(va.value - vb.value)
    report.passed = not problems and all(d <= tol for d in report.differences.values())
    if problems:
        report.discrepancy = "; ".join(filter(None, [report.discrepancy] + problems))
    if not report.passed:
        logger.warning(
            "cross-check failed for %s %s k=%d: max difference %s",
            family.name,
            family.params(),
            k,
            mpmath.nstr(report.max_difference, 5),
        )
    return report
