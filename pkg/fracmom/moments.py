"""
Fractional moments I_k f = integral_0^1 x^k f({1/x}) dx.

The engine evaluates I_k f for any polynomial f (and for sin/cos(2 pi x))
through

    I_k f = 1/(k+1)! [ sum_{j=0}^{k} (k-j)! (f^(j)(0) alpha_{k-j} - f^(j)(1)(alpha_{k-j} - 1))
                       + integral_0^1 f^(k+2)(x) log Gamma(x+1) dx ].

The family closed forms below are checked against the engine every time they
are produced; a closed form that disagrees is replaced by the engine value
and the disagreement is carried on the result.
"""

from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, ClassVar, Dict, Iterator, Optional, Tuple, Union

import mpmath

from .bernoulli import (
    bernoulli_number,
    bernoulli_numbers,
    bernoulli_poly,
    bernoulli_poly_derivative,
    expand_sympower,
    shifted_legendre,
    shifted_legendre_from_bernoulli,
    sympower,
    sympower_boundary,
    sympower_derivative,
)
from .config import Config, Precision
from .constants import Real, to_mpf
from .errors import PrecisionUnachievable, UnsupportedArgument
from .exactmath import Poly, as_rational, binom, factorial, falling, harmonic
from .symbolic import (
    CI_2PI,
    GAMMA,
    LOG_2PI,
    SI_2PI,
    SymValue,
    TrigKind,
    a_seq,
    alpha_seq,
    b_seq,
    eval_sym,
    loggamma_integral_poly,
    loggamma_integral_trig,
    pi_power,
    zeta,
    zeta_prime_ratio,
)

logger = logging.getLogger(__name__)


# --- families ---


@dataclass(frozen=True)
class Sine:
    name: ClassVar[str] = "sine"

    def poly(self) -> Optional[Poly]:
        return None

    def evaluate(self, s):
        return mpmath.sin(2 * mpmath.pi * s)

    def params(self) -> Dict[str, object]:
        return {}


@dataclass(frozen=True)
class Cosine:
    name: ClassVar[str] = "cosine"

    def poly(self) -> Optional[Poly]:
        return None

    def evaluate(self, s):
        return mpmath.cos(2 * mpmath.pi * s)

    def params(self) -> Dict[str, object]:
        return {}


class _PolyFamily:
    def poly(self) -> Poly:
        raise NotImplementedError

    def evaluate(self, s):
        return self.poly().evaluate_with(s, to_mpf)


@dataclass(frozen=True)
class BernoulliPoly(_PolyFamily):
    n: int
    name: ClassVar[str] = "bernoulli"

    def __post_init__(self):
        if self.n < 0:
            raise UnsupportedArgument(f"Bernoulli family needs n >= 0, got {self.n}")

    def poly(self) -> Poly:
        return bernoulli_poly(self.n)

    def params(self):
        return {"n": self.n}


@dataclass(frozen=True)
class Power(_PolyFamily):
    m: int
    name: ClassVar[str] = "power"

    def __post_init__(self):
        if self.m < 1:
            raise UnsupportedArgument(f"power family needs m >= 1, got {self.m}")

    def poly(self) -> Poly:
        return Poly.monomial(self.m)

    def params(self):
        return {"m": self.m}


@dataclass(frozen=True)
class SymPower(_PolyFamily):
    m: int
    name: ClassVar[str] = "sympower"

    def __post_init__(self):
        if self.m < 1:
            raise UnsupportedArgument(f"sympower family needs m >= 1, got {self.m}")

    def poly(self) -> Poly:
        return sympower(self.m)

    def params(self):
        return {"m": self.m}


@dataclass(frozen=True)
class GenericPoly(_PolyFamily):
    p: Poly
    name: ClassVar[str] = "poly"

    def poly(self) -> Poly:
        return self.p

    def params(self):
        return {"coeffs": ",".join(str(c) for c in self.p.coeffs) or "0"}


MomentFamily = Union[Sine, Cosine, BernoulliPoly, Power, SymPower, GenericPoly]


class Source(str, enum.Enum):
    THEOREM = "theorem"
    ENGINE = "engine"


@dataclass(frozen=True)
class MomentResult:
    family: MomentFamily
    k: int
    value: SymValue
    regime: str
    source: Source = Source.THEOREM
    discrepancy: Optional[str] = None


def _check_k(k: int):
    if k < 0:
        raise UnsupportedArgument(f"moment order k must be >= 0, got {k}")


# --- engine ---


def _boundary_expansion(k: int, boundary: Callable[[int], Tuple[SymValue, SymValue]], loggamma_term: SymValue) -> SymValue:
    total = loggamma_term
    for j in range(k + 1):
        at_zero, at_one = boundary(j)
        alpha = alpha_seq(k - j)
        total = total + (alpha * (at_zero - at_one) + at_one).scale(factorial(k - j))
    return total.scale(Fraction(1, factorial(k + 1)))


def moment_poly_generic(p: Poly, k: int) -> SymValue:
    _check_k(k)
    derivatives = [p]
    for _ in range(k + 2):
        derivatives.append(derivatives[-1].derivative())

    def boundary(j):
        d = derivatives[j]
        return SymValue.constant(d.evaluate(0)), SymValue.constant(d.evaluate(1))

    return _boundary_expansion(k, boundary, loggamma_integral_poly(derivatives[k + 2]))


def _two_pi(power: int) -> SymValue:
    """(2 pi)^power as a SymValue."""
    if power == 0:
        return SymValue.constant(1)
    return SymValue.of(pi_power(power), coeff=Fraction(2) ** power)


def _trig_derivative(kind: TrigKind, d: int) -> Tuple[SymValue, TrigKind]:
    # d-th derivative of sin/cos(2 pi x) as factor * sin/cos(2 pi x)
    half, odd = divmod(d, 2)
    sign = (-1) ** half
    if kind is TrigKind.SINE:
        return _two_pi(d).scale(sign), (TrigKind.COSINE if odd else TrigKind.SINE)
    if odd:
        return _two_pi(d).scale(-sign), TrigKind.SINE
    return _two_pi(d).scale(sign), TrigKind.COSINE


def moment_trig_engine(kind: TrigKind | str, k: int) -> SymValue:
    kind = TrigKind(kind)
    _check_k(k)

    def boundary(j):
        factor, which = _trig_derivative(kind, j)
        value = factor if which is TrigKind.COSINE else SymValue()
        return value, value

    factor, which = _trig_derivative(kind, k + 2)
    return _boundary_expansion(k, boundary, factor * loggamma_integral_trig(which))


def engine_moment(family: MomentFamily, k: int) -> SymValue:
    if isinstance(family, (Sine, Cosine)):
        return moment_trig_engine(family.name, k)
    return moment_poly_generic(family.poly(), k)


def _settle(family: MomentFamily, k: int, regime: str, closed: SymValue) -> MomentResult:
    engine = engine_moment(family, k)
    if closed == engine:
        return MomentResult(family, k, closed, regime)
    difference = eval_sym(closed - engine, Config.CHECK_DIGITS)
    if abs(difference.value) <= mpmath.mpf(10) ** (-Config.CHECK_TOL_EXP):
        return MomentResult(family, k, closed, regime)
    note = f"{family.name} {family.params()} k={k} regime {regime}: closed form off by {mpmath.nstr(difference.value, 8)}"
    logger.warning("%s; using the engine value", note)
    return MomentResult(family, k, engine, regime, Source.ENGINE, note)


# --- trigonometric family ---


def trig_regime(kind: TrigKind | str, k: int) -> str:
    letter = "S" if TrigKind(kind) is TrigKind.SINE else "C"
    return f"{letter}_2n+1" if k % 2 else f"{letter}_2n"


def _ci_bracket(upper: int) -> SymValue:
    # sum_{j=0}^{upper} (-1)^j (2j+1)! / (2pi)^(2j+2) + Ci(2pi)
    total = SymValue.of(CI_2PI)
    for j in range(upper + 1):
        total = total + _two_pi(-(2 * j + 2)).scale((-1) ** j * factorial(2 * j + 1))
    return total


def _si_bracket(upper: int) -> SymValue:
    # sum_{j=0}^{upper} (-1)^j (2j)! / (2pi)^(2j+1) - pi/2 + Si(2pi)
    total = SymValue.of(SI_2PI) - SymValue.of(pi_power(1), coeff=Fraction(1, 2))
    for j in range(upper + 1):
        total = total + _two_pi(-(2 * j + 1)).scale((-1) ** j * factorial(2 * j))
    return total


def moment_trig(kind: TrigKind | str, k: int) -> SymValue:
    """Closed forms of S_k = I_k sin(2 pi x) and C_k = I_k cos(2 pi x)."""
    kind = TrigKind(kind)
    _check_k(k)
    n, odd = divmod(k, 2)
    if kind is TrigKind.SINE and not odd:
        sign, power, bracket = (-1) ** (n + 1), 2 * n + 1, _ci_bracket(n - 1)
    elif kind is TrigKind.SINE:
        sign, power, bracket = (-1) ** n, 2 * n + 2, _si_bracket(n)
    elif not odd:
        sign, power, bracket = (-1) ** n, 2 * n + 1, _si_bracket(n)
    else:
        sign, power, bracket = (-1) ** n, 2 * n + 2, _ci_bracket(n)
    return (_two_pi(power) * bracket).scale(Fraction(sign, factorial(power)))


# --- Bernoulli polynomials ---


def bernoulli_regime(n: int, k: int) -> str:
    if n == 0:
        return "n=0"
    if k >= n:
        return "k>=n"
    if k == n - 1:
        return "k=n-1"
    return "k<=n-2"


def _bernoulli_closed(n: int, k: int) -> SymValue:
    if k >= n:
        inner = sum((binom(k - n + 2 * j, 2 * j) * bernoulli_number(2 * j) for j in range(n // 2 + 1)), Fraction(0))
        value = SymValue.constant(inner + Fraction(k - n + 1, 2)) - SymValue.of(zeta(k - n + 2), coeff=k - n + 1)
        return value.scale(1 / ((k + 1) * binom(k, n)))
    if k == n - 1:
        inner = sum((bernoulli_number(2 * j) / (2 * j) for j in range(1, n // 2 + 1)), Fraction(0))
        return SymValue.constant(inner + Fraction(1, 2)) - GAMMA
    inner = sum(
        (bernoulli_number(2 * j) / binom(2 * j, k - n + 2 * j) for j in range((n - k + 1) // 2, n // 2 + 1)),
        Fraction(0),
    )
    value = b_seq(n - k - 2).scale((n - k) * (n - k - 1)) + inner
    return value.scale(binom(n, k) / (k + 1))


def moment_bernoulli(n: int, k: int) -> MomentResult:
    """J_k^n = I_k B_n."""
    family = BernoulliPoly(n)
    _check_k(k)
    regime = bernoulli_regime(n, k)
    logger.debug("bernoulli n=%d k=%d regime %s", n, k, regime)
    if n == 0:
        return MomentResult(family, k, moment_poly_generic(bernoulli_poly(0), k), regime, Source.ENGINE)
    return _settle(family, k, regime, _bernoulli_closed(n, k))


# --- powers x^m ---


def power_regime(m: int, k: int) -> str:
    if k >= m:
        return "k>=m"
    if k == m - 1:
        return "k=m-1"
    return "k<=m-2"


def _power_closed(m: int, k: int) -> SymValue:
    if k >= m:
        zetas = SymValue()
        for j in range(k - m + 1, k + 1):
            zetas = zetas + SymValue.of(zeta(j + 1), coeff=binom(j, k - m))
        return SymValue.constant(Fraction(1, k + 1 - m)) - zetas.scale(1 / ((k + 1) * binom(k, m)))
    if k == m - 1:
        value = SymValue.constant(harmonic(m)) - GAMMA
        for j in range(1, m):
            value = value - SymValue.of(zeta(j + 1), coeff=Fraction(1, j + 1))
        return value
    zetas = SymValue.of(GAMMA)
    for j in range(1, k + 1):
        zetas = zetas + SymValue.of(zeta(j + 1), coeff=1 / binom(m - k + j, j))
    a_terms = SymValue()
    for j in range(m - k - 1):
        a_terms = a_terms + a_seq(j).scale(binom(m - k - 1, j))
    return (
        SymValue.constant(Fraction(1, k + 1 - m))
        - zetas.scale(binom(m, k) / (k + 1))
        + a_terms.scale(binom(m, k + 1))
    )


def moment_power(m: int, k: int) -> MomentResult:
    """C_k^m = I_k x^m."""
    family = Power(m)
    _check_k(k)
    regime = power_regime(m, k)
    logger.debug("power m=%d k=%d regime %s", m, k, regime)
    return _settle(family, k, regime, _power_closed(m, k))


def moment_power_diagonal(m: int) -> SymValue:
    """C_m^m = 1 - 1/(m+1) sum_{j=1}^{m} zeta(j+1)."""
    if m < 1:
        raise UnsupportedArgument("m must be >= 1")
    value = SymValue.constant(1)
    for j in range(1, m + 1):
        value = value - SymValue.of(zeta(j + 1), coeff=Fraction(1, m + 1))
    return value


# --- x^m (1-x)^m ---


def sympower_regime(m: int, k: int) -> str:
    if k >= 2 * m:
        return "k>=2m"
    if k == 2 * m - 1:
        return "k=2m-1"
    if k >= m:
        return "m<=k<=2m-2"
    return "k<=m-1"


def p_sum(m: int, k: int) -> Fraction:
    """p_{m,k} = sum_{j=m}^{k} C(m, j-m) / C(k, j)."""
    if m < 1 or k < m:
        raise UnsupportedArgument(f"p_sum needs 1 <= m <= k, got m={m}, k={k}")
    return sum((binom(m, j - m) / binom(k, j) for j in range(m, k + 1)), Fraction(0))


def _odd_zeta_sum(m: int, k: int, upper: int) -> SymValue:
    # sum_{j=[m/2]}^{upper} C(m, 2j+1-m) / C(k, 2j+1) zeta(k-2j)
    total = SymValue()
    for j in range(m // 2, upper + 1):
        c = binom(m, 2 * j + 1 - m)
        if c:
            total = total + SymValue.of(zeta(k - 2 * j), coeff=c / binom(k, 2 * j + 1))
    return total


def _b_sum(m: int, k: int) -> SymValue:
    # (k+2) sum_{j=[m/2]+1}^{m} C(m, 2j-m-1) C(2j, k+2) b_{2j-k-2} / j
    total = SymValue()
    for j in range(m // 2 + 1, m + 1):
        c = binom(m, 2 * j - m - 1) * binom(2 * j, k + 2)
        if c:
            total = total + b_seq(2 * j - k - 2).scale(c / j)
    return total.scale(k + 2)


def _sympower_closed(m: int, k: int) -> SymValue:
    sign = (-1) ** m
    if k >= 2 * m:
        value = SymValue.constant(1 / ((k + 1 - m) * binom(k - m, m))) - _odd_zeta_sum(m, k, m - 1).scale(
            Fraction(2, k + 1)
        )
        return value.scale(sign)
    if k == 2 * m - 1:
        value = SymValue.constant(harmonic(2 * m) - harmonic(m)) - GAMMA
        value = value - _odd_zeta_sum(m, k, m - 2).scale(Fraction(1, m))
        return value.scale(sign)
    tail = _b_sum(m, k)
    if k >= m:
        odd_k = k % 2 == 1
        bracket = SymValue.constant(p_sum(m, k)) - _odd_zeta_sum(m, k, k // 2 - 1).scale(2)
        if odd_k:
            bracket = bracket - SymValue.of(GAMMA, coeff=2 * binom(m, 2 * m - k))
        return (bracket.scale(Fraction(1, k + 1)) + tail).scale(sign)
    return tail.scale(sign)


def moment_sympower(m: int, k: int) -> MomentResult:
    """I_k x^m (1-x)^m."""
    family = SymPower(m)
    _check_k(k)
    regime = sympower_regime(m, k)
    logger.debug("sympower m=%d k=%d regime %s", m, k, regime)
    return _settle(family, k, regime, _sympower_closed(m, k))


def moment(family: MomentFamily, k: int) -> MomentResult:
    """Closed form of I_k f for any family, with its regime label."""
    if isinstance(family, (Sine, Cosine)):
        _check_k(k)
        regime = trig_regime(family.name, k)
        return _settle(family, k, regime, moment_trig(family.name, k))
    if isinstance(family, BernoulliPoly):
        return moment_bernoulli(family.n, k)
    if isinstance(family, Power):
        return moment_power(family.m, k)
    if isinstance(family, SymPower):
        return moment_sympower(family.m, k)
    return MomentResult(family, k, moment_poly_generic(family.p, k), "engine", Source.ENGINE)


# --- zeta series ---


def _zeta_minus_one(s: int):
    # zeta(s) - 1 without the cancellation of subtracting 1
    return mpmath.zeta(s, 2)


def furdui_series(m: int, k: int, precision) -> Real:
    """
    m!/(k+1)! sum_{j>=1} (k+j)!/(m+j)! (zeta(k+j+1) - 1), which equals C_k^m.

    Terms are bounded by r_j 2^-s (1 + 2/(s-1)) with s = k+j+1 and
    r_j = (k+j)!/(m+j)!; consecutive bounds shrink at least by
    q = max(1, (k+j+2)/(m+j+2)) / 2, so the tail after term j is at most
    bound_{j+1} / (1 - q) once q < 1.
    """
    if m < 1 or k < 0:
        raise UnsupportedArgument(f"furdui_series needs m >= 1 and k >= 0, got m={m}, k={k}")
    precision = Precision.of(precision)
    scale = Fraction(factorial(m), factorial(k + 1))
    with mpmath.workdps(precision.working_dps):
        target = mpmath.mpf(10) ** (-(precision.digits + 2)) / to_mpf(scale)
        total = mpmath.mpf(0)
        ratio = Fraction(factorial(k + 1), factorial(m + 1))  # (k+j)!/(m+j)! at j = 1
        for j in range(1, Config.SERIES_TERM_CAP + 1):
            s = k + j + 1
            total += to_mpf(ratio) * _zeta_minus_one(s)
            ratio *= Fraction(k + j + 1, m + j + 1)
            q = Fraction(max(m + j + 2, k + j + 2), 2 * (m + j + 2))
            if q < 1:
                bound = to_mpf(ratio) * mpmath.mpf(2) ** (-(s + 1)) * (1 + mpmath.mpf(2) / s)
                if bound / (1 - to_mpf(q)) < target:
                    logger.debug("furdui_series m=%d k=%d truncated after %d terms", m, k, j)
                    return Real(+(to_mpf(scale) * total), precision.digits)
    raise PrecisionUnachievable(
        f"furdui_series m={m} k={k} did not reach 10^-{precision.digits} in {Config.SERIES_TERM_CAP} terms"
    )


class ZetaSumCase(str, enum.Enum):
    M_MINUS_1 = "k-eq-m-minus-1"
    M_MINUS_2 = "k-eq-m-minus-2"
    M_MINUS_3 = "k-eq-m-minus-3"
    GENERAL = "general"


_CASE_MIN_M = {ZetaSumCase.M_MINUS_1: 1, ZetaSumCase.M_MINUS_2: 2, ZetaSumCase.M_MINUS_3: 3, ZetaSumCase.GENERAL: 1}


def _check_case(m: int, case: ZetaSumCase, k: Optional[int]):
    if m < _CASE_MIN_M[case]:
        raise UnsupportedArgument(f"case {case.value} needs m >= {_CASE_MIN_M[case]}, got {m}")
    if case is ZetaSumCase.GENERAL and (k is None or k < 0):
        raise UnsupportedArgument("the general case needs k >= 0")


def zeta_sum_closed(m: int, case: ZetaSumCase | str, k: Optional[int] = None) -> SymValue:
    """
    Closed forms of the zeta series

      k-eq-m-minus-1: sum_{j>=1} (zeta(m+j) - 1)/(m+j)
      k-eq-m-minus-2: sum_{j>=1} (zeta(m+j-1) - 1)/((m+j)(m+j-1))
      k-eq-m-minus-3: sum_{j>=1} (zeta(m+j-2) - 1)/((m+j)(m+j-1)(m+j-2))
      general:        m!/(k+1)! sum_{j>=1} (k+j)!/(m+j)! (zeta(k+j+1) - 1)
    """
    case = ZetaSumCase(case)
    _check_case(m, case, k)
    if case is ZetaSumCase.GENERAL:
        return moment_power(m, k).value
    if case is ZetaSumCase.M_MINUS_1:
        value = SymValue.constant(harmonic(m)) - GAMMA
        for j in range(1, m):
            value = value - SymValue.of(zeta(j + 1), coeff=Fraction(1, j + 1))
        return value
    if case is ZetaSumCase.M_MINUS_2:
        value = SymValue.constant(Fraction(-1, m)) + SymValue.of(LOG_2PI, coeff=Fraction(1, 2))
        value = value - SymValue.of(GAMMA, coeff=Fraction(1, 2))
        for n in range(2, m):
            value = value - SymValue.of(zeta(n), coeff=Fraction(1, n * (n + 1)))
        return value
    # zeta'(2)/(2 pi^2) = (1/12) zeta'(2)/zeta(2)
    value = SymValue.constant(Fraction(-1, 2 * m * (m - 1))) + SymValue.of(zeta_prime_ratio(2), coeff=Fraction(1, 12))
    value = value + SymValue.of(LOG_2PI, coeff=Fraction(1, 6)) - SymValue.of(GAMMA, coeff=Fraction(1, 4))
    for n in range(2, m - 1):
        value = value - SymValue.of(zeta(n), coeff=Fraction(1, n * (n + 1) * (n + 2)))
    return value


def zeta_sum_series(m: int, case: ZetaSumCase | str, precision, k: Optional[int] = None) -> Real:
    """
    Direct numerical summation of the series behind zeta_sum_closed.

    With s = m+j-shift, zeta(s) - 1 <= 2^-s (1 + 2/(s-1)) and the denominators
    grow with j, so consecutive term bounds at least halve and the tail after
    term j is at most twice the bound on term j+1.
    """
    case = ZetaSumCase(case)
    _check_case(m, case, k)
    if case is ZetaSumCase.GENERAL:
        return furdui_series(m, k, precision)
    precision = Precision.of(precision)
    shift = {ZetaSumCase.M_MINUS_1: 0, ZetaSumCase.M_MINUS_2: 1, ZetaSumCase.M_MINUS_3: 2}[case]

    def denominator(j):
        out = 1
        for i in range(shift + 1):
            out *= m + j - i
        return out

    with mpmath.workdps(precision.working_dps):
        target = mpmath.mpf(10) ** (-(precision.digits + 2))
        total = mpmath.mpf(0)
        for j in range(1, Config.SERIES_TERM_CAP + 1):
            total += _zeta_minus_one(m + j - shift) / denominator(j)
            s = m + j + 1 - shift
            bound = mpmath.mpf(2) ** (-s) * (1 + mpmath.mpf(2) / (s - 1)) / denominator(j + 1)
            if 2 * bound < target:
                logger.debug("zeta series %s m=%d truncated after %d terms", case.value, m, j)
                return Real(+total, precision.digits)
    raise PrecisionUnachievable(
        f"zeta series {case.value} m={m} did not reach 10^-{precision.digits} in {Config.SERIES_TERM_CAP} terms"
    )


# --- Hermite identity and the double integral ---


def _frac(x: Fraction) -> Fraction:
    return x - math.floor(x)


def hermite_fractional_sum(x, n: int) -> Tuple[Fraction, Fraction]:
    """Both sides of sum_{i<n} {x + i/n} = {nx} + (n-1)/2 at a rational x."""
    if n < 1:
        raise UnsupportedArgument("n must be >= 1")
    x = as_rational(x)
    lhs = sum((_frac(x + Fraction(i, n)) for i in range(n)), Fraction(0))
    return lhs, _frac(n * x) + Fraction(n - 1, 2)


def hermite_moment(n: int, k: int) -> SymValue:
    """integral_0^n x^k sum_{i<n} {1/x + i/n} dx."""
    if n < 1:
        raise UnsupportedArgument("n must be >= 1")
    _check_k(k)
    if k == 0:
        return (SymValue.constant(Fraction(n + 1, 2)) - GAMMA).scale(n)
    value = SymValue.constant(Fraction(1, k) + Fraction(n - 1, 2 * (k + 1)))
    value = value - SymValue.of(zeta(k + 1), coeff=Fraction(1, k + 1))
    return value.scale(n ** (k + 1))


def double_moment(m: int, k: int) -> SymValue:
    """integral_0^1 integral_0^1 {x/y}^m {y/x}^k dx dy = (C_k^m + C_m^k)/2."""
    if m < 1 or k < 1:
        raise UnsupportedArgument(f"double_moment needs m, k >= 1, got m={m}, k={k}")
    return (moment_power(m, k).value + moment_power(k, m).value).scale(Fraction(1, 2))


# --- exact identity suites ---


@dataclass(frozen=True)
class IdentityFailure:
    params: Dict[str, object]
    lhs: str
    rhs: str


@dataclass
class IdentityReport:
    identity: str
    checked: str
    cases: int = 0
    failure: Optional[IdentityFailure] = None

    @property
    def status(self) -> str:
        return "all-exact" if self.failure is None else "failed"

    @property
    def passed(self) -> bool:
        return self.failure is None


Case = Tuple[Dict[str, object], object, object]


def _factorial_ratio_cases(m_max: int) -> Iterator[Case]:
    for m in range(m_max + 1):
        for k in range(m, 2 * m + m_max + 1):
            lhs = sum((Fraction(factorial(k - j), factorial(m - j)) for j in range(m + 1)), Fraction(0))
            yield {"form": 1, "m": m, "k": k}, lhs, Fraction(factorial(k + 1), factorial(m) * (k + 1 - m))
            hockey = sum((binom(k - m + j, j) for j in range(m + 1)), Fraction(0))
            yield {"form": 2, "m": m, "k": k}, hockey, binom(k + 1, m)
        for k in range(m - 1):
            lhs = sum((Fraction(factorial(k - j), factorial(m - j)) for j in range(k + 1)), Fraction(0))
            rhs = Fraction(factorial(k + 1), factorial(m) * (k + 1 - m)) * (1 - binom(m, k + 1))
            yield {"form": 3, "m": m, "k": k}, lhs, rhs
            ratio_sum = sum((binom(m, j) / binom(k, j) for j in range(k + 1)), Fraction(0))
            yield {"form": 4, "m": m, "k": k}, Fraction(m - k - 1, k + 1) * ratio_sum, binom(m, k + 1) - 1

            # both sides of form 4 satisfy (m-k) a_{m+1,k} - (m+1) a_{m,k} = k+1
            def closed(mm):
                return binom(mm, k + 1) - 1

            def summed(mm):
                return Fraction(mm - k - 1, k + 1) * sum((binom(mm, j) / binom(k, j) for j in range(k + 1)), Fraction(0))

            for side, seq in enumerate((closed, summed)):
                yield {"form": 5, "m": m, "k": k, "side": side}, (m - k) * seq(m + 1) - (m + 1) * seq(m), k + 1


def _sympower_binomial_cases(m_max: int) -> Iterator[Case]:
    for m in range(1, m_max + 1):
        def weight(k):
            return Fraction((-1) ** k, m + k + 1) * binom(m, k)

        lhs = sum((weight(k) for k in range(m + 1)), Fraction(0))
        yield {"form": 0, "m": m}, lhs, 1 / ((2 * m + 1) * binom(2 * m, m))
        for j in range(1, m + 1):
            yield {"form": 1, "m": m, "j": j}, sum((weight(k) * binom(m + k + 1, j) for k in range(m + 1)), Fraction(0)), 0
        for j in range(m + 1, 2 * m + 1):
            lhs = sum((weight(k) * binom(m + k + 1, j) for k in range(j - m, m + 1)), Fraction(0))
            rhs = Fraction((-1) ** m * (1 + (-1) ** j), j) * binom(m, j - m - 1)
            yield {"form": 2, "m": m, "j": j}, lhs, rhs
            lhs = sum(((-1) ** k * binom(m, k) * binom(m + k, j - 1) for k in range(j - m, m + 1)), Fraction(0))
            yield {"form": 3, "m": m, "j": j}, lhs, (-1) ** m * (1 + (-1) ** j) * binom(m, j - m - 1)
        for k in range(m + 1):
            for ell in range(k + 1):
                yield {"form": 4, "m": m, "k": k, "l": ell}, binom(m, k) * falling(k, ell), binom(m - ell, k - ell) * falling(m, ell)


def _sympower_expansion_cases(m_max: int) -> Iterator[Case]:
    for m in range(1, min(m_max, 20) + 1):
        f = sympower(m)
        yield {"form": 0, "m": m}, expand_sympower(m).to_poly(), f
        if m > 10:
            continue
        for k in range(1, 2 * m + 1):
            derivative = f.derivative(k)
            yield {"form": 1, "m": m, "k": k}, sympower_derivative(m, k).to_poly(), derivative
        for j in range(2 * m + 2):
            d = f.derivative(j)
            yield {"form": 2, "m": m, "j": j}, sympower_boundary(m, j), (d.evaluate(0), d.evaluate(1))


def _sympower_p_sum_cases(m_max: int) -> Iterator[Case]:
    def closed_2m_minus_1(m):
        return 2 * m * (harmonic(2 * m) - harmonic(m))

    for m in range(1, m_max + 1):
        for k in range(2 * m, 2 * m + m_max + 1):
            lhs = sum((binom(m, j - m) / binom(k, j) for j in range(m, 2 * m + 1)), Fraction(0))
            rhs = Fraction(factorial(m) * factorial(k - 2 * m) * (k + 1), factorial(k + 1 - m))
            yield {"form": 1, "m": m, "k": k}, lhs, rhs
            yield {"form": 2, "m": m, "k": k}, p_sum(m, k), rhs
        yield {"form": 3, "m": m}, p_sum(m, 2 * m - 1), closed_2m_minus_1(m)
        for side, seq in enumerate((closed_2m_minus_1, lambda mm: p_sum(mm, 2 * mm - 1))):
            yield {"form": 4, "m": m, "side": side}, m * seq(m + 1), (m + 1) * seq(m) + Fraction(m, 2 * m + 1)


def _legendre_cases(m_max: int) -> Iterator[Case]:
    for m in range(min(m_max, 15) + 1):
        yield {"form": 0, "m": m}, shifted_legendre_from_bernoulli(m).to_poly(), shifted_legendre(m)
    top = min(m_max, 8)
    for i in range(top + 1):
        for j in range(top + 1):
            inner = (shifted_legendre(i) * shifted_legendre(j)).integrate_unit()
            yield {"form": 1, "i": i, "j": j}, inner, Fraction(1, 2 * i + 1) if i == j else Fraction(0)


def _bernoulli_cases(m_max: int) -> Iterator[Case]:
    top = min(m_max, 30)
    numbers = bernoulli_numbers(top + 1)
    for m in range(top + 1):
        lhs = sum((binom(m + 1, k) * numbers[k] for k in range(m + 1)), Fraction(0))
        yield {"form": 0, "m": m}, lhs, Fraction(1 if m == 0 else 0)
    for n in range(top + 1):
        b = bernoulli_poly(n)
        yield {"form": 1, "n": n}, (b.evaluate(0), (-1) ** n * b.evaluate(1)), (numbers[n], numbers[n])
        for k in range(n + 1):
            yield {"form": 2, "n": n, "k": k}, b.derivative(k), bernoulli_poly_derivative(n, k)


def _hermite_fractional_cases(m_max: int) -> Iterator[Case]:
    top = min(m_max, 12)
    for n in range(1, top + 1):
        for d in range(1, top + 1):
            for a in range(-2 * d, 3 * d + 1):
                x = Fraction(a, d)
                lhs, rhs = hermite_fractional_sum(x, n)
                yield {"n": n, "x": str(x)}, lhs, rhs


IDENTITY_SUITES: Dict[str, Tuple[Callable[[int], Iterator[Case]], str]] = {
    "factorial-ratio-sums": (_factorial_ratio_cases, "0 <= m <= m_max, m <= k <= 2m + m_max and 0 <= k <= m-2"),
    "sympower-binomial-sums": (_sympower_binomial_cases, "1 <= m <= m_max, 0 <= j <= 2m"),
    "sympower-expansion": (_sympower_expansion_cases, "1 <= m <= min(m_max, 20); derivatives for m <= 10"),
    "sympower-p-sums": (_sympower_p_sum_cases, "1 <= m <= m_max, 2m <= k <= 2m + m_max and k = 2m-1"),
    "legendre": (_legendre_cases, "0 <= m <= min(m_max, 15); orthogonality up to degree 8"),
    "bernoulli": (_bernoulli_cases, "0 <= n <= min(m_max, 30)"),
    "hermite-fractional": (_hermite_fractional_cases, "1 <= n, d <= min(m_max, 12), x = a/d in [-2, 3]"),
}


def identity_suite(which: str, m_max: int) -> IdentityReport:
    """Check one family of exact identities; failures are reported, never raised."""
    if which not in IDENTITY_SUITES:
        raise UnsupportedArgument(f"unknown identity suite {which!r}; expected one of {sorted(IDENTITY_SUITES)}")
    if m_max < 1:
        raise UnsupportedArgument("m_max must be >= 1")
    cases, checked = IDENTITY_SUITES[which]
    report = IdentityReport(which, checked.replace("m_max", str(m_max)))
    for params, lhs, rhs in cases(m_max):
        report.cases += 1
        if lhs != rhs:
            report.failure = IdentityFailure(params, str(lhs), str(rhs))
            logger.warning("identity %s fails at %s: %s != %s", which, params, lhs, rhs)
            break
    logger.debug("identity %s: %d cases, %s", which, report.cases, report.status)
    return report
