"""
High-precision values of the transcendental constants and special functions
the closed forms are built from: gamma, pi, log(2*pi), zeta and zeta' at
integers, log Gamma, polygamma, Si and Ci.

Every function takes a precision P (digits, or a Precision), computes with
P + guard digits through mpmath and returns a Real whose error bound is
10^-P.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

import mpmath

from .config import Precision
from .errors import DomainError, UnsupportedArgument

__all__ = [
    "Real",
    "to_mpf",
    "eval_named_constant",
    "zeta_int",
    "zeta_prime_even",
    "zeta_tail",
    "log_gamma",
    "polygamma",
    "sine_integral",
    "cosine_integral",
    "si_ci_at_2pi",
]

NAMED_CONSTANTS = ("gamma", "pi", "log2pi")


def to_mpf(value):
    """Exact rationals go through numerator/denominator so nothing is rounded twice."""
    if isinstance(value, Real):
        return value.value
    if isinstance(value, Fraction):
        return mpmath.mpf(value.numerator) / value.denominator
    return mpmath.mpf(value)


@dataclass(frozen=True)
class Real:
    """A real number known to within 10^-precision."""

    value: mpmath.mpf
    precision: int

    @property
    def error_bound(self):
        return mpmath.mpf(10) ** (-self.precision)

    def _combine(self, other, op):
        if isinstance(other, Real):
            digits = min(self.precision, other.precision)
            rhs = other.value
        else:
            digits = self.precision
            rhs = None
        with mpmath.workdps(Precision.of(digits).working_dps):
            if rhs is None:
                rhs = to_mpf(other)
            return Real(op(self.value, rhs), digits)

    def __add__(self, other):
        return self._combine(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        return self._combine(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return self._combine(other, lambda a, b: b - a)

    def __mul__(self, other):
        return self._combine(other, lambda a, b: a * b)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._combine(other, lambda a, b: a / b)

    def __neg__(self):
        return Real(-self.value, self.precision)

    def __abs__(self):
        return Real(abs(self.value), self.precision)

    def __float__(self):
        return float(self.value)

    def close_to(self, other, tol) -> bool:
        return abs(self.value - to_mpf(other)) <= to_mpf(tol)

    def to_fixed(self, digits: int | None = None) -> str:
        """Decimal string with `digits` (default: precision) digits after the point."""
        digits = self.precision if digits is None else digits
        with mpmath.workdps(digits + 20):
            scaled = int(mpmath.nint(self.value * mpmath.mpf(10) ** digits))
        sign = "-" if scaled < 0 else ""
        text = str(abs(scaled)).rjust(digits + 1, "0")
        if digits == 0:
            return f"{sign}{text}"
        return f"{sign}{text[:-digits]}.{text[-digits:]}"

    def __str__(self):
        return mpmath.nstr(self.value, self.precision)


def _real(compute, precision) -> Real:
    precision = Precision.of(precision)
    with mpmath.workdps(precision.working_dps):
        value = +compute()
    return Real(value, precision.digits)


@functools.lru_cache(maxsize=None)
def _named(name: str, digits: int) -> Real:
    if name == "gamma":
        return _real(lambda: mpmath.euler, digits)
    if name == "pi":
        return _real(lambda: mpmath.pi, digits)
    return _real(lambda: mpmath.log(2 * mpmath.pi), digits)


def eval_named_constant(name: str, precision) -> Real:
    if name not in NAMED_CONSTANTS:
        raise UnsupportedArgument(f"unknown constant {name!r}; expected one of {NAMED_CONSTANTS}")
    return _named(name, Precision.of(precision).digits)


@functools.lru_cache(maxsize=None)
def _zeta(s: int, derivative: int, digits: int) -> Real:
    return _real(lambda: mpmath.zeta(s, 1, derivative), digits)


def zeta_int(s: int, precision) -> Real:
    """zeta(s) for integer s >= 2."""
    if s < 2:
        raise UnsupportedArgument(f"zeta_int needs s >= 2, got {s}")
    return _zeta(s, 0, Precision.of(precision).digits)


def zeta_prime_even(s: int, precision) -> Real:
    """zeta'(s) for even s >= 2."""
    if s < 2 or s % 2:
        raise UnsupportedArgument(f"zeta_prime_even needs an even s >= 2, got {s}")
    return _zeta(s, 1, Precision.of(precision).digits)


def zeta_tail(r: int, start: int, precision) -> Real:
    """sum_{j >= start} j^-r as the Hurwitz zeta value zeta(r, start)."""
    if r < 2 or start < 1:
        raise UnsupportedArgument("zeta_tail needs r >= 2 and start >= 1")
    return _real(lambda: mpmath.zeta(r, start), precision)


def _positive_argument(x, what: str):
    value = to_mpf(x)
    if value <= 0:
        raise DomainError(f"{what} is only evaluated for x > 0, got {mpmath.nstr(value, 10)}")
    return value


def log_gamma(x, precision) -> Real:
    precision = Precision.of(precision)
    with mpmath.workdps(precision.working_dps):
        value = _positive_argument(x, "log_gamma")
        return Real(+mpmath.loggamma(value), precision.digits)


def polygamma(m: int, x, precision) -> Real:
    """psi^(m)(x), the (m+1)-th derivative of log Gamma."""
    if m < 0:
        raise UnsupportedArgument("polygamma order must be >= 0")
    precision = Precision.of(precision)
    with mpmath.workdps(precision.working_dps):
        value = _positive_argument(x, "polygamma")
        return Real(+mpmath.psi(m, value), precision.digits)


def sine_integral(x, precision) -> Real:
    precision = Precision.of(precision)
    with mpmath.workdps(precision.working_dps):
        return Real(+mpmath.si(to_mpf(x)), precision.digits)


def cosine_integral(x, precision) -> Real:
    precision = Precision.of(precision)
    with mpmath.workdps(precision.working_dps):
        return Real(+mpmath.ci(_positive_argument(x, "cosine_integral")), precision.digits)


@functools.lru_cache(maxsize=None)
def _si_ci_2pi(digits: int) -> Tuple[Real, Real]:
    precision = Precision.of(digits)
    with mpmath.workdps(precision.working_dps):
        two_pi = 2 * mpmath.pi
        return Real(+mpmath.si(two_pi), digits), Real(+mpmath.ci(two_pi), digits)


def si_ci_at_2pi(precision) -> Tuple[Real, Real]:
    return _si_ci_2pi(Precision.of(precision).digits)
