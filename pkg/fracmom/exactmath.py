"""
Exact arithmetic kernel: binomials, falling factorials, harmonic numbers and
polynomials with Fraction coefficients in the monomial basis.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Tuple, Union

from .errors import UnsupportedArgument

__all__ = ["Rational", "binom", "falling", "harmonic", "factorial", "as_rational", "Poly"]

Rational = Fraction
Scalar = Union[int, Fraction]


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and rational strings such as '-3/4' to Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise UnsupportedArgument("booleans are not rationals")
    if isinstance(value, (int, str)):
        try:
            return Fraction(value)
        except ValueError:
            raise UnsupportedArgument(f"not a rational number: {value!r}") from None
    raise UnsupportedArgument(f"cannot use {type(value).__name__} as an exact rational")


def binom(n: int, k: int) -> Fraction:
    """C(n, k), zero outside 0 <= k <= n so that empty terms of a sum vanish."""
    if n < 0:
        raise UnsupportedArgument(f"binom with negative top {n} is not used")
    if k < 0 or k > n:
        return Fraction(0)
    return Fraction(comb(n, k))


@functools.lru_cache(maxsize=None)
def factorial(n: int) -> int:
    if n < 0:
        raise UnsupportedArgument(f"factorial of negative {n}")
    return 1 if n < 2 else n * factorial(n - 1)


def falling(a: Scalar, n: int) -> Fraction:
    """a(a-1)...(a-n+1); the empty product for n = 0 is 1."""
    if n < 0:
        raise UnsupportedArgument("falling factorial needs n >= 0")
    a = as_rational(a)
    result = Fraction(1)
    for i in range(n):
        result *= a - i
    return result


@functools.lru_cache(maxsize=None)
def harmonic(n: int) -> Fraction:
    """H_n = 1 + 1/2 + ... + 1/n, with H_0 = 0."""
    if n < 0:
        raise UnsupportedArgument("harmonic number needs n >= 0")
    total = Fraction(0)
    for i in range(1, n + 1):
        total += Fraction(1, i)
    return total


def _strip(coeffs: Iterable[Fraction]) -> Tuple[Fraction, ...]:
    out = [as_rational(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class Poly:
    """
    Polynomial over the rationals; coeffs[i] multiplies x**i.

    The coefficient tuple is normalised on construction, so the zero
    polynomial is the empty tuple and equality is structural.
    """

    coeffs: Tuple[Fraction, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _strip(self.coeffs))

    # --- constructors ---

    @classmethod
    def constant(cls, c: Scalar) -> "Poly":
        return cls((as_rational(c),))

    @classmethod
    def monomial(cls, n: int, c: Scalar = 1) -> "Poly":
        if n < 0:
            raise UnsupportedArgument("monomial degree must be >= 0")
        return cls((Fraction(0),) * n + (as_rational(c),))

    @classmethod
    def x(cls) -> "Poly":
        return cls.monomial(1)

    # --- structure ---

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    # --- ring operations ---

    def __add__(self, other) -> "Poly":
        other = _as_poly(other)
        size = max(len(self.coeffs), len(other.coeffs))
        return Poly(self[i] + other[i] for i in range(size))

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other) -> "Poly":
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> "Poly":
        return _as_poly(other) - self

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            return self.scale(other)
        if self.is_zero() or other.is_zero():
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise UnsupportedArgument("polynomial powers must be nonnegative")
        result = Poly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c: Scalar) -> "Poly":
        c = as_rational(c)
        return Poly(c * a for a in self.coeffs)

    # --- calculus ---

    def derivative(self, times: int = 1) -> "Poly":
        if times < 0:
            raise UnsupportedArgument("derivative order must be nonnegative")
        coeffs = list(self.coeffs)
        for _ in range(times):
            coeffs = [i * coeffs[i] for i in range(1, len(coeffs))]
        return Poly(coeffs)

    def integrate_unit(self) -> Fraction:
        """Exact integral over [0, 1]."""
        return sum((c / (i + 1) for i, c in enumerate(self.coeffs)), Fraction(0))

    # --- evaluation ---

    def evaluate(self, x: Scalar) -> Fraction:
        """Horner evaluation at an exact rational point."""
        x = as_rational(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def evaluate_with(self, x, convert):
        """Horner evaluation for non-exact x; convert maps each coefficient into x's number type."""
        acc = convert(Fraction(0))
        for c in reversed(self.coeffs):
            acc = acc * x + convert(c)
        return acc

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            parts.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(parts)


def _as_poly(value) -> Poly:
    if isinstance(value, Poly):
        return value
    return Poly.constant(value)
