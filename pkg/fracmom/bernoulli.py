"""
Bernoulli numbers and polynomials, conversions between the monomial and the
Bernoulli basis, and the Bernoulli expansion of f_m(x) = x^m (1-x)^m with its
derivatives, boundary values and the shifted Legendre polynomials it yields.
"""

from __future__ import annotations

import functools
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

from .exactmath import Poly, as_rational, binom, factorial
from .errors import UnsupportedArgument

__all__ = [
    "BernoulliBasisPoly",
    "bernoulli_number",
    "bernoulli_numbers",
    "bernoulli_poly",
    "bernoulli_poly_derivative",
    "monomial_to_bernoulli",
    "poly_to_bernoulli",
    "expand_sympower",
    "sympower",
    "sympower_derivative",
    "sympower_boundary",
    "shifted_legendre",
    "shifted_legendre_from_bernoulli",
]

# B_0..B_n, grown on demand. The list only ever gets appended to, under the lock.
_numbers: List[Fraction] = [Fraction(1)]
_numbers_lock = threading.Lock()


def bernoulli_numbers(n: int) -> Tuple[Fraction, ...]:
    """B_0..B_n with B_1 = -1/2, from sum_{k=0}^{m} C(m+1, k) B_k = 0 for m >= 1."""
    if n < 0:
        raise UnsupportedArgument("n must be >= 0")
    with _numbers_lock:
        for m in range(len(_numbers), n + 1):
            if m > 1 and m % 2 == 1:
                _numbers.append(Fraction(0))
                continue
            s = sum((binom(m + 1, k) * _numbers[k] for k in range(m)), Fraction(0))
            _numbers.append(-s / (m + 1))
        return tuple(_numbers[: n + 1])


def bernoulli_number(n: int) -> Fraction:
    return bernoulli_numbers(n)[n]


@functools.lru_cache(maxsize=None)
def bernoulli_poly(n: int) -> Poly:
    """B_n(x) = sum_k C(n, k) B_{n-k} x^k."""
    if n < 0:
        raise UnsupportedArgument("n must be >= 0")
    numbers = bernoulli_numbers(n)
    return Poly(binom(n, k) * numbers[n - k] for k in range(n + 1))


def bernoulli_poly_derivative(n: int, k: int) -> Poly:
    """k-th derivative through the Appell property: n!/(n-k)! B_{n-k}(x)."""
    if k > n:
        return Poly()
    return bernoulli_poly(n - k).scale(Fraction(factorial(n), factorial(n - k)))


@dataclass(frozen=True)
class BernoulliBasisPoly:
    """
    constant + sum_j coeffs[j] * B_j(x).

    The separate constant keeps expansions such as 1/((2m+1)C(2m,m)) + ...
    in the shape they are stated in; folded() moves it onto B_0 = 1.
    """

    coeffs: Tuple[Fraction, ...] = ()
    constant: Fraction = Fraction(0)

    def __post_init__(self):
        coeffs = [as_rational(c) for c in self.coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coeffs", tuple(coeffs))
        object.__setattr__(self, "constant", as_rational(self.constant))

    def __getitem__(self, j: int) -> Fraction:
        if 0 <= j < len(self.coeffs):
            return self.coeffs[j]
        return Fraction(0)

    def folded(self) -> "BernoulliBasisPoly":
        if self.constant == 0:
            return self
        size = max(len(self.coeffs), 1)
        coeffs = [self[j] for j in range(size)]
        coeffs[0] += self.constant
        return BernoulliBasisPoly(tuple(coeffs))

    def is_zero(self) -> bool:
        return self.folded().coeffs == ()

    def to_poly(self) -> Poly:
        total = Poly.constant(self.constant)
        for j, c in enumerate(self.coeffs):
            if c != 0:
                total = total + bernoulli_poly(j).scale(c)
        return total

    def items(self):
        """(j, c_j) pairs of the folded expansion with c_j != 0."""
        return [(j, c) for j, c in enumerate(self.folded().coeffs) if c != 0]

    def __add__(self, other: "BernoulliBasisPoly") -> "BernoulliBasisPoly":
        size = max(len(self.coeffs), len(other.coeffs))
        return BernoulliBasisPoly(
            tuple(self[j] + other[j] for j in range(size)), self.constant + other.constant
        )

    def scale(self, c) -> "BernoulliBasisPoly":
        c = as_rational(c)
        return BernoulliBasisPoly(tuple(c * a for a in self.coeffs), c * self.constant)


def monomial_to_bernoulli(n: int) -> BernoulliBasisPoly:
    """x^n = 1/(n+1) * sum_{j=0}^{n} C(n+1, j) B_j(x)."""
    if n < 0:
        raise UnsupportedArgument("n must be >= 0")
    return BernoulliBasisPoly(tuple(binom(n + 1, j) / (n + 1) for j in range(n + 1)))


def poly_to_bernoulli(p: Poly) -> BernoulliBasisPoly:
    total = BernoulliBasisPoly()
    for n, c in enumerate(p.coeffs):
        if c != 0:
            total = total + monomial_to_bernoulli(n).scale(c)
    return total


def _check_m(m: int):
    if m < 1:
        raise UnsupportedArgument(f"m must be >= 1, got {m}")


def sympower(m: int) -> Poly:
    """f_m(x) = x^m (1-x)^m in the monomial basis."""
    if m < 0:
        raise UnsupportedArgument("m must be >= 0")
    return Poly.monomial(m) * (Poly((1, -1)) ** m)


def _sympower_coefficient(m: int, j: int) -> Fraction:
    # (-1)^m (1 + (-1)^j)/j * C(m, j-m-1); vanishes for odd j
    if j % 2:
        return Fraction(0)
    return (-1) ** m * Fraction(2, j) * binom(m, j - m - 1)


@functools.lru_cache(maxsize=None)
def expand_sympower(m: int) -> BernoulliBasisPoly:
    _check_m(m)
    coeffs = [Fraction(0)] * (2 * m + 1)
    for j in range(m + 1, 2 * m + 1):
        coeffs[j] = _sympower_coefficient(m, j)
    constant = Fraction(1) / ((2 * m + 1) * binom(2 * m, m))
    return BernoulliBasisPoly(tuple(coeffs), constant)


def sympower_derivative(m: int, k: int) -> BernoulliBasisPoly:
    """
    k-th derivative of f_m in the Bernoulli basis,
    (-1)^m k! sum_{j=max(k,m+1)}^{2m} (1+(-1)^j)/j C(m,j-m-1) C(j,k) B_{j-k}(x).

    Beyond k = 2m the derivative is the zero expansion.
    """
    _check_m(m)
    if k < 1:
        raise UnsupportedArgument(f"derivative order must be >= 1, got {k}; use expand_sympower for k = 0")
    if k > 2 * m:
        return BernoulliBasisPoly()
    coeffs = [Fraction(0)] * (2 * m - k + 1)
    for j in range(max(k, m + 1), 2 * m + 1):
        coeffs[j - k] = factorial(k) * _sympower_coefficient(m, j) * binom(j, k)
    return BernoulliBasisPoly(tuple(coeffs))


def sympower_boundary(m: int, j: int) -> Tuple[Fraction, Fraction]:
    """(f_m^{(j)}(0), f_m^{(j)}(1)); nonzero only for m <= j <= 2m."""
    _check_m(m)
    if j < 0:
        raise UnsupportedArgument("derivative order must be >= 0")
    if j < m or j > 2 * m:
        return Fraction(0), Fraction(0)
    at_one = (-1) ** m * factorial(j) * binom(m, j - m)
    return (-1) ** j * at_one, at_one


@functools.lru_cache(maxsize=None)
def shifted_legendre(m: int) -> Poly:
    """Rodrigues: P_m(2x-1) = (-1)^m/m! * d^m/dx^m [x^m (1-x)^m]."""
    if m < 0:
        raise UnsupportedArgument("m must be >= 0")
    return sympower(m).derivative(m).scale(Fraction((-1) ** m, factorial(m)))


def shifted_legendre_from_bernoulli(m: int) -> BernoulliBasisPoly:
    """sum_{j=1}^{m} (1+(-1)^{m+j}) (m+j-1)! / (j! (j-1)! (m-j+1)!) B_j(x)."""
    if m < 0:
        raise UnsupportedArgument("m must be >= 0")
    if m == 0:
        return BernoulliBasisPoly((Fraction(1),))
    coeffs = [Fraction(0)] * (m + 1)
    for j in range(1, m + 1):
        if (m + j) % 2:
            continue
        coeffs[j] = Fraction(2 * factorial(m + j - 1), factorial(j) * factorial(j - 1) * factorial(m - j + 1))
    return BernoulliBasisPoly(tuple(coeffs))
