"""
Exact closed-form values.

A SymValue is a finite rational linear combination of products of atoms
(gamma, powers of pi, log 2pi, zeta(s), zeta'(s)/zeta(s), Si(2pi), Ci(2pi)).
Values are kept in a normal form (terms sorted, equal products merged, zero
coefficients dropped) so two values are equal exactly when their term
tuples are equal. No rewriting between atoms is attempted: zeta(2) and pi^2
stay distinct, and numerical evaluation is the cross-encoding test.
"""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Tuple, Union

import mpmath

from .bernoulli import BernoulliBasisPoly, bernoulli_number, poly_to_bernoulli
from .config import Precision
from .constants import Real, eval_named_constant, si_ci_at_2pi, to_mpf, zeta_int, zeta_prime_even
from .errors import UnsupportedArgument
from .exactmath import Poly, as_rational, binom, factorial, harmonic

__all__ = [
    "AtomKind",
    "Atom",
    "SymValue",
    "TrigKind",
    "GAMMA",
    "LOG_2PI",
    "SI_2PI",
    "CI_2PI",
    "pi_power",
    "zeta",
    "zeta_prime_ratio",
    "alpha_seq",
    "a_seq",
    "b_seq",
    "bernoulli_log_integral",
    "loggamma_integral_bernoulli",
    "loggamma_integral_monomial",
    "loggamma_integral_poly",
    "loggamma_integral_trig",
    "polygamma_at_integer",
    "eval_sym",
]


class AtomKind(enum.IntEnum):
    EULER_GAMMA = 0
    PI = 1
    LOG_2PI = 2
    ZETA = 3
    ZETA_PRIME_RATIO = 4
    SI_2PI = 5
    CI_2PI = 6


@dataclass(frozen=True, order=True)
class Atom:
    kind: AtomKind
    arg: int = 0

    def __post_init__(self):
        kind, arg = self.kind, self.arg
        if kind is AtomKind.PI and arg == 0:
            raise UnsupportedArgument("pi^0 belongs in the rational coefficient")
        if kind is AtomKind.ZETA and arg < 2:
            raise UnsupportedArgument(f"zeta atom needs s >= 2, got {arg}")
        if kind is AtomKind.ZETA_PRIME_RATIO and (arg < 2 or arg % 2):
            raise UnsupportedArgument(f"zeta'/zeta atom needs an even s >= 2, got {arg}")
        if kind not in (AtomKind.PI, AtomKind.ZETA, AtomKind.ZETA_PRIME_RATIO) and arg != 0:
            raise UnsupportedArgument(f"{kind.name} takes no argument")

    @property
    def name(self) -> str:
        kind = self.kind
        if kind is AtomKind.EULER_GAMMA:
            return "gamma"
        if kind is AtomKind.PI:
            return "pi" if self.arg == 1 else f"pi^{self.arg}"
        if kind is AtomKind.LOG_2PI:
            return "log2pi"
        if kind is AtomKind.ZETA:
            return f"zeta({self.arg})"
        if kind is AtomKind.ZETA_PRIME_RATIO:
            return f"dlogzeta({self.arg})"
        if kind is AtomKind.SI_2PI:
            return "Si2pi"
        return "Ci2pi"

    def evaluate(self, precision):
        """mpf value of the atom, computed at `precision`."""
        kind = self.kind
        if kind is AtomKind.EULER_GAMMA:
            return eval_named_constant("gamma", precision).value
        if kind is AtomKind.PI:
            return eval_named_constant("pi", precision).value ** self.arg
        if kind is AtomKind.LOG_2PI:
            return eval_named_constant("log2pi", precision).value
        if kind is AtomKind.ZETA:
            return zeta_int(self.arg, precision).value
        if kind is AtomKind.ZETA_PRIME_RATIO:
            return zeta_prime_even(self.arg, precision).value / zeta_int(self.arg, precision).value
        si, ci = si_ci_at_2pi(precision)
        return si.value if kind is AtomKind.SI_2PI else ci.value

    def __str__(self):
        return self.name


GAMMA = Atom(AtomKind.EULER_GAMMA)
LOG_2PI = Atom(AtomKind.LOG_2PI)
SI_2PI = Atom(AtomKind.SI_2PI)
CI_2PI = Atom(AtomKind.CI_2PI)


def pi_power(power: int) -> Atom:
    return Atom(AtomKind.PI, power)


def zeta(s: int) -> Atom:
    return Atom(AtomKind.ZETA, s)


def zeta_prime_ratio(s: int) -> Atom:
    return Atom(AtomKind.ZETA_PRIME_RATIO, s)


Key = Tuple[Atom, ...]


def _normal_key(atoms: Iterable[Atom]) -> Key:
    # powers of pi collapse into one atom; every other atom keeps its multiplicity
    power = 0
    rest = []
    for atom in atoms:
        if atom.kind is AtomKind.PI:
            power += atom.arg
        else:
            rest.append(atom)
    if power:
        rest.append(pi_power(power))
    return tuple(sorted(rest))


Operand = Union["SymValue", Atom, Fraction, int]


@dataclass(frozen=True)
class SymValue:
    terms: Tuple[Tuple[Key, Fraction], ...] = ()

    @classmethod
    def from_mapping(cls, mapping: Mapping[Key, Fraction]) -> "SymValue":
        merged: Dict[Key, Fraction] = {}
        for key, coeff in mapping.items():
            key = _normal_key(key)
            merged[key] = merged.get(key, Fraction(0)) + as_rational(coeff)
        return cls(tuple(sorted((k, c) for k, c in merged.items() if c != 0)))

    @classmethod
    def zero(cls) -> "SymValue":
        return cls()

    @classmethod
    def constant(cls, value) -> "SymValue":
        return cls.from_mapping({(): as_rational(value)})

    @classmethod
    def of(cls, *atoms: Atom, coeff=1) -> "SymValue":
        """coeff * atoms[0] * atoms[1] * ..."""
        return cls.from_mapping({tuple(atoms): as_rational(coeff)})

    def as_dict(self) -> Dict[Key, Fraction]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def rational_part(self) -> Fraction:
        return self.as_dict().get((), Fraction(0))

    def coefficient(self, *atoms: Atom) -> Fraction:
        return self.as_dict().get(_normal_key(atoms), Fraction(0))

    def atoms(self):
        return sorted({atom for key, _ in self.terms for atom in key})

    # --- algebra ---

    def __add__(self, other: Operand) -> "SymValue":
        other = _as_sym(other)
        merged = self.as_dict()
        for key, coeff in other.terms:
            merged[key] = merged.get(key, Fraction(0)) + coeff
        return SymValue.from_mapping(merged)

    __radd__ = __add__

    def __neg__(self) -> "SymValue":
        return SymValue(tuple((k, -c) for k, c in self.terms))

    def __sub__(self, other: Operand) -> "SymValue":
        return self + (-_as_sym(other))

    def __rsub__(self, other: Operand) -> "SymValue":
        return _as_sym(other) - self

    def scale(self, factor) -> "SymValue":
        factor = as_rational(factor)
        if factor == 0:
            return SymValue()
        return SymValue(tuple((k, c * factor) for k, c in self.terms))

    def multiply_by_atom(self, atom: Atom) -> "SymValue":
        return SymValue.from_mapping({key + (atom,): c for key, c in self.terms})

    def __mul__(self, other: Operand) -> "SymValue":
        if isinstance(other, Atom):
            return self.multiply_by_atom(other)
        if isinstance(other, SymValue):
            product: Dict[Key, Fraction] = {}
            for k1, c1 in self.terms:
                for k2, c2 in other.terms:
                    key = _normal_key(k1 + k2)
                    product[key] = product.get(key, Fraction(0)) + c1 * c2
            return SymValue.from_mapping(product)
        return self.scale(other)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "SymValue":
        other = as_rational(other)
        if other == 0:
            raise ZeroDivisionError("SymValue division by zero")
        return self.scale(1 / other)

    def equals(self, other: Operand) -> bool:
        return self == _as_sym(other)

    # --- rendering and evaluation ---

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for key, coeff in self.terms:
            magnitude = abs(coeff)
            if key:
                body = "*".join(atom.name for atom in key)
                text = body if magnitude == 1 else f"{magnitude}*{body}"
            else:
                text = str(magnitude)
            if not pieces:
                pieces.append(f"-{text}" if coeff < 0 else text)
            else:
                pieces.append(f" - {text}" if coeff < 0 else f" + {text}")
        return "".join(pieces)

    def __str__(self):
        return self.to_text()

    def evaluate(self, precision) -> Real:
        return eval_sym(self, precision)


def _as_sym(value: Operand) -> SymValue:
    if isinstance(value, SymValue):
        return value
    if isinstance(value, Atom):
        return SymValue.of(value)
    return SymValue.constant(value)


def _extra_digits(v: SymValue) -> int:
    # large rational coefficients cancel against each other; carry their size as extra digits
    biggest = max((abs(c) for _, c in v.terms), default=Fraction(1))
    if biggest <= 1:
        return 0
    return len(str(math.ceil(biggest)))


def eval_sym(v: SymValue, precision) -> Real:
    """Numerical value of v, correct to 10^-P."""
    precision = Precision.of(precision)
    inner = Precision(precision.digits + _extra_digits(v), precision.guard)
    with mpmath.workdps(inner.working_dps):
        total = mpmath.mpf(0)
        for key, coeff in v.terms:
            term = to_mpf(coeff)
            for atom in key:
                term *= atom.evaluate(inner)
            total += term
    return Real(total, precision.digits)


class TrigKind(str, enum.Enum):
    SINE = "sine"
    COSINE = "cosine"


# --- sequences ---


def alpha_seq(n: int) -> SymValue:
    """alpha_0 = gamma, alpha_n = zeta(n+1) for n > 0."""
    if n < 0:
        raise UnsupportedArgument("alpha_seq needs n >= 0")
    if n == 0:
        return SymValue.of(GAMMA)
    return SymValue.of(zeta(n + 1))


@functools.lru_cache(maxsize=None)
def a_seq(n: int) -> SymValue:
    """
    a_n = integral_0^1 B_n(x) log Gamma(x) dx.

    Even n: a_n = -zeta'(-n); a_0 = log sqrt(2pi) and, for n = 2m >= 2,
    a_n = (-1)^(m+1) (2m)! zeta(2m+1) / (2 (2pi)^(2m)).
    Odd n: a_n = B_{n+1}/(n+1) * (zeta'(n+1)/zeta(n+1) - log 2pi - gamma).
    """
    if n < 0:
        raise UnsupportedArgument("a_seq needs n >= 0")
    if n == 0:
        return SymValue.of(LOG_2PI, coeff=Fraction(1, 2))
    if n % 2 == 0:
        m = n // 2
        coeff = Fraction((-1) ** (m + 1) * factorial(n), 2 * 2 ** n)
        return SymValue.of(pi_power(-n), zeta(n + 1), coeff=coeff)
    factor = bernoulli_number(n + 1) / (n + 1)
    return (SymValue.of(zeta_prime_ratio(n + 1)) - LOG_2PI - GAMMA).scale(factor)


@functools.lru_cache(maxsize=None)
def bernoulli_log_integral(n: int) -> Fraction:
    """integral_0^1 B_n(x) log x dx = -1/(n+1) sum_{k=1}^{n+1} C(n+1,k) B_{n+1-k} / k."""
    if n < 0:
        raise UnsupportedArgument("n must be >= 0")
    s = sum((binom(n + 1, k) * bernoulli_number(n + 1 - k) / k for k in range(1, n + 2)), Fraction(0))
    return -s / (n + 1)


@functools.lru_cache(maxsize=None)
def b_seq(n: int) -> SymValue:
    """b_n = integral_0^1 B_n(x) log Gamma(x+1) dx = a_n + integral_0^1 B_n(x) log x dx."""
    return a_seq(n) + bernoulli_log_integral(n)


def loggamma_integral_bernoulli(n: int) -> SymValue:
    return b_seq(n)


@functools.lru_cache(maxsize=None)
def loggamma_integral_monomial(n: int) -> SymValue:
    """integral_0^1 x^n log Gamma(x+1) dx = -1/(n+1)^2 + 1/(n+1) sum_{k=0}^{n} C(n+1,k) a_k."""
    if n < 0:
        raise UnsupportedArgument("n must be >= 0")
    total = SymValue.constant(Fraction(-1, (n + 1) ** 2))
    for k in range(n + 1):
        total = total + a_seq(k).scale(binom(n + 1, k) / (n + 1))
    return total


def loggamma_integral_poly(p: Union[Poly, BernoulliBasisPoly]) -> SymValue:
    """integral_0^1 p(x) log Gamma(x+1) dx through the Bernoulli expansion of p."""
    expansion = poly_to_bernoulli(p) if isinstance(p, Poly) else p
    total = SymValue()
    for j, c in expansion.items():
        total = total + b_seq(j).scale(c)
    return total


def loggamma_integral_trig(kind: TrigKind | str, shifted: bool = True) -> SymValue:
    """
    integral_0^1 sin(2 pi x) log Gamma(x+1) dx = Ci(2pi)/(2pi) and
    integral_0^1 cos(2 pi x) log Gamma(x+1) dx = 1/4 - Si(2pi)/(2pi).
    With shifted=False the weight is log Gamma(x): (log 2pi + gamma)/(2pi) and 1/4.
    """
    kind = TrigKind(kind)
    half_over_pi = Fraction(1, 2)
    if kind is TrigKind.SINE:
        if shifted:
            return SymValue.of(pi_power(-1), CI_2PI, coeff=half_over_pi)
        return (SymValue.of(LOG_2PI) + GAMMA).multiply_by_atom(pi_power(-1)).scale(half_over_pi)
    if shifted:
        return SymValue.constant(Fraction(1, 4)) - SymValue.of(pi_power(-1), SI_2PI, coeff=half_over_pi)
    return SymValue.constant(Fraction(1, 4))


def polygamma_at_integer(m: int, n: int) -> SymValue:
    """
    psi^(m)(n) for integers m >= 0, n >= 1:
    -gamma + H_{n-1} for m = 0, (-1)^(m+1) m! (zeta(m+1) - sum_{k<n} k^-(m+1)) otherwise.
    """
    if m < 0 or n < 1:
        raise UnsupportedArgument("polygamma_at_integer needs m >= 0 and n >= 1")
    if m == 0:
        return SymValue.constant(harmonic(n - 1)) - GAMMA
    partial = sum((Fraction(1, k ** (m + 1)) for k in range(1, n)), Fraction(0))
    return (SymValue.of(zeta(m + 1)) - partial).scale((-1) ** (m + 1) * factorial(m))
