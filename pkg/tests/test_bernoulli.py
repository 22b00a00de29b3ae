from fractions import Fraction

import pytest

from fracmom.bernoulli import (
    BernoulliBasisPoly,
    bernoulli_number,
    bernoulli_numbers,
    bernoulli_poly,
    bernoulli_poly_derivative,
    expand_sympower,
    monomial_to_bernoulli,
    poly_to_bernoulli,
    shifted_legendre,
    shifted_legendre_from_bernoulli,
    sympower,
    sympower_boundary,
    sympower_derivative,
)
from fracmom.errors import UnsupportedArgument
from fracmom.exactmath import Poly, binom


def test_bernoulli_numbers():
    assert bernoulli_numbers(4) == (1, Fraction(-1, 2), Fraction(1, 6), 0, Fraction(-1, 30))
    assert bernoulli_number(12) == Fraction(-691, 2730)
    assert bernoulli_number(13) == 0


def test_recurrence_of_numbers():
    numbers = bernoulli_numbers(31)
    for m in range(31):
        total = sum((binom(m + 1, k) * numbers[k] for k in range(m + 1)), Fraction(0))
        assert total == (1 if m == 0 else 0)


def test_bernoulli_polynomials():
    assert bernoulli_poly(0) == Poly.constant(1)
    assert bernoulli_poly(1) == Poly((Fraction(-1, 2), 1))
    assert bernoulli_poly(2) == Poly((Fraction(1, 6), -1, 1))
    for n in range(2, 12):
        assert bernoulli_poly(n).evaluate(1) == bernoulli_poly(n).evaluate(0)


def test_appell_derivative():
    for n in range(10):
        for k in range(n + 2):
            assert bernoulli_poly(n).derivative(k) == bernoulli_poly_derivative(n, k)


def test_monomial_to_bernoulli():
    assert monomial_to_bernoulli(1).to_poly() == Poly.x()
    assert monomial_to_bernoulli(1).coeffs == (Fraction(1, 2), 1)


def test_round_trip_on_random_polynomials(rng):
    for _ in range(10):
        degree = int(rng.integers(0, 26))
        coeffs = [Fraction(int(a), int(b)) for a, b in zip(rng.integers(-50, 51, degree + 1), rng.integers(1, 20, degree + 1))]
        p = Poly(coeffs)
        assert poly_to_bernoulli(p).to_poly() == p


def test_basis_poly_folding():
    value = BernoulliBasisPoly((0, 0, 1), constant=Fraction(1, 3))
    assert value.folded().coeffs == (Fraction(1, 3), 0, 1)
    assert value.items() == [(0, Fraction(1, 3)), (2, 1)]
    assert value.to_poly() == value.folded().to_poly()
    assert (value + value.scale(-1)).is_zero()


def test_expand_sympower_small_case():
    expansion = expand_sympower(1)
    assert expansion.constant == Fraction(1, 6)
    assert expansion.coeffs == (0, 0, -1)
    assert expansion.to_poly() == Poly((0, 1, -1))


@pytest.mark.parametrize("m", range(1, 13))
def test_expand_sympower_matches_monomial_form(m):
    assert expand_sympower(m).to_poly() == sympower(m)


@pytest.mark.parametrize("m", range(1, 7))
def test_sympower_derivatives(m):
    f = sympower(m)
    for k in range(1, 2 * m + 2):
        assert sympower_derivative(m, k).to_poly() == f.derivative(k)


def test_sympower_boundary():
    assert sympower_boundary(1, 1) == (1, -1)
    for m in range(1, 8):
        f = sympower(m)
        for j in range(2 * m + 2):
            d = f.derivative(j)
            assert sympower_boundary(m, j) == (d.evaluate(0), d.evaluate(1))


def test_sympower_argument_checks():
    with pytest.raises(UnsupportedArgument):
        expand_sympower(0)
    with pytest.raises(UnsupportedArgument):
        sympower_derivative(2, 0)


def test_shifted_legendre():
    assert shifted_legendre(0) == Poly.constant(1)
    assert shifted_legendre(2) == Poly((1, -6, 6))
    for m in range(16):
        assert shifted_legendre_from_bernoulli(m).to_poly() == shifted_legendre(m)
        assert shifted_legendre(m).evaluate(1) == 1
