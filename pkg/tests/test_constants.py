from fractions import Fraction

import mpmath
import pytest

from fracmom.constants import (
    Real,
    cosine_integral,
    eval_named_constant,
    log_gamma,
    polygamma,
    si_ci_at_2pi,
    sine_integral,
    to_mpf,
    zeta_int,
    zeta_prime_even,
    zeta_tail,
)
from fracmom.errors import DomainError, UnsupportedArgument


def test_named_constants(mp30):
    assert eval_named_constant("gamma", 30).close_to(mpmath.euler, "1e-30")
    assert eval_named_constant("pi", 30).close_to(mpmath.mpf("3.14159265358979323846264338327950288"), "1e-30")
    assert eval_named_constant("log2pi", 30).close_to(mpmath.log(2 * mpmath.pi), "1e-30")
    with pytest.raises(UnsupportedArgument):
        eval_named_constant("e", 30)


def test_to_fixed_rounds_to_precision():
    with mpmath.workdps(40):
        one_minus_gamma = Real(1 - mpmath.euler, 12)
    assert one_minus_gamma.to_fixed() == "0.422784335098"
    assert Real(mpmath.mpf(-2.5), 10).to_fixed(2) == "-2.50"
    assert Real(mpmath.mpf("0.0001"), 10).to_fixed(3) == "0.000"


def test_real_arithmetic_keeps_lower_precision():
    a = Real(mpmath.mpf(1), 30)
    b = Real(mpmath.mpf(2), 20)
    assert (a + b).precision == 20
    assert float(a * Fraction(1, 4)) == 0.25
    assert float(1 - b) == -1.0


def test_to_mpf_of_fraction(mp30):
    assert abs(to_mpf(Fraction(1, 3)) - mpmath.mpf(1) / 3) < mpmath.mpf(10) ** -35


def test_zeta_values(mp30):
    assert zeta_int(2, 30).close_to(mpmath.pi ** 2 / 6, "1e-30")
    assert zeta_prime_even(2, 30).close_to(mpmath.zeta(2, 1, 1), "1e-30")
    assert zeta_tail(2, 3, 30).close_to(mpmath.pi ** 2 / 6 - 1 - mpmath.mpf(1) / 4, "1e-30")
    with pytest.raises(UnsupportedArgument):
        zeta_int(1, 30)
    with pytest.raises(UnsupportedArgument):
        zeta_prime_even(3, 30)


def test_log_gamma_and_polygamma(mp30):
    assert log_gamma(Fraction(1, 2), 30).close_to(mpmath.log(mpmath.sqrt(mpmath.pi)), "1e-30")
    assert polygamma(0, 1, 30).close_to(-mpmath.euler, "1e-30")
    assert polygamma(1, 1, 30).close_to(mpmath.pi ** 2 / 6, "1e-30")
    with pytest.raises(DomainError):
        log_gamma(0, 30)
    with pytest.raises(DomainError):
        polygamma(2, -1, 30)


def test_sine_and_cosine_integrals(mp30):
    si, ci = si_ci_at_2pi(30)
    assert si.close_to(sine_integral(2 * mpmath.pi, 30), "1e-29")
    assert ci.close_to(cosine_integral(2 * mpmath.pi, 30), "1e-29")
    with pytest.raises(DomainError):
        cosine_integral(0, 30)


def test_cosine_integral_from_its_defining_quadrature():
    with mpmath.workdps(30):
        two_pi = 2 * mpmath.pi
        integral = mpmath.quad(lambda t: (mpmath.cos(t) - 1) / t, [0, two_pi])
        expected = integral + mpmath.euler + mpmath.log(two_pi)
        _, ci = si_ci_at_2pi(20)
        assert abs(ci.value - expected) < mpmath.mpf(10) ** -18


@pytest.mark.parametrize("m", range(5))
def test_polygamma_recurrence_at_random_points(m, rng, mp30):
    sign = -1 if m % 2 else 1
    for x in rng.uniform(0.05, 20.0, size=8):
        x = mpmath.mpf(float(x))
        lhs = polygamma(m, x + 1, 30).value
        rhs = polygamma(m, x, 30).value + sign * mpmath.factorial(m) / x ** (m + 1)
        assert abs(lhs - rhs) <= mpmath.mpf(10) ** -26 * max(1, abs(rhs))
