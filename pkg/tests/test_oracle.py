import mpmath
import pytest

from fracmom.config import Config
from fracmom.errors import PrecisionUnachievable, UnsupportedArgument
from fracmom.exactmath import Poly
from fracmom.moments import BernoulliPoly, Cosine, GenericPoly, Power, Sine, SymPower, moment, moment_power
from fracmom.oracle import (
    INTERVAL_SERIES,
    POLYGAMMA_KERNEL,
    cross_check,
    gauss_legendre,
    log_quadrature,
    loggamma_quadrature,
    oracle_double_integral,
    oracle_hermite,
    oracle_interval_series,
    oracle_polygamma,
)
from fracmom.symbolic import eval_sym


def close(a, b, tol):
    with mpmath.workdps(50):
        return abs(mpmath.mpf(a) - mpmath.mpf(b)) < mpmath.mpf(tol)


def test_gauss_legendre_rule():
    nodes, weights = gauss_legendre(12, 40)
    with mpmath.workdps(40):
        assert close(mpmath.fsum(weights), 1, "1e-38")
        assert close(mpmath.fsum(w * x ** 23 for x, w in zip(nodes, weights)), mpmath.mpf(1) / 24, "1e-38")
        assert all(0 < x < 1 for x in nodes)


def test_interval_series_first_moment():
    result = oracle_interval_series(Power(1), 0, 20, intervals=200)
    assert result.method == INTERVAL_SERIES
    assert result.params["J"] == 200
    assert result.error_bound < mpmath.mpf(10) ** -18
    with mpmath.workdps(30):
        assert close(result.value.value, 1 - mpmath.euler, "1e-18")


@pytest.mark.parametrize("family", [Power(2), SymPower(2), BernoulliPoly(3), Sine(), Cosine()])
@pytest.mark.parametrize("k", [0, 3])
def test_oracles_agree_with_each_other(family, k):
    series = oracle_interval_series(family, k, 20, intervals=200)
    kernel = oracle_polygamma(family, k, 20)
    assert kernel.method == POLYGAMMA_KERNEL
    assert close(series.value.value, kernel.value.value, "1e-17")


def test_polygamma_oracle_against_closed_form():
    result = oracle_polygamma(Power(2), 1, 25)
    assert close(result.value.value, eval_sym(moment_power(2, 1).value, 25).value, "1e-23")


def test_hermite_oracle():
    result = oracle_hermite(2, 1, 20)
    with mpmath.workdps(30):
        assert close(result.value.value, 5 - mpmath.pi ** 2 / 3, "1e-15")
    with pytest.raises(UnsupportedArgument):
        oracle_hermite(0, 1, 20)


def test_loggamma_and_log_quadrature():
    with mpmath.workdps(40):
        raabe = mpmath.log(2 * mpmath.pi) / 2 - 1
    assert close(loggamma_quadrature(lambda x: 1, 30).value.value, raabe, "1e-28")
    assert close(log_quadrature(lambda x: x, 30).value.value, -0.25, "1e-28")


def test_double_integral():
    estimate = oracle_double_integral(1, 1)
    with mpmath.workdps(20):
        expected = float(1 - mpmath.zeta(2) / 2)
    assert abs(estimate.value - expected) < 1e-3
    assert estimate.error_bound < 1e-3
    assert estimate.params["panels"] == Config.DOUBLE_PANELS
    assert abs(oracle_double_integral(1, 2).value - 0.0998) < 1e-3
    with pytest.raises(UnsupportedArgument):
        oracle_double_integral(1, 0)


def test_cross_check_passes_and_renders_record():
    report = cross_check(Power(1), 2, 20, "1e-15", intervals=200)
    assert report.passed
    assert set(report.oracles) == {INTERVAL_SERIES, POLYGAMMA_KERNEL}
    record = report.to_record()
    assert record["family"] == "power"
    assert record["m"] == 1
    assert record["regime"] == "k>=m"
    assert record["method"] == "theorem"
    assert {"engine", "interval_series", "polygamma_kernel", "max_difference"} <= set(record)
    assert record["passed"] is True


def test_cross_check_generic_polynomial_has_no_engine_column():
    report = cross_check(GenericPoly(Poly((1, 2))), 1, 20, "1e-15", intervals=200)
    assert report.engine is None
    assert "engine" not in report.to_record()
    assert report.passed


def test_cross_check_records_oracle_failures(monkeypatch):
    from fracmom import oracle

    def stalled(family, k, precision):
        raise PrecisionUnachievable("quadrature stalled")

    monkeypatch.setattr(oracle, "oracle_polygamma", stalled)
    report = cross_check(Power(1), 0, 20, "1e-15", intervals=200)
    assert not report.passed
    assert "quadrature stalled" in report.discrepancy
    assert POLYGAMMA_KERNEL not in report.oracles


def test_interval_series_bound_does_not_grow_with_intervals():
    truth = eval_sym(moment_power(2, 0).value, 40).value
    coarse = oracle_interval_series(Power(2), 0, 20, intervals=50)
    fine = oracle_interval_series(Power(2), 0, 20, intervals=100)
    assert fine.error_bound <= coarse.error_bound
    with mpmath.workdps(50):
        assert abs(coarse.value.value - truth) <= coarse.error_bound
        assert abs(fine.value.value - truth) <= fine.error_bound


@pytest.mark.parametrize("intervals", [1, 10])
def test_interval_series_tail_carries_the_sum(intervals):
    # with very few quadrature intervals almost everything comes from the zeta tail
    result = oracle_interval_series(SymPower(1), 2, 20, intervals=intervals)
    truth = eval_sym(moment(SymPower(1), 2).value, 40).value
    assert close(result.value.value, truth, "1e-18")


def test_interval_series_rejects_empty_range():
    with pytest.raises(UnsupportedArgument):
        oracle_interval_series(Power(1), 0, 20, intervals=0)
