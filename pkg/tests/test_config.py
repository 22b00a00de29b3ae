import pytest

from fracmom.config import PRECISION_ENV_VAR, Config, Precision, default_precision
from fracmom.errors import PrecisionUnachievable, UnsupportedArgument


def test_default_precision_from_environment(monkeypatch):
    monkeypatch.delenv(PRECISION_ENV_VAR, raising=False)
    assert default_precision() == Config.DEFAULT_DIGITS
    monkeypatch.setenv(PRECISION_ENV_VAR, "45")
    assert default_precision() == 45
    monkeypatch.setenv(PRECISION_ENV_VAR, "many")
    with pytest.raises(UnsupportedArgument):
        default_precision()


def test_precision_bounds():
    assert Precision(30).working_dps == 30 + Config.GUARD_DIGITS
    assert Precision.of(Precision(20)) == Precision(20)
    with pytest.raises(UnsupportedArgument):
        Precision(Config.MIN_DIGITS - 1)
    with pytest.raises(PrecisionUnachievable):
        Precision(Config.MAX_DIGITS + 1)
