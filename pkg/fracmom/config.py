import os
from dataclasses import dataclass

from .errors import PrecisionUnachievable, UnsupportedArgument

PRECISION_ENV_VAR = "FRACMOM_PRECISION"


class Config:
    # --- Precision ---
    DEFAULT_DIGITS = 30
    GUARD_DIGITS = 10
    MIN_DIGITS = 10
    MAX_DIGITS = 2000

    # --- Interval-series oracle ---
    GL_ORDER = 32
    GL_CHECK_ORDER = 24        # lower order rule used for the quadrature error estimate
    INTERVALS = 2000           # J
    TAIL_TERMS_CAP = 200       # cap on T, the terms of the analytic tail expansion

    # --- Polygamma-kernel oracle / quadrature ---
    QUAD_MAX_DEGREE = 10

    # --- Series summation ---
    SERIES_TERM_CAP = 100000

    # --- Closed form vs engine check ---
    CHECK_DIGITS = 40
    CHECK_TOL_EXP = 30         # |theorem - engine| <= 10^-30 counts as agreement

    # --- Double integral oracle (numpy float64) ---
    DOUBLE_PANELS = 64
    DOUBLE_NODES = 8
    DOUBLE_CUTOFF = 1e-5       # strip y < cutoff is dropped; integrand is bounded by 1
    DOUBLE_INNER_PIECES = 400  # pieces x in [y/(j+1), y/j] kept below x = y


def default_precision():
    """Digits from FRACMOM_PRECISION, or Config.DEFAULT_DIGITS when unset."""
    raw = os.environ.get(PRECISION_ENV_VAR)
    if raw is None or raw.strip() == "":
        return Config.DEFAULT_DIGITS
    try:
        return int(raw)
    except ValueError:
        raise UnsupportedArgument(f"{PRECISION_ENV_VAR}={raw!r} is not an integer") from None


@dataclass(frozen=True)
class Precision:
    digits: int = Config.DEFAULT_DIGITS
    guard: int = Config.GUARD_DIGITS

    def __post_init__(self):
        if self.digits < Config.MIN_DIGITS:
            raise UnsupportedArgument(f"precision must be at least {Config.MIN_DIGITS} digits, got {self.digits}")
        if self.digits > Config.MAX_DIGITS:
            raise PrecisionUnachievable(f"precision {self.digits} exceeds the cap of {Config.MAX_DIGITS} digits")
        if self.guard < 0:
            raise UnsupportedArgument("guard digits must be nonnegative")

    @property
    def working_dps(self):
        return self.digits + self.guard

    @classmethod
    def of(cls, digits):
        """Accept either an int or an existing Precision."""
        if isinstance(digits, Precision):
            return digits
        return cls(int(digits))
