"""Sphere / nanoribbon geometry."""
from __future__ import annotations

import warnings
from dataclasses import dataclass

from .errors import ConfigurationError, NonlocalRegimeWarning
from .units import NONLOCAL_LIMIT_M


@dataclass(frozen=True)
class Geometry:
    """Sphere radius ``R`` and ribbon distance ``r_m`` from the sphere centre (metres)."""

    R: float
    r_m: float

    def __post_init__(self):
        if not self.R > 0:
            raise ConfigurationError(f"R must be > 0, got {self.R}")
        if not self.r_m > self.R:
            raise ConfigurationError(f"r_m must exceed R (got r_m={self.r_m}, R={self.R})")
        if self.nonlocal_regime:
            warnings.warn(
                f"r_m = {self.r_m * 1e9:.3g} nm is below {NONLOCAL_LIMIT_M * 1e9:.0f} nm; "
                "nonlocal response is not modelled",
                NonlocalRegimeWarning,
                stacklevel=3,
            )

    @property
    def nonlocal_regime(self) -> bool:
        return self.r_m < NONLOCAL_LIMIT_M

    @property
    def gap(self) -> float:
        return self.r_m - self.R
