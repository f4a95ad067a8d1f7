"""Medium/field parameters and detuning points, in units where Gamma_A = 1 and c = 1."""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .errors import InvalidParameter

# Parameter set of the susceptibility figures.
CANONICAL = dict(gamma_a=1.0, gamma_c=1e-4, g_root_n=100.0, omega_ab=1e6)


class RotatingWaveWarning(UserWarning):
    """omega_ab is not far above the other rates of the model."""


@dataclass(frozen=True)
class ModelParams:
    gamma_a: float = 1.0
    gamma_c: float = 1e-4
    g_root_n: float = 100.0
    omega_ab: float = 1e6
    rabi: float = 0.5
    c_light: float = 1.0

    def __post_init__(self):
        for name in ("gamma_a", "gamma_c", "g_root_n", "omega_ab", "rabi", "c_light"):
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or not math.isfinite(value):
                raise InvalidParameter(f"{name} must be a finite number, got {value!r}")
        if self.gamma_a <= 0:
            raise InvalidParameter(f"gamma_a must be > 0, got {self.gamma_a}")
        if self.gamma_c < 0:
            raise InvalidParameter(f"gamma_c must be >= 0, got {self.gamma_c}")
        if self.g_root_n <= 0:
            raise InvalidParameter(f"g_root_n must be > 0, got {self.g_root_n}")
        if self.omega_ab <= 0:
            raise InvalidParameter(f"omega_ab must be > 0, got {self.omega_ab}")
        if self.rabi < 0:
            raise InvalidParameter(f"rabi must be >= 0, got {self.rabi}")
        if self.c_light <= 0:
            raise InvalidParameter(f"c_light must be > 0, got {self.c_light}")
        if self.omega_ab < 100 * max(self.gamma_a, self.rabi, self.g_root_n):
            warnings.warn(
                f"omega_ab={self.omega_ab} < 100*max(gamma_a, rabi, g_root_n); "
                "rotating-wave treatment is questionable",
                RotatingWaveWarning,
                stacklevel=3,
            )

    @property
    def coupling_sq(self) -> float:
        """g^2 N."""
        return self.g_root_n * self.g_root_n

    def with_(self, **changes) -> "ModelParams":
        fields = {k: getattr(self, k) for k in self.__dataclass_fields__}
        fields.update(changes)
        return ModelParams(**fields)


@dataclass(frozen=True)
class DetuningPoint:
    """Probe detuning ``delta_p = omega - omega_ab`` and control detuning ``delta_c``."""

    delta_p: float = 0.0
    delta_c: float = 0.0

    def __post_init__(self):
        for name in ("delta_p", "delta_c"):
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or not math.isfinite(value):
                raise InvalidParameter(f"{name} must be a finite number, got {value!r}")

    @property
    def delta(self) -> float:
        """Two-photon detuning."""
        return self.delta_p - self.delta_c

    def omega(self, params: ModelParams) -> float:
        """Probe carrier frequency; raises if it would not be positive."""
        w = params.omega_ab + self.delta_p
        if w <= 0:
            raise InvalidParameter(
                f"probe frequency omega_ab + delta_p = {w} must be positive"
            )
        return w

    @classmethod
    def resonant(cls, delta_c: float) -> "DetuningPoint":
        """Point on the two-photon resonance line delta_p = delta_c."""
        return cls(delta_c, delta_c)

    @classmethod
    def from_two_photon(cls, delta: float, delta_c: float) -> "DetuningPoint":
        return cls(delta_c + delta, delta_c)
