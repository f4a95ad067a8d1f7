"""Probe-field susceptibility and group velocity in an ensemble of Lambda atoms
under two-photon-resonant EIT."""
from .errors import (
    DegenerateDenominator,
    DimensionMismatch,
    DimensionOverflow,
    InvalidParameter,
    MissingColumn,
    NonPositiveDenominator,
    NumericError,
    StepTooLarge,
    UnstableStep,
)
from .params import CANONICAL, DetuningPoint, ModelParams, RotatingWaveWarning
from .susceptibility import (
    GroupVelocityResult,
    RefractiveIndex,
    Susceptibility,
    chi_complex,
    chi_parts,
    dchi1_domega,
    group_velocity_general,
    group_velocity_resonant,
    refractive_index,
    theta_xi,
)

__version__ = "0.1.0"
