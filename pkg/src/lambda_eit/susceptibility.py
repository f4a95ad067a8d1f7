"""Linear probe susceptibility, refractive index and group velocity.

All functions are pure and take a :class:`DetuningPoint` plus
:class:`ModelParams`.  The probe frequency is always the exact
``omega_ab + delta_p``, both in ``F = 2 g^2 N / omega`` and in the
``omega d/domega`` prefactors of the group velocity.

The complex susceptibility is::

    chi = 2i g^2N (G_C - i D) / (omega [(G_A - i Dp)(G_C - i D) + Omega^2])

with ``D = Dp - Dc``.  Expanding the bracket gives ``Theta - i Xi`` where
``Xi = Dp G_C + G_A D`` (the ``G_C`` in the first term is what makes the
real/imaginary split agree with the complex form).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

from .errors import DegenerateDenominator, NonPositiveDenominator, StepTooLarge
from .params import DetuningPoint, ModelParams

DEFAULT_STEP = 1e-4
_TINY = 1e-300

DerivativeMode = Literal["analytic", "finite-difference"]


@dataclass(frozen=True)
class Susceptibility:
    chi1: float
    chi2: float
    theta: float
    xi: float
    f_const: float

    @property
    def value(self) -> complex:
        return complex(self.chi1, self.chi2)


@dataclass(frozen=True)
class RefractiveIndex:
    n1: float
    n2: float

    @property
    def value(self) -> complex:
        return complex(self.n1, self.n2)


@dataclass(frozen=True)
class GroupVelocityResult:
    vg_over_c: float
    method: Literal["general", "resonant"]
    derivative_mode: DerivativeMode


def f_const(pt: DetuningPoint, params: ModelParams) -> float:
    return 2.0 * params.coupling_sq / pt.omega(params)


def theta_xi(pt: DetuningPoint, params: ModelParams) -> tuple[float, float]:
    dp, d = pt.delta_p, pt.delta
    theta = params.gamma_a * params.gamma_c - dp * d + params.rabi**2
    xi = dp * params.gamma_c + params.gamma_a * d
    return theta, xi


def chi_complex(pt: DetuningPoint, params: ModelParams) -> complex:
    """Direct complex evaluation of the linear susceptibility."""
    w = pt.omega(params)
    two_photon = complex(params.gamma_c, -pt.delta)
    den = complex(params.gamma_a, -pt.delta_p) * two_photon + params.rabi**2
    if abs(den) < _TINY:
        raise DegenerateDenominator(
            f"chi_complex: (G_A - i Dp)(G_C - i D) + Omega^2 vanishes at {pt}, {params}"
        )
    return 2j * params.coupling_sq * two_photon / (w * den)


def chi_parts(pt: DetuningPoint, params: ModelParams) -> Susceptibility:
    theta, xi = theta_xi(pt, params)
    if math.hypot(theta, xi) < _TINY:
        raise DegenerateDenominator(f"chi_parts: Theta = Xi = 0 at {pt}, {params}")
    F = f_const(pt, params)
    d, gc = pt.delta, params.gamma_c
    den = theta * theta + xi * xi
    chi1 = (d * theta - gc * xi) * F / den
    chi2 = (gc * theta + d * xi) * F / den
    return Susceptibility(chi1, chi2, theta, xi, F)


def refractive_index(chi: complex) -> RefractiveIndex:
    """n = sqrt(1 + chi) with n1 >= 0 and n2 carrying the sign of Im chi.

    n1 = sqrt((|1+chi| + 1 + chi1) / 2) and |n2| = sqrt((|1+chi| - 1 - chi1) / 2).
    Whichever of the two subtracts nearly equal numbers is instead taken from
    n1 |n2| = |chi2| / 2, which the pair satisfies exactly; for chi2 << 1 the
    direct n2 formula would lose about half the significant digits.
    """
    chi = complex(chi)
    re, im = 1.0 + chi.real, chi.imag
    mod = math.hypot(re, im)
    if re >= 0:
        n1 = math.sqrt((mod + re) / 2.0)
        n2 = abs(im) / (2.0 * n1) if n1 > 0 else 0.0
    else:
        n2 = math.sqrt((mod - re) / 2.0)
        n1 = abs(im) / (2.0 * n2)
    if im < 0:
        n2 = -n2
    return RefractiveIndex(n1, n2)


def _chi_derivative(pt: DetuningPoint, params: ModelParams) -> tuple[Susceptibility, complex]:
    """Susceptibility and its d/domega at fixed delta_c (delta_p moves with omega)."""
    s = chi_parts(pt, params)
    theta, xi, F = s.theta, s.xi, s.f_const
    ga, gc = params.gamma_a, params.gamma_c
    dp, d = pt.delta_p, pt.delta
    w = pt.omega(params)

    # d/d(delta_p) of the building blocks; d(delta)/d(delta_p) = 1
    dtheta = -(dp + d)
    dxi = gc + ga
    den = theta * theta + xi * xi
    dden = 2.0 * (theta * dtheta + xi * dxi)

    num1 = d * theta - gc * xi
    num2 = gc * theta + d * xi
    dnum1 = theta + d * dtheta - gc * dxi
    dnum2 = gc * dtheta + xi + d * dxi

    r1, r2 = num1 / den, num2 / den
    dr1 = (dnum1 - r1 * dden) / den
    dr2 = (dnum2 - r2 * dden) / den
    dF = -F / w
    return s, complex(dF * r1 + F * dr1, dF * r2 + F * dr2)


def _check_step(h: float, params: ModelParams) -> None:
    limit = min(params.gamma_a, params.rabi**2 / params.gamma_a) / 10.0
    if not h > 0 or h > limit:
        raise StepTooLarge(
            f"finite-difference step h={h} must lie in (0, {limit}] "
            "(a tenth of the transparency-window width)"
        )


def _shifted(pt: DetuningPoint, h: float) -> DetuningPoint:
    return DetuningPoint(pt.delta_p + h, pt.delta_c)


def dchi1_domega(
    pt: DetuningPoint,
    params: ModelParams,
    mode: DerivativeMode = "analytic",
    h: float = DEFAULT_STEP,
) -> float:
    """d chi1 / d omega at fixed control detuning."""
    if mode == "analytic":
        return _chi_derivative(pt, params)[1].real
    if mode == "finite-difference":
        _check_step(h, params)
        up = chi_parts(_shifted(pt, h), params).chi1
        down = chi_parts(_shifted(pt, -h), params).chi1
        return (up - down) / (2.0 * h)
    raise ValueError(f"unknown derivative mode {mode!r}")


def _finalize(den: float, method: str, mode: str, pt: DetuningPoint) -> GroupVelocityResult:
    if not den > 0:
        raise NonPositiveDenominator(
            f"group_velocity_{method}: n1 + omega dn1/domega = {den} <= 0 at {pt}"
        )
    return GroupVelocityResult(1.0 / den, method, mode)


def group_velocity_general(
    pt: DetuningPoint,
    params: ModelParams,
    derivative_mode: DerivativeMode = "analytic",
    h: float = DEFAULT_STEP,
) -> GroupVelocityResult:
    """v_g / c = 1 / (n1 + omega dn1/domega)."""
    w = pt.omega(params)
    if derivative_mode == "analytic":
        s, dchi = _chi_derivative(pt, params)
        n = refractive_index(s.value)
        dn1 = (dchi / (2.0 * n.value)).real
    elif derivative_mode == "finite-difference":
        _check_step(h, params)
        n = refractive_index(chi_complex(pt, params))
        up = refractive_index(chi_complex(_shifted(pt, h), params)).n1
        down = refractive_index(chi_complex(_shifted(pt, -h), params)).n1
        dn1 = (up - down) / (2.0 * h)
    else:
        raise ValueError(f"unknown derivative mode {derivative_mode!r}")
    return _finalize(n.n1 + w * dn1, "general", derivative_mode, pt)


def group_velocity_resonant(
    delta_c: float,
    params: ModelParams,
    derivative_mode: DerivativeMode = "analytic",
    h: float = DEFAULT_STEP,
) -> GroupVelocityResult:
    """Two-photon-resonant form v_g / c = 1 / (1 + (omega/2) dchi1/domega) at delta_p = delta_c."""
    pt = DetuningPoint.resonant(delta_c)
    w = pt.omega(params)
    dchi1 = dchi1_domega(pt, params, derivative_mode, h)
    return _finalize(1.0 + 0.5 * w * dchi1, "resonant", derivative_mode, pt)
