"""Noise-averaged equations of motion for the collective excitations.

In the frame co-rotating with the two-photon detuning ``D = Dp - Dc``::

    dA/dt  = -(G_A - i Dp) A - i gsqrtN <a> - i Omega(t) C~
    dC~/dt = -(G_C - i D) C~ - i Omega(t) A

The Langevin forces average to zero and are dropped.  The probe amplitude
``<a>`` is a constant c-number (undepleted probe).
"""
from __future__ import annotations

import bisect
import cmath
import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence

from .errors import DegenerateDenominator, InvalidParameter, NonPositiveDenominator, StepTooLarge, UnstableStep
from .params import DetuningPoint, ModelParams
from .susceptibility import group_velocity_resonant

BLOWUP = 1e12
DEFAULT_SAMPLES = 1000


@dataclass(frozen=True)
class MeanFieldState:
    exc_a: complex
    exc_c_tilde: complex
    time: float = 0.0


@dataclass(frozen=True)
class DriveSpec:
    """Constant probe amplitude plus a piecewise-linear control schedule.

    ``rabi_schedule`` is a sequence of ``(t_k, Omega_k)`` knots.  A single knot
    means a constant Rabi frequency; outside the knot range the end values are
    held.
    """

    probe_amp: complex
    rabi_schedule: tuple[tuple[float, float], ...]

    def __post_init__(self):
        knots = tuple((float(t), float(o)) for t, o in self.rabi_schedule)
        if not knots:
            raise InvalidParameter("rabi_schedule needs at least one knot")
        times = [t for t, _ in knots]
        if any(b <= a for a, b in zip(times, times[1:])):
            raise InvalidParameter("rabi_schedule times must be strictly increasing")
        if any(o < 0 or not math.isfinite(o) for _, o in knots):
            raise InvalidParameter("rabi_schedule values must be finite and >= 0")
        object.__setattr__(self, "rabi_schedule", knots)
        object.__setattr__(self, "probe_amp", complex(self.probe_amp))
        object.__setattr__(self, "_times", times)

    @classmethod
    def constant(cls, probe_amp: complex, rabi: float) -> "DriveSpec":
        return cls(probe_amp, ((0.0, rabi),))

    @classmethod
    def linear_ramp(cls, probe_amp: complex, start: float, stop: float, duration: float, t0: float = 0.0):
        return cls(probe_amp, ((t0, start), (t0 + duration, stop)))

    @property
    def is_constant(self) -> bool:
        return len({o for _, o in self.rabi_schedule}) == 1

    @property
    def t_start(self) -> float:
        return self.rabi_schedule[0][0]

    @property
    def t_stop(self) -> float:
        return self.rabi_schedule[-1][0]

    @property
    def rabi_max(self) -> float:
        return max(o for _, o in self.rabi_schedule)

    def rabi(self, t: float) -> float:
        knots = self.rabi_schedule
        i = bisect.bisect_right(self._times, t)
        if i == 0:
            return knots[0][1]
        if i == len(knots):
            return knots[-1][1]
        (t0, o0), (t1, o1) = knots[i - 1], knots[i]
        return o0 + (o1 - o0) * (t - t0) / (t1 - t0)


@dataclass(frozen=True)
class SteadyStateSolution:
    exc_a_ss: complex
    exc_c_tilde_ss: complex
    residual: float

    def as_state(self, time: float = 0.0) -> MeanFieldState:
        return MeanFieldState(self.exc_a_ss, self.exc_c_tilde_ss, time)


def rhs(
    state: MeanFieldState, pt: DetuningPoint, params: ModelParams, drive: DriveSpec, t: float
) -> tuple[complex, complex]:
    a, c = state.exc_a, state.exc_c_tilde
    om = drive.rabi(t)
    da = -complex(params.gamma_a, -pt.delta_p) * a - 1j * params.g_root_n * drive.probe_amp - 1j * om * c
    dc = -complex(params.gamma_c, -pt.delta) * c - 1j * om * a
    return da, dc


def steady_state_solve(pt: DetuningPoint, params: ModelParams, probe_amp: complex) -> SteadyStateSolution:
    """Closed-form fixed point of the rotating-frame equations at constant Omega = params.rabi."""
    probe_amp = complex(probe_amp)
    om = params.rabi
    two_photon = complex(params.gamma_c, -pt.delta)
    one_photon = complex(params.gamma_a, -pt.delta_p)
    den = one_photon * two_photon + om * om
    if abs(den) < 1e-300:
        raise DegenerateDenominator(f"steady_state_solve: singular system at {pt}, {params}")
    a = -1j * params.g_root_n * two_photon * probe_amp / den
    if two_photon != 0:
        c = -1j * om * a / two_photon
    else:
        c = (-one_photon * a - 1j * params.g_root_n * probe_amp) / (1j * om)
    da, dc = rhs(MeanFieldState(a, c), pt, params, DriveSpec.constant(probe_amp, om), 0.0)
    return SteadyStateSolution(a, c, math.hypot(abs(da), abs(dc)))


Deriv = Callable[[float, complex, complex], tuple[complex, complex]]


def _rk4(
    f: Deriv, a: complex, c: complex, t0: float, t_end: float, dt: float, stride: int | None
) -> list[tuple[float, complex, complex]]:
    if not t_end > t0:
        raise InvalidParameter(f"t_end={t_end} must exceed the initial time {t0}")
    n = max(1, math.ceil((t_end - t0) / dt - 1e-9))
    h = (t_end - t0) / n
    if stride is None:
        stride = max(1, n // DEFAULT_SAMPLES)
    out = [(t0, a, c)]
    for i in range(1, n + 1):
        t = t0 + (i - 1) * h
        k1a, k1c = f(t, a, c)
        k2a, k2c = f(t + h / 2, a + h / 2 * k1a, c + h / 2 * k1c)
        k3a, k3c = f(t + h / 2, a + h / 2 * k2a, c + h / 2 * k2c)
        k4a, k4c = f(t + h, a + h * k3a, c + h * k3c)
        a = a + h / 6 * (k1a + 2 * k2a + 2 * k3a + k4a)
        c = c + h / 6 * (k1c + 2 * k2c + 2 * k3c + k4c)
        if not (abs(a) <= BLOWUP and abs(c) <= BLOWUP):
            raise UnstableStep(f"integration blew up at t={t0 + i * h} (|A|={abs(a)}, |C|={abs(c)})")
        if i % stride == 0 or i == n:
            out.append((t0 + i * h, a, c))
    return out


def max_step(pt: DetuningPoint, params: ModelParams, drive: DriveSpec) -> float:
    """Largest dt accepted by :func:`integrate`."""
    return 0.1 / max(params.gamma_a, drive.rabi_max, abs(pt.delta_p), abs(pt.delta))


def _check_dt(dt: float, pt: DetuningPoint, params: ModelParams, drive: DriveSpec) -> None:
    limit = max_step(pt, params, drive)
    if not 0 < dt <= limit:
        raise StepTooLarge(f"dt={dt} must lie in (0, {limit}]")


def _rotating_deriv(pt: DetuningPoint, params: ModelParams, drive: DriveSpec) -> Deriv:
    ka = -complex(params.gamma_a, -pt.delta_p)
    kc = -complex(params.gamma_c, -pt.delta)
    force = -1j * params.g_root_n * drive.probe_amp

    if drive.is_constant:
        om = drive.rabi_schedule[0][1]

        def f(t, a, c):
            return ka * a + force - 1j * om * c, kc * c - 1j * om * a

    else:
        rabi = drive.rabi

        def f(t, a, c):
            om = rabi(t)
            return ka * a + force - 1j * om * c, kc * c - 1j * om * a

    return f


def integrate(
    initial: MeanFieldState,
    pt: DetuningPoint,
    params: ModelParams,
    drive: DriveSpec,
    t_end: float,
    dt: float,
    stride: int | None = None,
) -> list[MeanFieldState]:
    """Fixed-step classical RK4 in the rotating frame.

    ``dt`` is shrunk so that an integer number of steps lands on ``t_end``.
    The trajectory holds the initial state, every ``stride``-th step and the
    final state; by default about a thousand samples are kept.
    """
    _check_dt(dt, pt, params, drive)
    f = _rotating_deriv(pt, params, drive)
    traj = _rk4(f, complex(initial.exc_a), complex(initial.exc_c_tilde), initial.time, t_end, dt, stride)
    return [MeanFieldState(a, c, t) for t, a, c in traj]


def integrate_lab_frame(
    initial: MeanFieldState,
    pt: DetuningPoint,
    params: ModelParams,
    drive: DriveSpec,
    t_end: float,
    dt: float,
    stride: int | None = None,
) -> list[tuple[float, complex, complex]]:
    """RK4 on the untransformed equations (explicit exp(+-i D t) factors).

    ``initial.exc_c_tilde`` is taken as the untransformed C at ``initial.time``.
    Returns ``(t, A, C)`` tuples; see :func:`lab_to_rotating`.
    """
    _check_dt(dt, pt, params, drive)
    ka = -complex(params.gamma_a, -pt.delta_p)
    gc = params.gamma_c
    d = pt.delta
    force = -1j * params.g_root_n * drive.probe_amp
    rabi = drive.rabi

    def f(t, a, c):
        om = rabi(t)
        phase = cmath.exp(1j * d * t)
        return ka * a + force - 1j * phase * om * c, -gc * c - 1j * om * a / phase

    return _rk4(f, complex(initial.exc_a), complex(initial.exc_c_tilde), initial.time, t_end, dt, stride)


def lab_to_rotating(t: float, a: complex, c: complex, delta: float) -> MeanFieldState:
    """Invert C = C~ exp(-i D t)."""
    return MeanFieldState(a, c * cmath.exp(1j * delta * t), t)


class StorageSample(NamedTuple):
    t: float
    rabi: float
    vg_over_c: float
    abs_a: float
    abs_c_tilde: float


def storage_ramp(
    params: ModelParams,
    delta_c: float,
    ramp: DriveSpec,
    n_samples: int = 101,
    dt: float | None = None,
) -> list[StorageSample]:
    """Follow the excitations while the control field is ramped on two-photon resonance.

    The system starts in the steady state for the initial Rabi frequency.  At
    each sample ``vg_over_c`` is the resonant group velocity for the
    instantaneous Omega(t); it is NaN where that velocity is undefined (the
    dispersion turns anomalous once Omega drops below about G_C).
    ``params.rabi`` is ignored in favour of the ramp.
    """
    if n_samples < 2:
        raise InvalidParameter("n_samples must be >= 2")
    if len(ramp.rabi_schedule) < 2:
        raise InvalidParameter("ramp needs a start and an end knot")
    pt = DetuningPoint.resonant(delta_c)
    t0, t1 = ramp.t_start, ramp.t_stop
    limit = max_step(pt, params, ramp)
    dt = limit if dt is None else dt
    _check_dt(dt, pt, params, ramp)
    per_sample = math.ceil((t1 - t0) / (n_samples - 1) / dt)
    step = (t1 - t0) / ((n_samples - 1) * per_sample)

    ss = steady_state_solve(pt, params.with_(rabi=ramp.rabi(t0)), ramp.probe_amp)
    traj = integrate(ss.as_state(t0), pt, params, ramp, t1, step, stride=per_sample)

    samples = []
    for s in traj:
        om = ramp.rabi(s.time)
        try:
            vg = group_velocity_resonant(delta_c, params.with_(rabi=om)).vg_over_c
        except (NonPositiveDenominator, DegenerateDenominator):
            vg = math.nan
        samples.append(StorageSample(s.time, om, vg, abs(s.exc_a), abs(s.exc_c_tilde)))
    return samples


def is_stored(samples: Sequence[StorageSample], ratio: float = 1e-3) -> bool:
    """Terminal |A| <= ratio * |C~|: the excitation ended up in the C mode."""
    last = samples[-1]
    return last.abs_a <= ratio * last.abs_c_tilde
