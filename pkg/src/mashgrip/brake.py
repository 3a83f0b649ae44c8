"""Electrostatic-adhesion (EA) brake model.

The brake is a parallel-plate electroadhesive clutch: a voltage across a thin
polyimide dielectric clamps an electrode to a grounded plate and the clamping
pressure is turned into a friction force,

    F = mu * eps_r * eps_0 * A * U**2 / (2 * d**2)

Engagement after a voltage step is modelled as a first-order lag, and force
traces recorded on the bench are smoothed with a rate-limited recursive
average.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .errors import DomainError, NoSolutionError

EPS_0 = 8.8541878128e-12  # F/m
GRAVITY = 9.81  # m/s^2

PI_FILM_PERMITTIVITY = 3.4
ELECTRODE_AREA = 3.175e-4  # m^2 (3.175 cm^2)
PI_FILM_FRICTION = 0.2
MAX_VOLTAGE = 2000.0  # V
LIFT_MASS = 0.2  # kg held by one brake side at MAX_VOLTAGE


def _gap_for(mu, eps_r, eps_0, area, voltage, force):
    return math.sqrt(mu * eps_r * eps_0 * area * voltage**2 / (2.0 * force))


# Dielectric thickness chosen so a single brake side holds LIFT_MASS at 2 kV.
DEFAULT_GAP = _gap_for(
    PI_FILM_FRICTION, PI_FILM_PERMITTIVITY, EPS_0, ELECTRODE_AREA, MAX_VOLTAGE, LIFT_MASS * GRAVITY
)


@dataclass(frozen=True)
class BrakeParams:
    """Constants of one EA brake layer (SI units)."""

    eps_r: float = PI_FILM_PERMITTIVITY
    eps_0: float = EPS_0
    area: float = ELECTRODE_AREA
    gap: float = DEFAULT_GAP
    mu: float = PI_FILM_FRICTION
    u_max: float = MAX_VOLTAGE
    tau: float = 0.08

    def __post_init__(self):
        problems = self.problems()
        if problems:
            raise DomainError("; ".join(problems))

    def problems(self, prefix=""):
        out = []
        for name in ("eps_r", "eps_0", "area", "gap", "tau", "u_max"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                out.append(f"{prefix}{name} must be > 0 (got {value!r})")
        if not (0 < self.mu <= 1.5):
            out.append(f"{prefix}mu must lie in (0, 1.5] (got {self.mu!r})")
        return out


@dataclass(frozen=True)
class BrakeState:
    voltage: float = 0.0
    engagement: float = 0.0

    def __post_init__(self):
        if self.voltage < 0:
            raise DomainError(f"voltage must be >= 0 (got {self.voltage})")
        if not 0.0 <= self.engagement <= 1.0:
            raise DomainError(f"engagement must lie in [0, 1] (got {self.engagement})")


@dataclass(frozen=True)
class FilterState:
    value: float = 0.0
    alpha: float = 0.2
    max_step: float = 0.05  # N per sample

    def __post_init__(self):
        if not 0.0 < self.alpha <= 1.0:
            raise DomainError(f"alpha must lie in (0, 1] (got {self.alpha})")
        if not self.max_step > 0:
            raise DomainError(f"max_step must be > 0 (got {self.max_step})")


def _check_voltage(params, voltage):
    if not (0.0 <= voltage <= params.u_max):
        raise DomainError(f"voltage {voltage} V outside [0, {params.u_max}] V")


def braking_force(params: BrakeParams, voltage: float) -> float:
    """Maximum static braking force in newtons at ``voltage`` volts.

    Raises
    ------
    DomainError
        If the voltage is negative or above ``params.u_max``; such a value
        is an unsafe drive command rather than something to clip.
    """
    _check_voltage(params, voltage)
    return (
        params.mu * params.eps_r * params.eps_0 * params.area * voltage**2
        / (2.0 * params.gap**2)
    )


def required_gap_for_force(params: BrakeParams, voltage: float, target_force: float) -> float:
    """Dielectric thickness (m) at which ``braking_force`` equals ``target_force``.

    ``params.gap`` is ignored.
    """
    if not target_force > 0:
        raise NoSolutionError(f"target force must be > 0 (got {target_force})")
    if not voltage > 0:
        raise NoSolutionError("zero voltage gives zero force for every gap")
    return _gap_for(params.mu, params.eps_r, params.eps_0, params.area, voltage, target_force)


def engagement_step(state: BrakeState, commanded_voltage: float, dt: float, params: BrakeParams) -> BrakeState:
    """Advance the engagement lag by ``dt`` seconds.

    The exact solution of the first-order lag is used, so the result does
    not depend on how a time span is split into steps.
    """
    if dt < 0:
        raise DomainError(f"dt must be >= 0 (got {dt})")
    _check_voltage(params, commanded_voltage)
    if dt == 0:
        return state
    target = 1.0 if commanded_voltage > 0 else 0.0
    decay = math.exp(-dt / params.tau)
    engagement = target + (state.engagement - target) * decay
    return BrakeState(voltage=float(commanded_voltage), engagement=min(1.0, max(0.0, engagement)))


def available_force(state: BrakeState, params: BrakeParams) -> float:
    return state.engagement * braking_force(params, state.voltage)


def limited_recursive_average(f: FilterState, sample: float) -> tuple[FilterState, float]:
    """One step of the rate-limited exponential average.

    >>> limited_recursive_average(FilterState(0.0, 0.5, 1.0), 10.0)[1]
    1.0
    """
    delta = f.alpha * (sample - f.value)
    delta = min(f.max_step, max(-f.max_step, delta))
    filtered = f.value + delta
    return replace(f, value=filtered), filtered


def filter_trace(samples, alpha=0.2, max_step=0.05, initial=0.0):
    """Run ``limited_recursive_average`` over a sequence, returning a list."""
    f = FilterState(initial, alpha, max_step)
    out = []
    for s in samples:
        f, y = limited_recursive_average(f, float(s))
        out.append(y)
    return out
