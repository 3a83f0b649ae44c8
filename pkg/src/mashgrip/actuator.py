"""Kinematics and bending stiffness of a single MASH actuator.

Each actuator is an extending soft pneumatic actuator with an EA brake
layer on its inner wall (facing the gripper axis) and one on its outer
wall. An engaged brake holds its wall at the length it had when the brake
was switched on, while the opposite wall keeps extending with pressure.
The length difference across the layer gap ``w`` bends the actuator into a
single circular arc:

    theta = (outer_wall - inner_wall) / w,   arc_length = mean wall length

Positive ``theta`` bends toward the gripper axis.

Planar coordinates are ``x`` (lateral, positive toward the gripper axis)
and ``y`` (axial, measured from the base along the unbent actuator).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .brake import GRAVITY, BrakeParams, braking_force
from .errors import DomainError, RangeError
from .material import REST_LENGTH, ExtensionLaw, extension_length

SIDES = ("inner", "outer", "both")
_SERIES_THETA = 1e-4


@dataclass(frozen=True)
class ActuatorGeometry:
    rest_length: float = REST_LENGTH  # mm
    layer_gap: float = 20.0  # mm, lever arm between brake layer and extending wall
    p_max: float = 100.0  # kPa
    inner_brake: BrakeParams = field(default_factory=BrakeParams)
    outer_brake: BrakeParams = field(default_factory=BrakeParams)

    def __post_init__(self):
        problems = self.problems()
        if problems:
            raise DomainError("; ".join(problems))

    def problems(self, prefix=""):
        out = []
        for name in ("rest_length", "layer_gap", "p_max"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                out.append(f"{prefix}{name} must be > 0 (got {value!r})")
        return out


@dataclass(frozen=True)
class ArcConfig:
    """Constant-curvature pose of one actuator."""

    theta: float
    arc_length: float
    curvature: float
    tip_position: tuple[float, float]
    tip_tangent: float

    @property
    def chord(self):
        return math.hypot(*self.tip_position)


@dataclass(frozen=True)
class StiffnessParams:
    ei_free: float = 50.0  # N mm^2
    ei_engaged: float = 500.0  # N mm^2
    slip_lever: float = 60.0  # mm

    def __post_init__(self):
        if not (self.ei_engaged > self.ei_free > 0):
            raise DomainError("need ei_engaged > ei_free > 0")
        if not self.slip_lever > 0:
            raise DomainError("slip_lever must be > 0")


def arc_from_theta(theta: float, arc_length: float) -> ArcConfig:
    """Tip pose of an arc of given bend angle and centreline length.

    Near zero bend the closed forms are replaced by their Taylor series so
    the straight configuration evaluates cleanly.
    """
    t2 = theta * theta
    if abs(theta) < _SERIES_THETA:
        x = arc_length * theta * (0.5 - t2 / 24.0 + t2 * t2 / 720.0)
        y = arc_length * (1.0 - t2 / 6.0 + t2 * t2 / 120.0)
    else:
        x = arc_length * 2.0 * math.sin(0.5 * theta) ** 2 / theta
        y = arc_length * math.sin(theta) / theta
    return ArcConfig(
        theta=theta,
        arc_length=arc_length,
        curvature=theta / arc_length,
        tip_position=(x, y),
        tip_tangent=theta,
    )


def arc_from_walls(inner_length: float, outer_length: float, layer_gap: float) -> ArcConfig:
    theta = (outer_length - inner_length) / layer_gap
    return arc_from_theta(theta, 0.5 * (inner_length + outer_length))


def free_extension(geom: ActuatorGeometry, law: ExtensionLaw, pressure: float) -> float:
    """Length (mm) of the actuator with both brakes released."""
    if not 0.0 <= pressure <= geom.p_max:
        raise RangeError(f"pressure {pressure} kPa outside [0, {geom.p_max}] kPa")
    return extension_length(law, pressure)


def wall_lengths(free_length, inner_engagement, outer_engagement, inner_lock, outer_lock):
    """Lengths of the inner and outer wall.

    A brake at engagement ``e`` pulls its wall a fraction ``e`` of the way
    from the free length back to the length it was locked at.
    """
    inner = free_length - inner_engagement * (free_length - inner_lock)
    outer = free_length - outer_engagement * (free_length - outer_lock)
    return inner, outer


def bend_config(
    geom: ActuatorGeometry,
    law: ExtensionLaw,
    pressure: float,
    braked_side: str,
    engagement: float = 1.0,
    locked_length: float | None = None,
) -> ArcConfig:
    """Pose of the actuator with one brake side engaged.

    Parameters
    ----------
    braked_side : {"inner", "outer", "both"}
        ``"inner"`` bends toward the gripper axis, ``"outer"`` away from it.
        ``"both"`` holds both walls at ``locked_length`` (no bending).
    engagement : float
        Brake engagement in [0, 1]; the bend angle scales linearly with it.
    locked_length : float, optional
        Wall length captured when the brake was switched on. Defaults to
        ``geom.rest_length`` (brake engaged before any pressure).
    """
    if braked_side not in SIDES:
        raise DomainError(f"braked_side must be one of {SIDES}")
    if not 0.0 <= engagement <= 1.0:
        raise DomainError(f"engagement must lie in [0, 1] (got {engagement})")
    free = free_extension(geom, law, pressure)
    lock = geom.rest_length if locked_length is None else locked_length
    e_in = engagement if braked_side in ("inner", "both") else 0.0
    e_out = engagement if braked_side in ("outer", "both") else 0.0
    inner, outer = wall_lengths(free, e_in, e_out, lock, lock)
    return arc_from_walls(inner, outer, geom.layer_gap)


def effective_rigidity(sp: StiffnessParams, brake: BrakeParams, voltage: float, applied_moment: float) -> float:
    """Bending rigidity (N mm^2) under ``applied_moment`` (N mm).

    The braked composite keeps its rigidity until the moment exceeds what
    the brake friction can transmit, at which point the layer slips.
    """
    if voltage <= 0:
        return sp.ei_free
    threshold = sp.slip_lever * braking_force(brake, voltage)
    return sp.ei_engaged if applied_moment <= threshold else sp.ei_free


def slip_threshold(sp: StiffnessParams, brake: BrakeParams, voltage: float) -> float:
    return sp.slip_lever * braking_force(brake, voltage)


def tip_deflection_under_load(
    geom: ActuatorGeometry, sp: StiffnessParams, brake: BrakeParams, voltage: float, tip_mass: float
) -> float:
    """Sag angle (rad) of the horizontal actuator with ``tip_mass`` kg hung at its end.

    Small-deflection cantilever: root moment M = m g L0 and angle
    M L0 / (2 EI). The numbers are only meaningful as an ordering between
    voltages; large sag is outside the formula's validity.
    """
    if tip_mass < 0:
        raise DomainError(f"tip mass must be >= 0 (got {tip_mass})")
    moment = tip_mass * GRAVITY * geom.rest_length  # N mm
    rigidity = effective_rigidity(sp, brake, voltage, moment)
    return moment * geom.rest_length / (2.0 * rigidity)
