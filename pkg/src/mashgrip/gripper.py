"""Four-finger gripper assembly, apertures and grasp evaluation.

Four actuators hang from a circular base in an equidistant array. Fingers
0 and 1 form pair A (opposed along the base x axis), fingers 2 and 3 form
pair B (opposed along the base y axis). The two actuators of a pair share
one pressure line.

3D positions use base coordinates ``(x, y, z)`` in mm with ``z`` pointing
along the unbent actuators, away from the base; a finger's axial arc
coordinate is its ``z``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from scipy.optimize import brentq

from .actuator import ActuatorGeometry, ArcConfig, bend_config, free_extension
from .brake import GRAVITY
from .errors import DomainError
from .material import ExtensionLaw

FINGER_ANGLES = (0.0, math.pi, 0.5 * math.pi, 1.5 * math.pi)
PAIRS = {"a": (0, 1), "b": (2, 3)}
CONTACT_TOLERANCE = 0.5  # mm

GRIPPED = "Gripped"
NO_CONTACT = "NoContact"
OUT_OF_RANGE = "OutOfRange"
SLIPPED = "Slipped"


def _default_pair():
    return (ActuatorGeometry(), ActuatorGeometry())


@dataclass(frozen=True)
class GripperConfig:
    """Gripper assembly.

    ``mount_separation`` is the tip-to-tip distance of an opposed pair at
    rest; ``fingertip_reach`` is how far each fingertip pad protrudes toward
    the axis from the actuator tip, so the resting grip radius is
    ``mount_separation / 2 - fingertip_reach``.
    """

    mount_separation: float = 85.3  # mm
    fingertip_reach: float = 12.65  # mm
    fingertip_mu: float = 0.5
    fingertip_area: float = 870.0  # mm^2
    grip_force_gain: float = 0.05  # N/kPa
    pair_a: tuple = field(default_factory=_default_pair)
    pair_b: tuple = field(default_factory=_default_pair)
    extension_law: ExtensionLaw = field(default_factory=ExtensionLaw)

    def __post_init__(self):
        problems = self.problems()
        if problems:
            raise DomainError("; ".join(problems))

    def problems(self, prefix=""):
        out = []
        if not self.mount_separation > 0:
            out.append(f"{prefix}mount_separation must be > 0")
        if not 0 <= self.fingertip_reach < self.mount_separation / 2:
            out.append(f"{prefix}fingertip_reach must lie in [0, mount_separation / 2)")
        if not self.fingertip_mu > 0:
            out.append(f"{prefix}fingertip_mu must be > 0")
        if not self.fingertip_area > 0:
            out.append(f"{prefix}fingertip_area must be > 0")
        if not self.grip_force_gain >= 0:
            out.append(f"{prefix}grip_force_gain must be >= 0")
        for name in ("pair_a", "pair_b"):
            if len(getattr(self, name)) != 2:
                out.append(f"{prefix}{name} must hold exactly two actuators")
        return out

    @property
    def actuators(self):
        return tuple(self.pair_a) + tuple(self.pair_b)

    @property
    def rest_grip_radius(self):
        return 0.5 * self.mount_separation - self.fingertip_reach


@dataclass(frozen=True)
class ObjectModel:
    shape: str
    radius: float  # outer radius, mm
    mass: float = 0.0  # kg
    center: tuple = (0.0, 0.0, 104.0)
    surface_mu: float = 0.5
    inner_radius: float | None = None
    height: float | None = None

    def __post_init__(self):
        problems = self.problems()
        if problems:
            raise DomainError("; ".join(problems))

    def problems(self, prefix=""):
        out = []
        if self.shape not in ("sphere", "annulus"):
            out.append(f"{prefix}shape must be 'sphere' or 'annulus' (got {self.shape!r})")
        if not self.radius > 0:
            out.append(f"{prefix}radius must be > 0")
        if not self.mass >= 0:
            out.append(f"{prefix}mass must be >= 0")
        if not self.surface_mu > 0:
            out.append(f"{prefix}surface_mu must be > 0")
        if len(self.center) != 3:
            out.append(f"{prefix}center must have three coordinates")
        if self.shape == "annulus":
            if self.inner_radius is None or not 0 < self.inner_radius < self.radius:
                out.append(f"{prefix}annulus needs 0 < inner_radius < radius")
            if self.height is None or not self.height > 0:
                out.append(f"{prefix}annulus needs height > 0")
        return out

    @property
    def weight(self):
        return self.mass * GRAVITY

    def section_radius(self, z):
        """Radius of the horizontal cross-section at axial position ``z``, or None."""
        dz = z - self.center[2]
        if self.shape == "sphere":
            if abs(dz) >= self.radius:
                return None
            return math.sqrt(self.radius**2 - dz**2)
        if abs(dz) > 0.5 * self.height:
            return None
        return self.radius

    def surface_along(self, angle, z):
        """Outermost radial distance of the object along the ray at ``angle``, or None."""
        rho = self.section_radius(z)
        if rho is None:
            return None
        ux, uy = math.cos(angle), math.sin(angle)
        along = self.center[0] * ux + self.center[1] * uy
        across = -self.center[0] * uy + self.center[1] * ux
        if abs(across) > rho:
            return None
        return along + math.sqrt(rho**2 - across**2)


@dataclass(frozen=True)
class FingerState:
    """Snapshot of one finger for grasp evaluation.

    ``open_radius`` is the widest pad radius reached before the current
    closing stroke; an object only counts as inside the gripping range when
    it fits within it. ``contact_pressure`` is the line pressure at which
    the pad first touched the object, if known.
    """

    arc: ArcConfig
    pressure: float
    open_radius: float
    contact_pressure: float | None = None


@dataclass(frozen=True)
class GripOutcome:
    status: str
    contacts: tuple = ()
    normal_force: tuple = ()
    payload_margin: float = 0.0
    fingers: tuple = ()

    def to_dict(self):
        margin = self.payload_margin if math.isfinite(self.payload_margin) else None
        return {
            "status": self.status,
            "contacts": [list(c) for c in self.contacts],
            "normal_force": list(self.normal_force),
            "payload_margin": margin,
            "fingers": list(self.fingers),
        }


def _pair_geoms(cfg, pair):
    if pair not in PAIRS:
        raise DomainError(f"pair must be 'a' or 'b' (got {pair!r})")
    return cfg.pair_a if pair == "a" else cfg.pair_b


def pad_radius(cfg: GripperConfig, arc: ArcConfig) -> float:
    """Radial distance of a fingertip pad from the gripper axis."""
    return 0.5 * cfg.mount_separation - arc.tip_position[0] - cfg.fingertip_reach


def pair_aperture(cfg: GripperConfig, pair: str, pressure: float, mode: str = "neutral", engagement: float = 1.0) -> float:
    """Tip-to-tip distance (mm) of an opposed pair.

    ``mode`` is ``"neutral"`` (brakes off, pure extension), ``"outward"``
    (outer brakes engaged) or ``"inward"`` (inner brakes engaged).
    """
    geoms = _pair_geoms(cfg, pair)
    if mode == "neutral":
        for g in geoms:
            free_extension(g, cfg.extension_law, pressure)
        return cfg.mount_separation
    if mode not in ("outward", "inward"):
        raise DomainError(f"unknown aperture mode {mode!r}")
    side = "outer" if mode == "outward" else "inner"
    inward = sum(bend_config(g, cfg.extension_law, pressure, side, engagement).tip_position[0] for g in geoms)
    return max(0.0, cfg.mount_separation - inward)


def grip_radius(cfg: GripperConfig, mode: str = "neutral", pressure: float = 0.0, engagement: float = 1.0, pair: str = "a") -> float:
    """Largest object radius that fits inside the open gripper.

    Closing always starts from the open configuration, so an inward mode
    does not shrink the range; only outward pre-expansion widens it.
    """
    if mode == "outward":
        return 0.5 * pair_aperture(cfg, pair, pressure, "outward", engagement) - cfg.fingertip_reach
    pair_aperture(cfg, pair, pressure, "neutral")
    return cfg.rest_grip_radius


def finger_gap(cfg: GripperConfig, finger: int, arc: ArcConfig, obj: ObjectModel):
    """Clearance (mm) between finger pad and object surface; None if the pad misses it axially."""
    surface = obj.surface_along(FINGER_ANGLES[finger], arc.tip_position[1])
    if surface is None:
        return None
    return pad_radius(cfg, arc) - surface


def in_range(cfg: GripperConfig, finger: int, state: FingerState, obj: ObjectModel) -> bool:
    surface = obj.surface_along(FINGER_ANGLES[finger], state.arc.tip_position[1])
    return surface is not None and surface <= state.open_radius


def grip_check(cfg: GripperConfig, fingers, obj: ObjectModel, tolerance: float = CONTACT_TOLERANCE) -> GripOutcome:
    """Evaluate whether ``obj`` is held.

    ``fingers`` maps finger index to :class:`FingerState` (a sequence of
    four is accepted too; ``None`` entries are skipped). Each touching pad
    pushes with ``grip_force_gain`` times the pressure gained since
    contact, and friction must carry the object's weight.
    """
    if not isinstance(fingers, dict):
        fingers = {k: f for k, f in enumerate(fingers) if f is not None}
    if all(f.pressure == 0 for f in fingers.values()):
        return GripOutcome(NO_CONTACT)

    reachable = [k for k, f in fingers.items() if in_range(cfg, k, f, obj)]
    if not reachable:
        return GripOutcome(OUT_OF_RANGE)

    touching = []
    for k in reachable:
        gap = finger_gap(cfg, k, fingers[k].arc, obj)
        if gap is not None and gap <= tolerance:
            touching.append(k)
    opposed = any(a in touching and b in touching for a, b in PAIRS.values())
    if not opposed:
        return GripOutcome(NO_CONTACT, fingers=tuple(touching))

    contacts, forces = [], []
    for k in touching:
        f = fingers[k]
        z = f.arc.tip_position[1]
        r = obj.surface_along(FINGER_ANGLES[k], z)
        contacts.append((r * math.cos(FINGER_ANGLES[k]), r * math.sin(FINGER_ANGLES[k]), z))
        p_contact = f.pressure if f.contact_pressure is None else f.contact_pressure
        forces.append(cfg.grip_force_gain * max(0.0, f.pressure - p_contact))
    mu = min(cfg.fingertip_mu, obj.surface_mu)
    holdable = sum(forces) * mu / GRAVITY  # kg
    margin = math.inf if obj.mass == 0 else holdable / obj.mass
    status = GRIPPED if margin >= 1.0 else SLIPPED
    return GripOutcome(status, tuple(contacts), tuple(forces), margin, tuple(touching))


def closing_fingers(cfg: GripperConfig, obj: ObjectModel, pressure: float, fingers=(0, 1, 2, 3), tolerance: float = CONTACT_TOLERANCE):
    """Finger states for an inward close from rest at ``pressure`` kPa.

    The pressure at first contact is found by root-finding on the pad
    clearance, which is monotone while the bend stays below the lateral
    reach maximum.
    """
    law = cfg.extension_law
    geoms = cfg.actuators
    out = {}
    for k in fingers:
        g = geoms[k]

        def arc_at(p, g=g):
            return bend_config(g, law, p, "inner", 1.0)

        arc = arc_at(pressure)
        contact = None
        gap_now = finger_gap(cfg, k, arc, obj)
        if gap_now is not None and gap_now <= tolerance:
            gap0 = finger_gap(cfg, k, arc_at(0.0), obj)
            if gap0 is not None and gap0 <= tolerance:
                contact = 0.0
            else:
                def f(p, k=k):
                    gap = finger_gap(cfg, k, arc_at(p), obj)
                    return (gap if gap is not None else 1e3) - tolerance

                contact = brentq(f, 0.0, pressure, xtol=1e-9)
        out[k] = FingerState(arc, pressure, cfg.rest_grip_radius, contact)
    return out
