"""Fixed-step quasi-static simulation of the gripper under a strategy."""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from .. import controller as ctl
from ..actuator import arc_from_walls, free_extension, wall_lengths
from ..brake import BrakeState, engagement_step
from ..errors import RangeError
from ..gripper import (
    CONTACT_TOLERANCE,
    PAIRS,
    FingerState,
    GripperConfig,
    finger_gap,
    grip_check,
    pad_radius,
)
from .scenario import Scenario


class GripperSim:
    """Mechanical state of the four actuators.

    Pressure follows the command instantly (ideal regulator); brake layers
    follow the engagement lag. When a brake layer is switched on it captures
    the current length of its wall, which it then holds against extension.
    Kinematics are evaluated without contact constraints: a pad that reaches
    an object is flagged as touching and the pressure gained after that
    moment stands in for the contact load.
    """

    def __init__(self, cfg: GripperConfig, objects=(), tolerance=CONTACT_TOLERANCE):
        self.cfg = cfg
        self.objects = tuple(objects)
        self.tolerance = tolerance
        self.geoms = cfg.actuators
        self.pressure = [0.0, 0.0, 0.0, 0.0]
        self.inner = [BrakeState() for _ in range(4)]
        self.outer = [BrakeState() for _ in range(4)]
        self.inner_lock = [g.rest_length for g in self.geoms]
        self.outer_lock = [g.rest_length for g in self.geoms]
        self.arcs = [self._arc(k) for k in range(4)]
        self.open_radius = [pad_radius(cfg, a) for a in self.arcs]
        self.contact_pressure = [[None] * 4 for _ in self.objects]

    def _walls(self, k):
        free = free_extension(self.geoms[k], self.cfg.extension_law, self.pressure[k])
        return wall_lengths(
            free, self.inner[k].engagement, self.outer[k].engagement, self.inner_lock[k], self.outer_lock[k]
        )

    def _arc(self, k):
        inner, outer = self._walls(k)
        return arc_from_walls(inner, outer, self.geoms[k].layer_gap)

    def apply(self, cmd: ctl.Command, dt: float):
        for k in range(4):
            p = cmd.pressure(k)
            if not 0.0 <= p <= self.geoms[k].p_max:
                raise RangeError(f"commanded pressure {p} kPa outside [0, {self.geoms[k].p_max}]")
        for k in range(4):
            inner_len, outer_len = self._walls(k)
            if cmd.inner_voltages[k] > 0 and self.inner[k].voltage == 0:
                self.inner_lock[k] = inner_len
            if cmd.outer_voltages[k] > 0 and self.outer[k].voltage == 0:
                self.outer_lock[k] = outer_len
            g = self.geoms[k]
            self.inner[k] = engagement_step(self.inner[k], cmd.inner_voltages[k], dt, g.inner_brake)
            self.outer[k] = engagement_step(self.outer[k], cmd.outer_voltages[k], dt, g.outer_brake)
            self.pressure[k] = cmd.pressure(k)
        self.arcs = [self._arc(k) for k in range(4)]
        for k in range(4):
            self.open_radius[k] = max(self.open_radius[k], pad_radius(self.cfg, self.arcs[k]))
        for j, obj in enumerate(self.objects):
            for k in range(4):
                gap = finger_gap(self.cfg, k, self.arcs[k], obj)
                touching = gap is not None and gap <= self.tolerance
                if not touching:
                    self.contact_pressure[j][k] = None
                elif self.contact_pressure[j][k] is None:
                    self.contact_pressure[j][k] = self.pressure[k]

    def finger_states(self, j):
        return {
            k: FingerState(self.arcs[k], self.pressure[k], self.open_radius[k], self.contact_pressure[j][k])
            for k in range(4)
        }

    def observe(self) -> ctl.Observation:
        cfg = self.cfg
        grips = tuple(grip_check(cfg, self.finger_states(j), obj, self.tolerance) for j, obj in enumerate(self.objects))
        contacts = [False] * 4
        for j, obj in enumerate(self.objects):
            for k in range(4):
                gap = finger_gap(cfg, k, self.arcs[k], obj)
                if gap is not None and gap <= self.tolerance and obj.radius <= self.open_radius[k]:
                    contacts[k] = True
        apertures = tuple(
            cfg.mount_separation - self.arcs[a].tip_position[0] - self.arcs[b].tip_position[0]
            for a, b in PAIRS.values()
        )
        return ctl.Observation(
            tips=tuple((a.tip_position[0], a.tip_position[1], a.theta) for a in self.arcs),
            apertures=apertures,
            pad_radii=tuple(pad_radius(cfg, a) for a in self.arcs),
            open_radii=tuple(self.open_radius),
            contacts=tuple(contacts),
            inner_engagement=tuple(b.engagement for b in self.inner),
            outer_engagement=tuple(b.engagement for b in self.outer),
            object_radius=tuple(o.radius for o in self.objects),
            object_level=tuple(o.center[2] for o in self.objects),
            object_in_range=tuple(o.radius <= min(self.open_radius) for o in self.objects),
            grips=grips,
        )

    def brake_dict(self):
        return {
            "inner": [[b.voltage, b.engagement] for b in self.inner],
            "outer": [[b.voltage, b.engagement] for b in self.outer],
            "pressure": list(self.pressure),
        }


@dataclass
class SimLog:
    name: str = ""
    records: list = field(default_factory=list)
    events: list = field(default_factory=list)
    terminal: str = ""
    final_grips: list = field(default_factory=list)
    seed: int = 0

    @property
    def phase_events(self):
        return [e["name"] for e in self.events if e["kind"] == "phase"]

    @property
    def final_status(self):
        return self.final_grips[0]["status"] if self.final_grips else None

    def to_dict(self):
        return {
            "name": self.name,
            "seed": self.seed,
            "terminal": self.terminal,
            "events": self.events,
            "final_grips": self.final_grips,
            "records": self.records,
        }

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"), allow_nan=False)


def run_scenario(s: Scenario) -> SimLog:
    """Run a scenario to completion or ``t_max``.

    Each tick: controller step, brake engagement update, kinematics,
    contact and grasp evaluation, log record. Time is ``n * dt`` so runs
    are reproducible bit for bit.
    """
    sim = GripperSim(s.gripper, s.objects)
    state = ctl.initial_state(s.strategy, s.strategy_params)
    log = SimLog(name=s.name, seed=s.seed)
    obs = sim.observe()
    n = 0
    n_max = int(round(s.t_max / s.dt))
    while True:
        t = n * s.dt
        cmd, state = ctl.step(state, obs, t)
        if state.terminal is not None:
            break
        if n >= n_max:
            state = ctl._finish(state, t, ctl.TIMEOUT, "t_max")
            break
        n += 1
        sim.apply(cmd, s.dt)
        obs = sim.observe()
        log.records.append(
            {
                "t": n * s.dt,
                "phase": state.phase,
                "command": cmd.to_dict(),
                "observation": obs.to_dict(),
                "brakes": sim.brake_dict(),
            }
        )
    log.events = [e.to_dict() for e in state.events]
    log.terminal = state.terminal
    log.final_grips = [g.to_dict() for g in obs.grips]
    return log
