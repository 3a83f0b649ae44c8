"""Parameter sweeps mirroring the bench characterisation experiments.

Each sweep returns a :class:`Table` that serialises to CSV with a header
row; column names carry their unit suffix.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np

from ..actuator import ActuatorGeometry, StiffnessParams, bend_config, effective_rigidity, tip_deflection_under_load
from ..brake import GRAVITY, BrakeParams, BrakeState, FilterState, braking_force, engagement_step, limited_recursive_average
from ..errors import ValidationError
from ..gripper import GripperConfig, pair_aperture
from ..material import ExtensionLaw, extension_length

KINDS = ("brake_force", "brake_response", "extension", "aperture", "stiffness")
STIFFNESS_VOLTAGES = (0.0, 600.0, 900.0, 1200.0, 1500.0, 1800.0, 2000.0)
STIFFNESS_LOADS_G = (20.0, 40.0, 60.0, 80.0, 100.0)


@dataclass
class Table:
    columns: list
    rows: list

    def column(self, name):
        i = self.columns.index(name)
        return np.array([r[i] for r in self.rows], dtype=float)

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.columns)
        for row in self.rows:
            w.writerow([_fmt(v) for v in row])
        return buf.getvalue()

    def write(self, path):
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(self.to_csv())


def _fmt(v):
    if isinstance(v, bool):
        return int(v)
    if isinstance(v, float):
        return repr(v)
    return v


def _brake(config):
    return BrakeParams(**config.get("brake", {}))


def _law(config):
    d = config.get("extension_law")
    if d is None:
        return ExtensionLaw()
    return ExtensionLaw(tuple(map(tuple, d["anchors"])), d.get("interpolation"))


def _geometry(config):
    return ActuatorGeometry(**config.get("actuator", {}))


def brake_force_sweep(config):
    brake = _brake(config)
    voltages = config.get("voltages", np.linspace(0.0, brake.u_max, 21).tolist())
    return Table(["voltage_V", "force_N"], [[float(u), braking_force(brake, u)] for u in voltages])


def brake_response_sweep(config):
    """Restraining force while a brake is switched on mid-pull.

    The measured trace adds seeded Gaussian sensor noise to the engaged
    force; the filtered trace is what the rate-limited average recovers.
    """
    brake = _brake(config)
    dt = config.get("dt", 1e-3)
    duration = config.get("duration", 0.6)
    t_on = config.get("t_on", 0.05)
    t_off = config.get("t_off")
    voltage = config.get("voltage", brake.u_max)
    noise = config.get("noise", 0.02)
    rng = np.random.default_rng(config.get("seed", 0))
    f = FilterState(0.0, **config.get("filter", {}))
    state = BrakeState()
    rows = []
    n = int(round(duration / dt))
    for i in range(n + 1):
        t = i * dt
        on = t >= t_on and (t_off is None or t < t_off)
        if i > 0:
            state = engagement_step(state, voltage if on else 0.0, dt, brake)
        force = state.engagement * braking_force(brake, voltage)
        measured = force + noise * rng.standard_normal()
        f, filtered = limited_recursive_average(f, measured)
        rows.append([t, voltage if on else 0.0, state.engagement, force, measured, filtered])
    return Table(["time_s", "voltage_V", "engagement", "force_N", "measured_force_N", "filtered_force_N"], rows)


def extension_sweep(config):
    law = _law(config)
    pressures = config.get("pressures", [10.0 * k for k in range(1, 11)])
    return Table(["pressure_kPa", "length_mm"], [[float(p), extension_length(law, p)] for p in pressures])


def aperture_sweep(config):
    geom = _geometry(config)
    cfg = GripperConfig(
        pair_a=(geom, geom), pair_b=(geom, geom), extension_law=_law(config), **config.get("gripper", {})
    )
    pressures = config.get("pressures", [5.0 * k for k in range(1, 7)])
    rows = []
    for p in pressures:
        arc = bend_config(geom, cfg.extension_law, p, "outer")
        theta = abs(arc.theta)
        rows.append([float(p), math.degrees(theta), theta, -arc.tip_position[0], pair_aperture(cfg, "a", p, "outward")])
    return Table(["pressure_kPa", "angle_deg", "angle_rad", "tip_lateral_mm", "aperture_mm"], rows)


def stiffness_sweep(config):
    geom = _geometry(config)
    brake = _brake(config)
    sp = StiffnessParams(**config.get("stiffness", {}))
    voltages = config.get("voltages", STIFFNESS_VOLTAGES)
    loads = config.get("loads_g", STIFFNESS_LOADS_G)
    rows = []
    for u in voltages:
        for g in loads:
            m = g / 1000.0
            moment = m * GRAVITY * geom.rest_length
            ei = effective_rigidity(sp, brake, u, moment)
            slipped = u > 0 and ei == sp.ei_free
            rows.append([float(u), float(g), moment, ei, slipped, tip_deflection_under_load(geom, sp, brake, u, m)])
    return Table(["voltage_V", "load_g", "moment_Nmm", "rigidity_Nmm2", "slipped", "deflection_rad"], rows)


_SWEEPS = {
    "brake_force": brake_force_sweep,
    "brake_response": brake_response_sweep,
    "extension": extension_sweep,
    "aperture": aperture_sweep,
    "stiffness": stiffness_sweep,
}


def characterize(kind: str, config: dict | None = None) -> Table:
    if kind not in _SWEEPS:
        raise ValidationError(f"unknown characterisation {kind!r}; choose from {', '.join(KINDS)}")
    return _SWEEPS[kind](config or {})


def rise_time(times, values, low=0.1, high=0.9):
    """Time between the first crossings of ``low`` and ``high`` (linear interpolation)."""
    times = np.asarray(times, dtype=float)
    values = np.asarray(values, dtype=float)

    def crossing(level):
        i = int(np.argmax(values >= level))
        if values[i] < level:
            raise ValueError(f"trace never reaches {level}")
        if i == 0:
            return times[0]
        t0, t1, v0, v1 = times[i - 1], times[i], values[i - 1], values[i]
        return t0 + (level - v0) * (t1 - t0) / (v1 - v0)

    return crossing(high) - crossing(low)
