"""Bounded least-squares calibration of model parameters against measured data.

A :class:`CalibrationProblem` names a model, a dataset of rows and bounds
for the free parameters. Supported models and their row layout:

==================  ==========================================  ===========================
model               rows                                        parameters
==================  ==========================================  ===========================
extension_law       (pressure kPa, length mm)                   anchors (interpolating)
layer_gap           (pressure kPa, pair aperture mm)            layer_gap
stiffness           (voltage V, tip mass kg, deflection rad)    ei_free, ei_engaged
brake_tau           (time s, engagement)                        tau
filter              (raw sample N, filtered value N)            alpha, max_step
grip_force_gain     (residual pressure kPa, normal force N)     grip_force_gain
==================  ==========================================  ===========================

``layer_gap`` uses the outward aperture of pair A; ``brake_tau`` assumes a
step from zero engagement at ``t = 0``; ``filter`` replays the rows in
order starting from ``config["initial"]`` (default 0).
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy.optimize import least_squares

from ..actuator import ActuatorGeometry, StiffnessParams, tip_deflection_under_load
from ..brake import BrakeParams, BrakeState, engagement_step, filter_trace
from ..errors import NumericError, ValidationError
from ..gripper import GripperConfig, pair_aperture
from ..material import ExtensionLaw, extension_length

MODELS = {
    "extension_law": (),
    "layer_gap": ("layer_gap",),
    "stiffness": ("ei_free", "ei_engaged"),
    "brake_tau": ("tau",),
    "filter": ("alpha", "max_step"),
    "grip_force_gain": ("grip_force_gain",),
}
_COLUMNS = {"extension_law": 2, "layer_gap": 2, "stiffness": 3, "brake_tau": 2, "filter": 2, "grip_force_gain": 2}

DEFAULT_BOUNDS = {
    "layer_gap": (5.0, 100.0),
    "ei_free": (1.0, 1e5),
    "ei_engaged": (1.0, 1e6),
    "tau": (1e-3, 1.0),
    "alpha": (1e-3, 1.0),
    "max_step": (1e-4, 10.0),
    "grip_force_gain": (0.0, 10.0),
}
DEFAULT_INITIAL = {
    "layer_gap": 20.0,
    "ei_free": 50.0,
    "ei_engaged": 500.0,
    "tau": 0.08,
    "alpha": 0.2,
    "max_step": 0.05,
    "grip_force_gain": 0.05,
}


@dataclass(frozen=True)
class CalibrationProblem:
    model: str
    data: tuple
    bounds: dict = field(default_factory=dict)
    initial: dict = field(default_factory=dict)
    tolerance: float = 1e-12
    config: dict = field(default_factory=dict)

    def problems(self):
        out = []
        if self.model not in MODELS:
            return [f"model: must be one of {sorted(MODELS)} (got {self.model!r})"]
        names = MODELS[self.model]
        ncol = _COLUMNS[self.model]
        if len(self.data) < max(1, len(names)):
            out.append(f"data: need at least {max(1, len(names))} rows for {len(names)} parameters")
        for i, row in enumerate(self.data):
            if len(row) != ncol:
                out.append(f"data[{i}]: expected {ncol} columns, got {len(row)}")
        for name in sorted(set(self.bounds) | set(self.initial)):
            if name not in names:
                out.append(f"parameter {name!r} does not belong to model {self.model!r}")
        for name in names:
            lo, hi = self.bounds.get(name, DEFAULT_BOUNDS[name])
            if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
                out.append(f"bounds.{name}: need finite lo < hi")
            x0 = self.initial.get(name, DEFAULT_INITIAL[name])
            if not lo <= x0 <= hi:
                out.append(f"initial.{name}: {x0} outside bounds [{lo}, {hi}]")
        if not self.tolerance > 0:
            out.append("tolerance: must be > 0")
        return out


@dataclass(frozen=True)
class CalibrationResult:
    parameters: dict
    sse: float
    iterations: int
    initial_sse: float

    def to_dict(self):
        return {
            "parameters": self.parameters,
            "sse": self.sse,
            "iterations": self.iterations,
            "initial_sse": self.initial_sse,
        }


# forward models: (params dict, data array, config) -> predictions -----------

def _gripper_for(config, layer_gap=None):
    geom_kw = dict(config.get("actuator", {}))
    if layer_gap is not None:
        geom_kw["layer_gap"] = layer_gap
    geom = ActuatorGeometry(**geom_kw)
    law = ExtensionLaw(**config["extension_law"]) if "extension_law" in config else ExtensionLaw()
    return GripperConfig(pair_a=(geom, geom), pair_b=(geom, geom), extension_law=law, **config.get("gripper", {}))


def predict_layer_gap(p, data, config):
    cfg = _gripper_for(config, p["layer_gap"])
    return np.array([pair_aperture(cfg, "a", row[0], "outward") for row in data])


def predict_stiffness(p, data, config):
    geom = ActuatorGeometry(**config.get("actuator", {}))
    sp = StiffnessParams(p["ei_free"], p["ei_engaged"], config.get("slip_lever", StiffnessParams().slip_lever))
    brake = BrakeParams(**config.get("brake", {}))
    return np.array([tip_deflection_under_load(geom, sp, brake, row[0], row[1]) for row in data])


def predict_brake_tau(p, data, config):
    brake = BrakeParams(**dict(config.get("brake", {}), tau=p["tau"]))
    on = config.get("voltage", brake.u_max)
    return np.array([engagement_step(BrakeState(), on, max(0.0, row[0]), brake).engagement for row in data])


def predict_filter(p, data, config):
    return np.array(filter_trace([row[0] for row in data], p["alpha"], p["max_step"], config.get("initial", 0.0)))


def predict_grip_force_gain(p, data, config):
    return np.array([p["grip_force_gain"] * row[0] for row in data])


_PREDICT = {
    "layer_gap": predict_layer_gap,
    "stiffness": predict_stiffness,
    "brake_tau": predict_brake_tau,
    "filter": predict_filter,
    "grip_force_gain": predict_grip_force_gain,
}


def predict(model, params, data, config=None):
    """Model predictions for each data row."""
    return _PREDICT[model](params, np.asarray(data, dtype=float), config or {})


def _fit_extension_law(problem):
    rows = sorted((float(p), float(l)) for p, l in problem.data)
    law = ExtensionLaw(tuple(rows), problem.config.get("interpolation"))
    data = np.asarray(problem.data, dtype=float)
    r = extension_length(law, data[:, 0]) - data[:, 1]
    params = {"anchors": [list(a) for a in law.anchors], "interpolation": law.method}
    return CalibrationResult(params, float(r @ r), 0, float(r @ r))


def calibrate(problem: CalibrationProblem) -> CalibrationResult:
    """Minimise the sum of squared residuals over bounded parameters.

    Raises
    ------
    ValidationError
        If the problem is malformed.
    NumericError
        If a residual is not finite; the message names the data row.
    """
    problems = problem.problems()
    if problems:
        raise ValidationError(problems)
    if problem.model == "extension_law":
        return _fit_extension_law(problem)

    names = MODELS[problem.model]
    data = np.asarray(problem.data, dtype=float)
    if not np.all(np.isfinite(data)):
        bad = int(np.argwhere(~np.all(np.isfinite(data), axis=1))[0, 0])
        raise NumericError(f"data row {bad} is not finite: {problem.data[bad]}")
    target = data[:, -1]
    lo = np.array([problem.bounds.get(n, DEFAULT_BOUNDS[n])[0] for n in names])
    hi = np.array([problem.bounds.get(n, DEFAULT_BOUNDS[n])[1] for n in names])
    x0 = np.array([problem.initial.get(n, DEFAULT_INITIAL[n]) for n in names], dtype=float)

    def residuals(x):
        r = predict(problem.model, dict(zip(names, x)), data, problem.config) - target
        bad = np.flatnonzero(~np.isfinite(r))
        if bad.size:
            raise NumericError(f"non-finite residual at data row {int(bad[0])}: {problem.data[int(bad[0])]}")
        return r

    r0 = residuals(x0)
    sse0 = float(r0 @ r0)
    fit = least_squares(
        residuals,
        x0,
        bounds=(lo, hi),
        method="trf",
        ftol=problem.tolerance,
        xtol=problem.tolerance,
        gtol=problem.tolerance,
        x_scale="jac",
    )
    sse = float(fit.fun @ fit.fun)
    x = fit.x
    if sse > sse0:
        x, sse = x0, sse0
    return CalibrationResult({n: float(v) for n, v in zip(names, x)}, sse, int(fit.nfev), sse0)


def load_problem(path) -> CalibrationProblem:
    path = Path(path)
    try:
        d = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise ValidationError(f"{path}: file not found") from None
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: invalid JSON ({exc})") from None
    return problem_from_dict(d)


def problem_from_dict(d) -> CalibrationProblem:
    problems = []
    if not isinstance(d, dict):
        raise ValidationError("calibration problem must be a JSON object")
    for key in sorted(set(d) - {"model", "data", "bounds", "initial", "tolerance", "config"}):
        problems.append(f"unknown key {key!r}")
    if "model" not in d or "data" not in d:
        problems.append("'model' and 'data' are required")
    if problems:
        raise ValidationError(problems)
    try:
        data = tuple(tuple(float(v) if v is not None else math.nan for v in row) for row in d["data"])
    except (TypeError, ValueError):
        raise ValidationError("data: expected a list of numeric rows") from None
    bounds = {k: tuple(v) for k, v in d.get("bounds", {}).items()}
    p = CalibrationProblem(d["model"], data, bounds, dict(d.get("initial", {})), float(d.get("tolerance", 1e-12)), dict(d.get("config", {})))
    problems = p.problems()
    if problems:
        raise ValidationError(problems)
    return p

