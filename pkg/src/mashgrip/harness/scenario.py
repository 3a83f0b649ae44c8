"""Scenario files: JSON description of one simulated experiment.

Example::

    {
      "name": "small_ball",
      "dt": 0.01, "t_max": 5.0, "seed": 0,
      "gripper": {"mount_separation": 85.3, "fingertip_reach": 12.65},
      "actuators": {"layer_gap": 20.0, "p_max": 100.0},
      "brake": {"tau": 0.08},
      "extension_law": {"anchors": [[0, 104.0], [100, 200.55]]},
      "objects": [{"shape": "sphere", "radius": 20, "mass": 0.0027,
                   "center": [0, 0, 104]}],
      "strategy": {"kind": "SmallSingle", "ramp_rate": 20.0}
    }

``actuators`` is either one mapping shared by all four actuators or a list
of four (pair A first). ``brake`` sets defaults for every brake layer;
``inner_brake`` / ``outer_brake`` inside an actuator entry override them.
``extension_law`` may instead be ``{"csv": "path.csv"}``, resolved
relative to the scenario file.
"""
from __future__ import annotations

import copy
import json
import math
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

from ..actuator import ActuatorGeometry, StiffnessParams
from ..brake import BrakeParams
from ..controller import STRATEGIES, StrategyParams
from ..errors import DomainError, ValidationError
from ..gripper import GripperConfig, ObjectModel
from ..material import ExtensionLaw, load_extension_law_csv

_GRIPPER_KEYS = {"mount_separation", "fingertip_reach", "fingertip_mu", "fingertip_area", "grip_force_gain"}
_ACTUATOR_KEYS = {"rest_length", "layer_gap", "p_max", "inner_brake", "outer_brake"}
_OBJECT_KEYS = {"shape", "radius", "mass", "center", "surface_mu", "inner_radius", "height", "name"}
_TOP_KEYS = {"name", "dt", "t_max", "seed", "gripper", "actuators", "brake", "extension_law", "objects", "strategy"}


def _names(cls):
    return {f.name for f in fields(cls)}


def _unknown(d, allowed, where, problems):
    for key in sorted(set(d) - set(allowed)):
        problems.append(f"{where}: unknown key {key!r}")


def _build(cls, kwargs, where, problems):
    try:
        return cls(**kwargs)
    except (DomainError, ValidationError, TypeError, ValueError) as exc:
        problems.append(f"{where}: {exc}")
        return None


def brake_from_dict(d, where="brake", problems=None, base=None):
    problems = [] if problems is None else problems
    d = d or {}
    if not isinstance(d, dict):
        problems.append(f"{where}: expected an object")
        return None
    _unknown(d, _names(BrakeParams), where, problems)
    kwargs = asdict(base) if base is not None else {}
    kwargs.update({k: float(v) for k, v in d.items() if k in _names(BrakeParams) and _is_number(v)})
    for k, v in d.items():
        if k in _names(BrakeParams) and not _is_number(v):
            problems.append(f"{where}.{k}: expected a number")
    return _build(BrakeParams, kwargs, where, problems)


def _is_number(v):
    return isinstance(v, (int, float)) and not isinstance(v, bool) and math.isfinite(v)


def actuator_from_dict(d, where, problems, brake_default):
    if not isinstance(d, dict):
        problems.append(f"{where}: expected an object")
        return None
    _unknown(d, _ACTUATOR_KEYS, where, problems)
    kwargs = {}
    for k in ("rest_length", "layer_gap", "p_max"):
        if k in d:
            if _is_number(d[k]):
                kwargs[k] = float(d[k])
            else:
                problems.append(f"{where}.{k}: expected a number")
    for side in ("inner_brake", "outer_brake"):
        kwargs[side] = brake_from_dict(d.get(side), f"{where}.{side}", problems, brake_default)
    if any(v is None for v in kwargs.values()):
        return None
    return _build(ActuatorGeometry, kwargs, where, problems)


def law_from_dict(d, base_dir, problems):
    if d is None:
        return ExtensionLaw()
    if not isinstance(d, dict):
        problems.append("extension_law: expected an object")
        return None
    _unknown(d, {"anchors", "interpolation", "csv"}, "extension_law", problems)
    interp = d.get("interpolation")
    if "csv" in d:
        path = Path(d["csv"])
        if not path.is_absolute() and base_dir is not None:
            path = Path(base_dir) / path
        if not path.exists():
            problems.append(f"extension_law.csv: file not found: {path}")
            return None
        try:
            return load_extension_law_csv(path, interp)
        except ValidationError as exc:
            problems.extend(f"extension_law.csv: {p}" for p in exc.problems)
            return None
    anchors = d.get("anchors")
    if anchors is None:
        return _build(ExtensionLaw, {"interpolation": interp}, "extension_law", problems)
    try:
        anchors = tuple((float(p), float(l)) for p, l in anchors)
    except (TypeError, ValueError):
        problems.append("extension_law.anchors: expected a list of [pressure, length] pairs")
        return None
    return _build(ExtensionLaw, {"anchors": anchors, "interpolation": interp}, "extension_law", problems)


def object_from_dict(d, where, problems):
    if not isinstance(d, dict):
        problems.append(f"{where}: expected an object")
        return None
    _unknown(d, _OBJECT_KEYS, where, problems)
    kwargs = {k: v for k, v in d.items() if k in _OBJECT_KEYS - {"name"}}
    if "center" in kwargs:
        kwargs["center"] = tuple(float(c) for c in kwargs["center"])
    if "shape" not in kwargs or "radius" not in kwargs:
        problems.append(f"{where}: 'shape' and 'radius' are required")
        return None
    return _build(ObjectModel, kwargs, where, problems)


@dataclass(frozen=True)
class Scenario:
    gripper: GripperConfig
    objects: tuple
    strategy: str
    strategy_params: StrategyParams = field(default_factory=StrategyParams)
    dt: float = 0.01
    t_max: float = 5.0
    seed: int = 0
    name: str = ""
    source: dict = field(default_factory=dict, compare=False, repr=False)


def parse_scenario(data: dict, base_dir=None) -> Scenario:
    """Build a :class:`Scenario`, raising ``ValidationError`` listing every problem."""
    problems = []
    if not isinstance(data, dict):
        raise ValidationError("scenario must be a JSON object")
    _unknown(data, _TOP_KEYS, "scenario", problems)

    dt, t_max = data.get("dt", 0.01), data.get("t_max", 5.0)
    if not (_is_number(dt) and dt > 0):
        problems.append(f"dt: must be > 0 (got {dt!r})")
    if not (_is_number(t_max) and _is_number(dt) and t_max >= dt):
        problems.append(f"t_max: must be >= dt (got {t_max!r})")
    seed = data.get("seed", 0)
    if not isinstance(seed, int) or isinstance(seed, bool):
        problems.append(f"seed: must be an integer (got {seed!r})")

    brake_default = brake_from_dict(data.get("brake"), "brake", problems)
    law = law_from_dict(data.get("extension_law"), base_dir, problems)

    acts = data.get("actuators", {})
    if isinstance(acts, dict):
        acts = [acts] * 4
    if not isinstance(acts, list) or len(acts) != 4:
        problems.append("actuators: expected one object or a list of four")
        geoms = None
    else:
        geoms = [actuator_from_dict(a, f"actuators[{i}]", problems, brake_default) for i, a in enumerate(acts)]

    gd = data.get("gripper", {})
    if not isinstance(gd, dict):
        problems.append("gripper: expected an object")
        gd = {}
    _unknown(gd, _GRIPPER_KEYS, "gripper", problems)
    gripper = None
    if geoms is not None and all(g is not None for g in geoms) and law is not None:
        if law.max_pressure < max(g.p_max for g in geoms):
            problems.append("extension_law: anchors must cover the actuators' p_max")
        gripper = _build(
            GripperConfig,
            dict(gd, pair_a=tuple(geoms[:2]), pair_b=tuple(geoms[2:]), extension_law=law),
            "gripper",
            problems,
        )

    objs = data.get("objects", [])
    if not isinstance(objs, list):
        problems.append("objects: expected a list")
        objs = []
    objects = tuple(object_from_dict(o, f"objects[{i}]", problems) for i, o in enumerate(objs))

    sd = data.get("strategy")
    strategy, sparams = None, None
    if not isinstance(sd, dict) or "kind" not in sd:
        problems.append("strategy: expected an object with a 'kind'")
    else:
        strategy = sd["kind"]
        if strategy not in STRATEGIES:
            problems.append(f"strategy.kind: must be one of {STRATEGIES} (got {strategy!r})")
        _unknown(sd, _names(StrategyParams) | {"kind"}, "strategy", problems)
        kwargs = {k: float(v) for k, v in sd.items() if k in _names(StrategyParams) and _is_number(v)}
        if gripper is not None:
            kwargs.setdefault("p_max", min(g.p_max for g in gripper.actuators))
        sparams = _build(StrategyParams, kwargs, "strategy", problems)
        if sparams is not None:
            problems.extend(sparams.problems("strategy."))
        if strategy == "MultiObject" and len(objs) != 2:
            problems.append("objects: MultiObject needs exactly two objects")

    if problems:
        raise ValidationError(problems)
    return Scenario(
        gripper=gripper,
        objects=objects,
        strategy=strategy,
        strategy_params=sparams,
        dt=float(dt),
        t_max=float(t_max),
        seed=seed,
        name=str(data.get("name", "")),
        source=copy.deepcopy(data),
    )


def load_scenario(path) -> Scenario:
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise ValidationError(f"{path}: file not found") from None
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: invalid JSON ({exc})") from None
    return parse_scenario(data, base_dir=path.parent)


def validate_scenario(data, base_dir=None):
    """Return the list of problems with ``data`` (empty when valid)."""
    try:
        parse_scenario(data, base_dir)
    except ValidationError as exc:
        return exc.problems
    return []


def stiffness_from_dict(d, problems, where="stiffness"):
    d = d or {}
    _unknown(d, _names(StiffnessParams), where, problems)
    return _build(StiffnessParams, {k: float(v) for k, v in d.items() if k in _names(StiffnessParams)}, where, problems)
