"""Ready-made scenarios for the grasp demonstrations.

Object levels are chosen so each object sits where the fingertips meet
it: the ball at the resting fingertip height, the tape roll a little
above the tips of the widened fingers, and in the two-object case the
second object below the first, reached by extending pair B.
"""
from __future__ import annotations

import copy

_BASE = {
    "dt": 0.01,
    "t_max": 5.0,
    "seed": 0,
    "gripper": {},
    "actuators": {},
    "extension_law": {"anchors": [[0.0, 104.0], [100.0, 200.55]]},
}

BALL = {"shape": "sphere", "radius": 20.0, "mass": 0.0027, "center": [0.0, 0.0, 104.0], "surface_mu": 0.5}
TAPE = {
    "shape": "annulus",
    "radius": 75.0,
    "inner_radius": 38.0,
    "height": 50.0,
    "mass": 0.1,
    "center": [0.0, 0.0, 115.0],
    "surface_mu": 0.5,
}
LARGE_BOX = {
    "shape": "annulus",
    "radius": 60.0,
    "inner_radius": 30.0,
    "height": 40.0,
    "mass": 0.05,
    "center": [0.0, 0.0, 112.0],
    "surface_mu": 0.5,
}
LOW_BALL = dict(BALL, center=[0.0, 0.0, 150.0])


def _scenario(name, strategy, objects, **extra):
    d = copy.deepcopy(_BASE)
    d.update(name=name, strategy={"kind": strategy}, objects=copy.deepcopy(objects))
    d.update(extra)
    return d


def small_ball():
    return _scenario("small_ball", "SmallSingle", [BALL])


def tape_small_single():
    return _scenario("tape_small_single", "SmallSingle", [TAPE])


def tape_large_single():
    return _scenario("tape_large_single", "LargeSingle", [TAPE])


def multi_object():
    return _scenario("multi_object", "MultiObject", [LARGE_BOX, LOW_BALL], t_max=8.0)


def empty():
    return _scenario("empty", "SmallSingle", [])


ALL = {
    "small_ball": small_ball,
    "tape_small_single": tape_small_single,
    "tape_large_single": tape_large_single,
    "multi_object": multi_object,
    "empty": empty,
}
