import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mashgrip.actuator import ActuatorGeometry, bend_config
from mashgrip.errors import DomainError
from mashgrip.gripper import (
    FingerState,
    GripperConfig,
    ObjectModel,
    closing_fingers,
    finger_gap,
    grip_check,
    grip_radius,
    pad_radius,
    pair_aperture,
)

from .conftest import gripper_with_gap

BALL = ObjectModel("sphere", 20.0, mass=0.0027)


def test_rest_grip_radius(cfg):
    assert cfg.rest_grip_radius == pytest.approx(30.0)
    assert grip_radius(cfg) == pytest.approx(30.0)
    assert grip_radius(cfg, "inward", 50.0) == pytest.approx(30.0)


def test_tape_is_two_and_a_half_rest_radius(cfg):
    assert 75.0 / cfg.rest_grip_radius == pytest.approx(2.5)


def test_neutral_aperture_unchanged(cfg):
    assert pair_aperture(cfg, "a", 80.0, "neutral") == 85.3


def test_outward_aperture_default_gap(cfg):
    # two tips each moved 71.81 mm outward at 30 kPa, w = 20 mm
    assert pair_aperture(cfg, "a", 30.0, "outward") == pytest.approx(85.3 + 2 * 71.81027, rel=1e-6)


def test_calibrated_gap_aperture():
    cfg = gripper_with_gap(13.39413)
    assert pair_aperture(cfg, "a", 30.0, "outward") == pytest.approx(256.0, abs=1e-3)


def test_inward_aperture_clamped(cfg):
    assert pair_aperture(cfg, "b", 100.0, "inward") >= 0.0


def test_pair_and_mode_validation(cfg):
    with pytest.raises(DomainError):
        pair_aperture(cfg, "c", 10.0)
    with pytest.raises(DomainError):
        pair_aperture(cfg, "a", 10.0, "sideways")


@given(p=st.floats(0.0, 100.0))
def test_outward_never_narrower(p):
    cfg = GripperConfig()
    assert pair_aperture(cfg, "a", p, "outward") >= cfg.mount_separation - 1e-9


def test_config_validation():
    with pytest.raises(DomainError):
        GripperConfig(fingertip_reach=50.0)
    with pytest.raises(DomainError):
        GripperConfig(pair_a=(ActuatorGeometry(),))


@pytest.mark.parametrize(
    "kwargs",
    [
        {"shape": "cube", "radius": 1.0},
        {"shape": "sphere", "radius": 0.0},
        {"shape": "sphere", "radius": 1.0, "mass": -1.0},
        {"shape": "annulus", "radius": 10.0},
        {"shape": "annulus", "radius": 10.0, "inner_radius": 12.0, "height": 5.0},
    ],
)
def test_object_validation(kwargs):
    with pytest.raises(DomainError):
        ObjectModel(**kwargs)


def test_sphere_sections():
    assert BALL.section_radius(104.0) == 20.0
    assert BALL.section_radius(104.0 + 12.0) == pytest.approx(16.0)
    assert BALL.section_radius(130.0) is None


def test_offset_object_surface():
    obj = ObjectModel("sphere", 10.0, center=(5.0, 0.0, 104.0))
    assert obj.surface_along(0.0, 104.0) == pytest.approx(15.0)
    assert obj.surface_along(math.pi, 104.0) == pytest.approx(5.0)
    assert obj.surface_along(math.pi / 2, 104.0) == pytest.approx(math.sqrt(75.0))


def test_gap_at_rest(cfg, geom, law):
    arc = bend_config(geom, law, 0.0, "inner")
    assert pad_radius(cfg, arc) == pytest.approx(30.0)
    assert finger_gap(cfg, 0, arc, BALL) == pytest.approx(10.0)


def test_unpressurized_is_no_contact(cfg, geom, law):
    arc = bend_config(geom, law, 0.0, "inner")
    fingers = [FingerState(arc, 0.0, 30.0)] * 4
    assert grip_check(cfg, fingers, BALL).status == "NoContact"


def test_ball_gripped_when_closed(cfg):
    fingers = closing_fingers(cfg, BALL, 8.0)
    out = grip_check(cfg, fingers, BALL)
    assert out.status == "Gripped"
    assert set(out.fingers) == {0, 1, 2, 3}
    assert out.payload_margin > 1.0
    for f in fingers.values():
        assert 0 < f.contact_pressure < 8.0


def test_contact_pressure_is_first_touch(cfg):
    fingers = closing_fingers(cfg, BALL, 8.0)
    p0 = fingers[0].contact_pressure
    geom = cfg.actuators[0]
    arc = bend_config(geom, cfg.extension_law, p0, "inner")
    assert finger_gap(cfg, 0, arc, BALL) == pytest.approx(0.5, abs=1e-6)


def test_heavy_ball_slips(cfg):
    heavy = ObjectModel("sphere", 20.0, mass=5.0)
    assert grip_check(cfg, closing_fingers(cfg, heavy, 8.0), heavy).status == "Slipped"


def test_large_object_out_of_range(cfg):
    tape = ObjectModel("annulus", 75.0, mass=0.1, inner_radius=38.0, height=50.0, center=(0, 0, 104.0))
    assert grip_check(cfg, closing_fingers(cfg, tape, 30.0), tape).status == "OutOfRange"


def test_single_contact_is_not_a_grip(cfg):
    fingers = closing_fingers(cfg, BALL, 8.0, fingers=(0, 2))
    assert grip_check(cfg, fingers, BALL).status == "NoContact"


def test_massless_object_infinite_margin(cfg):
    light = ObjectModel("sphere", 20.0)
    out = grip_check(cfg, closing_fingers(cfg, light, 8.0), light)
    assert out.status == "Gripped" and out.to_dict()["payload_margin"] is None


def test_friction_uses_weaker_surface(cfg):
    slick = ObjectModel("sphere", 20.0, mass=0.0027, surface_mu=0.1)
    grippy = ObjectModel("sphere", 20.0, mass=0.0027, surface_mu=0.9)
    fs = closing_fingers(cfg, BALL, 8.0)
    m_slick = grip_check(cfg, fs, slick).payload_margin
    m_grippy = grip_check(cfg, fs, grippy).payload_margin
    m_ref = grip_check(cfg, fs, BALL).payload_margin
    assert m_slick == pytest.approx(0.2 * m_ref)
    assert m_grippy == pytest.approx(m_ref)
