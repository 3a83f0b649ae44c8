import pytest

from mashgrip import ActuatorGeometry, ExtensionLaw, GripperConfig


@pytest.fixture
def law():
    return ExtensionLaw()


@pytest.fixture
def geom():
    return ActuatorGeometry()


def gripper_with_gap(layer_gap):
    g = ActuatorGeometry(layer_gap=layer_gap)
    return GripperConfig(pair_a=(g, g), pair_b=(g, g))


@pytest.fixture
def cfg():
    return GripperConfig()
