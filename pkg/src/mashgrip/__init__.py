"""Quasi-static simulation, control and calibration of a four-finger MASH soft gripper."""
from .actuator import (
    ActuatorGeometry,
    ArcConfig,
    StiffnessParams,
    bend_config,
    effective_rigidity,
    free_extension,
    tip_deflection_under_load,
)
from .brake import (
    BrakeParams,
    BrakeState,
    FilterState,
    braking_force,
    engagement_step,
    limited_recursive_average,
    required_gap_for_force,
)
from .errors import DomainError, NoSolutionError, NumericError, RangeError, ValidationError
from .gripper import GripOutcome, GripperConfig, ObjectModel, grip_check, grip_radius, pair_aperture
from .material import ExtensionLaw, YeohCoefficients, extension_length, uniaxial_stress, yeoh_energy

__version__ = "0.1.0"
