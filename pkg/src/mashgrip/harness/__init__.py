"""Simulation, calibration and characterisation harness."""
from .scenario import Scenario, load_scenario, parse_scenario, validate_scenario
from .simulate import GripperSim, SimLog, run_scenario

__all__ = ["Scenario", "load_scenario", "parse_scenario", "validate_scenario", "GripperSim", "SimLog", "run_scenario"]
