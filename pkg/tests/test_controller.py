import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mashgrip import controller as ctl
from mashgrip.controller import Observation, StrategyParams, initial_state, step
from mashgrip.harness import parse_scenario, run_scenario
from mashgrip.harness import presets


def obs_with(**kw):
    base = dict(object_radius=(20.0,), object_level=(104.0,), object_in_range=(True,))
    base.update(kw)
    return Observation(**base)


def test_unknown_strategy():
    with pytest.raises(ValueError):
        initial_state("Juggle")


def test_wrong_step_function():
    with pytest.raises(ValueError):
        ctl.step_large_single(initial_state("SmallSingle"), Observation(), 0.0)


def test_small_idle_arms_inner_brakes():
    cmd, s = step(initial_state("SmallSingle"), obs_with(), 0.0)
    assert s.phase == ctl.ARM_INNER
    assert cmd.inner_voltages == (2000.0,) * 4 and cmd.outer_voltages == (0.0,) * 4
    assert s.phase_events == (ctl.ARM_INNER,)


def test_small_out_of_range_aborts():
    _, s = step(initial_state("SmallSingle"), obs_with(object_radius=(75.0,), object_in_range=(False,)), 0.0)
    assert s.terminal == ctl.ABORT
    assert s.events[-1].kind == "abort" and s.events[-1].name == "OutOfRange"


def test_large_idle_arms_outer():
    _, s = step(initial_state("LargeSingle"), obs_with(object_radius=(75.0,), object_in_range=(False,)), 0.0)
    assert s.phase == ctl.ARM_OUTER
    assert s.command().outer_voltages == (2000.0,) * 4


def test_large_degenerates_to_small_plan():
    _, s = step(initial_state("LargeSingle"), obs_with(), 0.0)
    assert s.plan == ctl.PLANS["SmallSingle"] and s.phase == ctl.ARM_INNER


def test_waits_without_object_then_times_out():
    s = initial_state("SmallSingle", StrategyParams(timeout=1.0))
    for n in range(200):
        _, s = step(s, Observation(), n * 0.01)
        if s.terminal:
            break
    assert s.terminal == ctl.TIMEOUT
    assert s.events[-1].name == ctl.IDLE


def test_arm_waits_for_engagement():
    _, s = step(initial_state("SmallSingle"), obs_with(), 0.0)
    _, s = step(s, obs_with(inner_engagement=(0.5,) * 4), 0.01)
    assert s.phase == ctl.ARM_INNER
    _, s = step(s, obs_with(inner_engagement=(0.95,) * 4), 0.02)
    assert s.phase == ctl.PRESSURIZE


def test_ramp_rate_and_cap():
    s = initial_state("SmallSingle", StrategyParams(ramp_rate=20.0, p_max=1.0))
    _, s = step(s, obs_with(), 0.0)
    _, s = step(s, obs_with(inner_engagement=(1.0,) * 4), 0.0)
    cmd, s = step(s, obs_with(inner_engagement=(1.0,) * 4), 0.01)
    assert cmd.pressure_a == pytest.approx(0.2) and cmd.pressure_b == pytest.approx(0.2)
    for n in range(2, 200):
        cmd, s = step(s, obs_with(inner_engagement=(1.0,) * 4), n * 0.01)
    assert cmd.pressure_a == 1.0


def test_terminal_state_is_sticky():
    _, s = step(initial_state("SmallSingle"), obs_with(object_in_range=(False,)), 0.0)
    cmd, s2 = step(s, obs_with(), 1.0)
    assert s2 == s


def test_events_append_only():
    log = run_scenario(parse_scenario(presets.tape_large_single()))
    times = [e["t"] for e in log.events]
    assert times == sorted(times)


def test_large_single_phase_chain():
    log = run_scenario(parse_scenario(presets.tape_large_single()))
    assert log.phase_events == list(ctl.PLANS["LargeSingle"][1:])
    assert log.terminal == "Completed"


def test_brakes_never_both_on_in_any_run():
    for make in presets.ALL.values():
        log = run_scenario(parse_scenario(make()))
        for r in log.records:
            c = r["command"]
            for vi, vo in zip(c["inner_voltages"], c["outer_voltages"]):
                assert not (vi > 0 and vo > 0)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.tuples(st.floats(0, 1), st.floats(0, 1), st.booleans(), st.floats(5, 100)), min_size=1, max_size=60))
def test_random_observations_respect_invariants(seq):
    for strategy in ctl.STRATEGIES:
        s = initial_state(strategy)
        nobj = 2 if strategy == "MultiObject" else 1
        for n, (ei, eo, fits, r) in enumerate(seq):
            obs = Observation(
                inner_engagement=(ei,) * 4,
                outer_engagement=(eo,) * 4,
                pad_radii=(r,) * 4,
                open_radii=(r,) * 4,
                object_radius=(20.0,) * nobj,
                object_level=(104.0,) * nobj,
                object_in_range=(fits,) * nobj,
            )
            before = s.events
            cmd, s = step(s, obs, n * 0.05)
            assert s.events[: len(before)] == before
            assert 0 <= cmd.pressure_a <= s.params.p_max and 0 <= cmd.pressure_b <= s.params.p_max
            assert not any(a > 0 and b > 0 for a, b in zip(cmd.inner_voltages, cmd.outer_voltages))
            phases = s.phase_events
            assert list(phases) == list(s.plan[1 : 1 + len(phases)])


def test_multi_needs_two_objects():
    _, s = step(initial_state("MultiObject"), obs_with(), 0.0)
    assert s.terminal == ctl.ABORT


def test_multi_object_out_of_range_aborts():
    d = presets.multi_object()
    d["objects"][1]["radius"] = 45.0
    log = run_scenario(parse_scenario(d))
    assert log.terminal == "Abort"
    assert log.events[-1]["name"] == "object 2 out of range"


def test_multi_object_unreachable_aborts():
    d = presets.multi_object()
    d["objects"][1]["center"] = [0.0, 0.0, 400.0]
    d["t_max"] = 20.0
    log = run_scenario(parse_scenario(d))
    assert log.terminal == "Abort" and log.events[-1]["name"] == "object 2 unreachable"


def test_hold_detects_slip():
    d = presets.small_ball()
    d["objects"][0]["mass"] = 50.0
    log = run_scenario(parse_scenario(d))
    assert log.terminal in ("Abort", "Timeout")
    assert log.final_status != "Gripped"
