"""Gripping strategies as deterministic step functions.

Each call to :func:`step` takes the previous :class:`StrategyState`, the
latest :class:`Observation` and the current time, and returns the command
to apply plus the next state. States are immutable; the phase log is an
append-only tuple of :class:`Event`.

Three strategies are provided:

* ``SmallSingle``: inner brakes on, then pressurise until the object is held.
* ``LargeSingle``: outer brakes on and pressurise to widen the grasp range,
  release the outer brakes, switch to the inner brakes and close.
* ``MultiObject``: pair A grips a large object after widening its range,
  pair B then extends axially and grips a second object below it, and both
  are released in reverse order.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace

from .gripper import GRIPPED, OUT_OF_RANGE, PAIRS

SMALL_SINGLE = "SmallSingle"
LARGE_SINGLE = "LargeSingle"
MULTI_OBJECT = "MultiObject"
STRATEGIES = (SMALL_SINGLE, LARGE_SINGLE, MULTI_OBJECT)

# phase names
IDLE = "Idle"
ARM_INNER = "ArmInnerBrakes"
PRESSURIZE = "Pressurize"
ARM_OUTER = "ArmOuterBrakes"
EXPAND = "ExpandOutward"
RELEASE_OUTER = "ReleaseOuter"
CLOSE_INWARD = "CloseInward"
GRIPPED_PHASE = "Gripped"
HOLD = "Hold"
EXPAND_A = "i:ExpandPairA"
GRIP_A = "ii:GripPairA"
EXTEND_B = "iii:ExtendPairB"
GRIP_B = "iv:GripPairB"
LIFT = "v:Lift"
RELEASE_B = "vi:ReleasePairB"
RELEASE_A = "vii:ReleasePairA"
VENT = "viii:Vent"

PLANS = {
    SMALL_SINGLE: (IDLE, ARM_INNER, PRESSURIZE, GRIPPED_PHASE, HOLD),
    LARGE_SINGLE: (IDLE, ARM_OUTER, EXPAND, RELEASE_OUTER, ARM_INNER, CLOSE_INWARD, GRIPPED_PHASE, HOLD),
    MULTI_OBJECT: (IDLE, EXPAND_A, GRIP_A, EXTEND_B, GRIP_B, LIFT, RELEASE_B, RELEASE_A, VENT),
}

COMPLETED = "Completed"
TIMEOUT = "Timeout"
ABORT = "Abort"

ALL = (0, 1, 2, 3)


@dataclass(frozen=True)
class Command:
    pressure_a: float = 0.0
    pressure_b: float = 0.0
    inner_voltages: tuple = (0.0, 0.0, 0.0, 0.0)
    outer_voltages: tuple = (0.0, 0.0, 0.0, 0.0)

    def pressure(self, finger):
        return self.pressure_a if finger in PAIRS["a"] else self.pressure_b

    def to_dict(self):
        return {
            "pressure_a": self.pressure_a,
            "pressure_b": self.pressure_b,
            "inner_voltages": list(self.inner_voltages),
            "outer_voltages": list(self.outer_voltages),
        }


@dataclass(frozen=True)
class Observation:
    """What the controller sees each step (simulator ground truth).

    Per-finger tuples are indexed 0..3 (pair A = 0, 1; pair B = 2, 3);
    per-object tuples follow the scenario's object order.
    """

    tips: tuple = ((0.0, 104.0, 0.0),) * 4  # (x, y, theta)
    apertures: tuple = (0.0, 0.0)
    pad_radii: tuple = (0.0,) * 4
    open_radii: tuple = (0.0,) * 4
    contacts: tuple = (False,) * 4
    inner_engagement: tuple = (0.0,) * 4
    outer_engagement: tuple = (0.0,) * 4
    object_radius: tuple = ()
    object_level: tuple = ()
    object_in_range: tuple = ()
    grips: tuple = ()

    def to_dict(self):
        return {
            "tips": [list(t) for t in self.tips],
            "apertures": list(self.apertures),
            "pad_radii": list(self.pad_radii),
            "open_radii": list(self.open_radii),
            "contacts": list(self.contacts),
            "inner_engagement": list(self.inner_engagement),
            "outer_engagement": list(self.outer_engagement),
            "object_in_range": list(self.object_in_range),
            "grips": [g.to_dict() for g in self.grips],
        }


@dataclass(frozen=True)
class StrategyParams:
    voltage: float = 2000.0  # V applied to an active brake layer
    ramp_rate: float = 20.0  # kPa/s
    p_max: float = 100.0  # kPa
    engage_threshold: float = 0.9
    release_threshold: float = 0.1
    timeout: float = 10.0  # s per phase
    clearance_margin: float = 5.0  # mm of pad clearance before closing on a widened grasp
    hold_time: float = 0.2  # s

    def problems(self, prefix=""):
        out = []
        for name in ("voltage", "ramp_rate", "p_max", "timeout"):
            if not getattr(self, name) > 0:
                out.append(f"{prefix}{name} must be > 0")
        if not 0 < self.release_threshold < self.engage_threshold <= 1:
            out.append(f"{prefix}need 0 < release_threshold < engage_threshold <= 1")
        if self.clearance_margin < 0 or self.hold_time < 0:
            out.append(f"{prefix}clearance_margin and hold_time must be >= 0")
        return out


@dataclass(frozen=True)
class Event:
    t: float
    kind: str  # "phase", "timeout", "abort" or "complete"
    name: str

    def to_dict(self):
        return {"t": self.t, "kind": self.kind, "name": self.name}


@dataclass(frozen=True)
class StrategyState:
    strategy: str
    phase: str = IDLE
    phase_entry_time: float = 0.0
    events: tuple = ()
    plan: tuple = ()
    substep: str = ""
    pressure_a: float = 0.0
    pressure_b: float = 0.0
    inner_on: tuple = (False,) * 4
    outer_on: tuple = (False,) * 4
    last_t: float | None = None
    terminal: str | None = None
    params: StrategyParams = field(default_factory=StrategyParams)

    @property
    def phase_events(self):
        return tuple(e.name for e in self.events if e.kind == "phase")

    def command(self):
        v = self.params.voltage
        return Command(
            pressure_a=self.pressure_a,
            pressure_b=self.pressure_b,
            inner_voltages=tuple(v if on else 0.0 for on in self.inner_on),
            outer_voltages=tuple(v if on else 0.0 for on in self.outer_on),
        )


def initial_state(strategy: str, params: StrategyParams | None = None) -> StrategyState:
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    return StrategyState(strategy=strategy, plan=PLANS[strategy], params=params or StrategyParams())


# helpers -------------------------------------------------------------------

def _advance(state, t, substep=""):
    """Move to the next phase of the plan and log the transition."""
    nxt = state.plan[state.plan.index(state.phase) + 1]
    return replace(
        state,
        phase=nxt,
        phase_entry_time=t,
        substep=substep,
        events=state.events + (Event(t, "phase", nxt),),
    )


def _finish(state, t, status, reason):
    kind = {COMPLETED: "complete", TIMEOUT: "timeout", ABORT: "abort"}[status]
    return replace(state, terminal=status, events=state.events + (Event(t, kind, reason),))


def _set_brakes(state, fingers, inner=None, outer=None):
    inner_on, outer_on = list(state.inner_on), list(state.outer_on)
    for k in fingers:
        if inner is not None:
            inner_on[k] = inner
        if outer is not None:
            outer_on[k] = outer
    # an actuator never has both layers commanded on
    for k in range(4):
        assert not (inner_on[k] and outer_on[k]), "inner and outer brake both on"
    return replace(state, inner_on=tuple(inner_on), outer_on=tuple(outer_on))


def _ramp(state, pairs, dt):
    p = state.params
    kw = {}
    for pair in pairs:
        name = f"pressure_{pair}"
        kw[name] = min(p.p_max, getattr(state, name) + p.ramp_rate * dt)
    return replace(state, **kw)


def _engaged(obs, fingers, side, thr):
    eng = obs.inner_engagement if side == "inner" else obs.outer_engagement
    return all(eng[k] >= thr for k in fingers)


def _released(obs, fingers, side, thr):
    eng = obs.inner_engagement if side == "inner" else obs.outer_engagement
    return all(eng[k] <= thr for k in fingers)


def _held(obs, index, fingers):
    if index >= len(obs.grips):
        return False
    g = obs.grips[index]
    return g.status == GRIPPED and set(fingers) <= set(g.fingers)


def _saturated(state, pairs):
    return all(getattr(state, f"pressure_{p}") >= state.params.p_max for p in pairs)


# shared phase handlers ----------------------------------------------------

def _arm_inner(state, obs, t, dt):
    if _engaged(obs, ALL, "inner", state.params.engage_threshold):
        return _advance(state, t)
    return state


def _close(state, obs, t, dt):
    if _held(obs, 0, ALL):
        return _advance(state, t)
    return _ramp(state, "ab", dt)


def _gripped(state, obs, t, dt):
    return _advance(state, t)


def _hold(state, obs, t, dt):
    if not _held(obs, 0, ALL):
        return _finish(state, t, ABORT, "Slipped")
    if t - state.phase_entry_time >= state.params.hold_time:
        return _finish(state, t, COMPLETED, HOLD)
    return state


# strategies ---------------------------------------------------------------

def _small_idle(state, obs, t, dt):
    if not obs.object_radius:
        return state
    if not obs.object_in_range[0]:
        return _finish(state, t, ABORT, OUT_OF_RANGE)
    return _advance(_set_brakes(state, ALL, inner=True), t)


def _large_idle(state, obs, t, dt):
    if not obs.object_radius:
        return state
    if obs.object_in_range[0]:
        # already inside the resting range: no widening needed
        state = replace(state, plan=PLANS[SMALL_SINGLE])
        return _advance(_set_brakes(state, ALL, inner=True), t)
    return _advance(_set_brakes(state, ALL, outer=True), t)


def _arm_outer(state, obs, t, dt):
    if _engaged(obs, ALL, "outer", state.params.engage_threshold):
        return _advance(state, t)
    return state


def _expand(state, obs, t, dt):
    target = obs.object_radius[0] + state.params.clearance_margin
    if min(obs.pad_radii) >= target:
        return _advance(_set_brakes(state, ALL, outer=False), t)
    return _ramp(state, "ab", dt)


def _release_outer(state, obs, t, dt):
    if _released(obs, ALL, "outer", state.params.release_threshold):
        return _advance(_set_brakes(state, ALL, inner=True), t)
    return state


_HANDLERS = {
    ARM_INNER: _arm_inner,
    PRESSURIZE: _close,
    CLOSE_INWARD: _close,
    GRIPPED_PHASE: _gripped,
    HOLD: _hold,
    ARM_OUTER: _arm_outer,
    EXPAND: _expand,
    RELEASE_OUTER: _release_outer,
}


def _tick(state, obs, t, pick):
    if state.terminal is not None:
        return state.command(), state
    dt = 0.0 if state.last_t is None else t - state.last_t
    state = replace(state, last_t=t)
    if t - state.phase_entry_time > state.params.timeout:
        state = _finish(state, t, TIMEOUT, state.phase)
        return state.command(), state
    state = pick(state)(state, obs, t, dt)
    return state.command(), state


def step_small_single(state: StrategyState, obs: Observation, t: float) -> tuple[Command, StrategyState]:
    """Inner brakes first, then pressure until all four pads hold the object."""
    if state.strategy != SMALL_SINGLE:
        raise ValueError("state does not belong to SmallSingle")
    return _tick(state, obs, t, lambda s: _small_idle if s.phase == IDLE else _HANDLERS[s.phase])


def step_large_single(state: StrategyState, obs: Observation, t: float) -> tuple[Command, StrategyState]:
    """Widen with the outer brakes, then close with the inner brakes.

    Falls back to the SmallSingle phase chain when the object already fits
    in the resting grasp range.
    """
    if state.strategy != LARGE_SINGLE:
        raise ValueError("state does not belong to LargeSingle")
    return _tick(state, obs, t, lambda s: _large_idle if s.phase == IDLE else _HANDLERS[s.phase])


A, B = PAIRS["a"], PAIRS["b"]


def _multi(state, obs, t, dt):
    p = state.params
    phase, sub = state.phase, state.substep

    if phase == IDLE:
        if len(obs.object_radius) != 2:
            return _finish(state, t, ABORT, "MultiObject needs exactly two objects")
        return _advance(_set_brakes(state, A, outer=True), t, "arm")

    if phase == EXPAND_A:
        if sub == "arm":
            if _engaged(obs, A, "outer", p.engage_threshold):
                return replace(state, substep="inflate")
            return state
        target = obs.object_radius[0] + p.clearance_margin
        if min(obs.pad_radii[k] for k in A) >= target:
            return _advance(_set_brakes(state, A, outer=False), t, "release")
        return _ramp(state, "a", dt)

    if phase == GRIP_A:
        if sub == "release":
            if _released(obs, A, "outer", p.release_threshold):
                return replace(_set_brakes(state, A, inner=True), substep="arm")
            return state
        if sub == "arm":
            if _engaged(obs, A, "inner", p.engage_threshold):
                return replace(state, substep="close")
            return state
        if _held(obs, 0, A):
            return _advance(state, t)
        return _ramp(state, "a", dt)

    if phase == EXTEND_B:
        if any(obs.object_radius[1] > obs.open_radii[k] for k in B):
            return _finish(state, t, ABORT, "object 2 out of range")
        if all(obs.tips[k][1] >= obs.object_level[1] for k in B):
            return _advance(_set_brakes(state, B, inner=True), t, "arm")
        if _saturated(state, "b"):
            return _finish(state, t, ABORT, "object 2 unreachable")
        return _ramp(state, "b", dt)

    if phase == GRIP_B:
        if sub == "arm":
            if _engaged(obs, B, "inner", p.engage_threshold):
                return replace(state, substep="close")
            return state
        if _held(obs, 1, B):
            return _advance(state, t)
        return _ramp(state, "b", dt)

    if phase == LIFT:
        if not (_held(obs, 0, A) and _held(obs, 1, B)):
            return _finish(state, t, ABORT, "Slipped")
        if t - state.phase_entry_time >= p.hold_time:
            return _advance(_set_brakes(state, B, inner=False), t)
        return state

    if phase == RELEASE_B:
        if _released(obs, B, "inner", p.release_threshold):
            return _advance(_set_brakes(state, A, inner=False, outer=False), t)
        return state

    if phase == RELEASE_A:
        if _released(obs, A, "inner", p.release_threshold) and _released(obs, A, "outer", p.release_threshold):
            return _advance(replace(state, pressure_a=0.0, pressure_b=0.0), t)
        return state

    # VENT: pressures already zero
    return _finish(state, t, COMPLETED, VENT)


def step_multi_object(state: StrategyState, obs: Observation, t: float) -> tuple[Command, StrategyState]:
    """Two-object sequence: object 0 held by pair A, object 1 below it by pair B."""
    if state.strategy != MULTI_OBJECT:
        raise ValueError("state does not belong to MultiObject")
    return _tick(state, obs, t, lambda s: _multi)


_DISPATCH = {
    SMALL_SINGLE: step_small_single,
    LARGE_SINGLE: step_large_single,
    MULTI_OBJECT: step_multi_object,
}


def step(state: StrategyState, obs: Observation, t: float) -> tuple[Command, StrategyState]:
    """Advance whichever strategy ``state`` belongs to by one control tick."""
    return _DISPATCH[state.strategy](state, obs, t)
