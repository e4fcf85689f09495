"""Replay logged bus traffic through a fresh interaction core.

Input messages (signal/event/touch and system-trigger session notes) are
re-dispatched in log order against a newly built machine, producing the
deterministic state trace the live session followed. Robot completion
notes come from the log itself, so no simulator is needed.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..bus.protocol import BusMessage, ProtocolError, SessionNote, TouchMessage, decode_message
from ..fsm.interface import NullRobot, build_interface_fsm, dispatch_touch
from ..fsm.machine import Event, Signal, SystemTrigger
from ..robot.fixtures import load_fixture_tasks
from ..robot.sim import RobotSim
from ..store.memory import MemoryTaskStore

_TRIGGERS = {
    "playback-finished": SystemTrigger.PLAYBACK_FINISHED,
    "sequence-finished": SystemTrigger.SEQUENCE_FINISHED,
    "record-saved": SystemTrigger.RECORD_SAVED,
}


@dataclass(frozen=True)
class ReplayResult:
    states: tuple[str, ...]  # state after each applied input
    applied: int
    skipped: int
    final_state: str
    errors: tuple[str, ...]


def replay_lines(lines, with_fixtures: bool = True) -> ReplayResult:
    store = MemoryTaskStore()
    if with_fixtures:
        load_fixture_tasks(RobotSim(), store)
    machine = build_interface_fsm(store, robot=NullRobot())
    states: list[str] = []
    errors: list[str] = []
    applied = skipped = 0
    for line in lines:
        if isinstance(line, str) and not line.strip():
            continue
        try:
            msg = decode_message(line)
        except ProtocolError as exc:
            errors.append(str(exc))
            continue
        outcome = _apply(machine, msg)
        if outcome is None:
            skipped += 1
            continue
        applied += 1
        states.append(machine.current)
        if outcome.error:
            errors.append(outcome.error)
    return ReplayResult(
        states=tuple(states),
        applied=applied,
        skipped=skipped,
        final_state=machine.current,
        errors=tuple(errors),
    )


def _apply(machine, msg: BusMessage):
    payload = msg.payload
    if isinstance(payload, Signal):
        return machine.dispatch_signal(payload)
    if isinstance(payload, Event):
        return machine.dispatch_event(payload)
    if isinstance(payload, TouchMessage):
        return dispatch_touch(machine, option=payload.option, button=payload.button)
    if isinstance(payload, SessionNote) and payload.kind in _TRIGGERS:
        return machine.system_transition(_TRIGGERS[payload.kind])
    return None
