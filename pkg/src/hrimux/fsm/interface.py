"""Menu and action states of the record/playback interaction interface.

Builds the machine the users drive: a main menu offering record, playback,
sequential playback and macro mode, the per-mode sub-menus, and the three
action states that talk to the robot through a small port.

Conventions installed here:
  - menu states bind slot 1 = select, slot 2 = selector down, slot 3 =
    selector up; slot 4 stays unbound (effectless) in every menu;
  - every sub-menu ends with a "back" option, selectable like any other,
    so the signal dictionary never needs a fifth command;
  - option ids, not labels, carry the contract ("task:<name>", "seq:<i>",
    "slot:<n>", "opt:<verb>").

The machine's ``context`` dict holds the interface working set: the task
store handle, the robot port, the sequence under construction, the macro
binding, and transient UI flags (armed delete, macro slot being edited).
Interface-level happenings the caller may care about (task saved, sequence
finished) are appended to ``context["fsm_events"]`` for draining.
"""

from __future__ import annotations

import logging
from dataclasses import replace
from typing import Any, Protocol

from ..robot.sim import Trajectory
from ..store.base import MacroBinding, NotFoundError, StoreError
from .machine import (
    ContextCommand,
    Event,
    FsmMachine,
    FsmState,
    HandlerKind,
    MenuOption,
    MacroRun,
    OutcomeKind,
    PlaySequence,
    PlayTask,
    RecordTarget,
    Signal,
    StateKind,
    SystemTrigger,
    TransitionOutcome,
    TransitionSpec,
)

logger = logging.getLogger(__name__)

MAIN_MENU = "main_menu"
RECORD_MENU = "record_menu"
PLAYBACK_MENU = "playback_menu"
SEQUENCE_MENU = "sequence_menu"
ADD_TASK_SUBMENU = "add_task_submenu"
MACRO_MENU = "macro_menu"
MACRO_SLOT_SUBMENU = "macro_slot_submenu"
RECORD_ACTION = "record_action"
PLAYBACK_ACTION = "playback_action"
MACRO_ACTION = "macro_action"

MENU_STATES = (
    MAIN_MENU,
    RECORD_MENU,
    PLAYBACK_MENU,
    SEQUENCE_MENU,
    ADD_TASK_SUBMENU,
    MACRO_MENU,
    MACRO_SLOT_SUBMENU,
)
ACTION_STATES = (RECORD_ACTION, PLAYBACK_ACTION, MACRO_ACTION)

WORKING_SEQUENCE = "current"
DEFAULT_MACRO = "default"

# named touch buttons rendered by consoles in action states
BUTTON_SLOTS = {
    "pause": 2,
    "resume": 2,
    "stop": 4,
    "finish": 4,
    "exit": 4,
    "fire_1": 1,
    "fire_2": 2,
    "fire_3": 3,
}


class RobotPort(Protocol):
    """What the interface needs from a robot; see hrimux.robot.port for the sim adapter."""

    busy: bool

    def start_recording(self, arm: str) -> None: ...

    def is_recording(self) -> bool: ...

    def stop_recording(self) -> Trajectory: ...

    def play(self, trajectory: Trajectory) -> None: ...

    def pause(self) -> None: ...

    def resume(self) -> None: ...

    def stop(self) -> None: ...


class NullRobot:
    """Inert port so the interaction core runs with no robot attached."""

    def __init__(self) -> None:
        self.busy = False
        self._recording = False

    def start_recording(self, arm: str) -> None:
        self._recording = True

    def is_recording(self) -> bool:
        return self._recording

    def stop_recording(self) -> Trajectory:
        self._recording = False
        return Trajectory("right", ())

    def play(self, trajectory: Trajectory) -> None:
        pass

    def pause(self) -> None:
        pass

    def resume(self) -> None:
        pass

    def stop(self) -> None:
        pass


MENU_HANDLERS = {
    1: TransitionSpec(HandlerKind.SELECT_CURRENT),
    2: TransitionSpec(HandlerKind.SELECTOR_DOWN),
    3: TransitionSpec(HandlerKind.SELECTOR_UP),
}


def _emit(machine: FsmMachine, kind: str, **data: Any) -> None:
    machine.context.setdefault("fsm_events", []).append((kind, data))


def _store(machine: FsmMachine):
    return machine.context["store"]


def _robot(machine: FsmMachine) -> RobotPort:
    return machine.context["robot"]


def _select_option(machine: FsmMachine, option: MenuOption) -> TransitionOutcome:
    return option.action(machine)


def _goto(state_id: str):
    def action(machine: FsmMachine) -> TransitionOutcome:
        return machine.activate(state_id)

    return action


def _back_option(state_id: str) -> MenuOption:
    return MenuOption("opt:back", "back", _goto(state_id))


def next_task_name(store) -> str:
    existing = set(store.list_tasks())
    n = 1
    while f"task_{n}" in existing:
        n += 1
    return f"task_{n}"


# ---------------------------------------------------------------------------
# option actions


def _open_record(name: str, overwrite: bool):
    def action(machine: FsmMachine) -> TransitionOutcome:
        return machine.activate(RECORD_ACTION, pending=RecordTarget(name, overwrite))

    return action


def _open_record_new(machine: FsmMachine) -> TransitionOutcome:
    name = next_task_name(_store(machine))
    return machine.activate(RECORD_ACTION, pending=RecordTarget(name, overwrite=False))


def _play_task(name: str):
    def action(machine: FsmMachine) -> TransitionOutcome:
        return machine.activate(PLAYBACK_ACTION, pending=PlayTask(name))

    return action


def _toggle_delete(machine: FsmMachine) -> TransitionOutcome:
    armed = not machine.context.get("delete_armed", False)
    machine.context["delete_armed"] = armed
    machine.active.refresh_options(machine)
    return TransitionOutcome(
        OutcomeKind.ACTION_EFFECT, machine.current, detail="delete armed" if armed else "delete disarmed"
    )


def _delete_task(name: str):
    def action(machine: FsmMachine) -> TransitionOutcome:
        try:
            _store(machine).delete_task(name)
        except StoreError as exc:
            return TransitionOutcome(OutcomeKind.REJECTED, machine.current, error=str(exc))
        machine.context["delete_armed"] = False
        machine.active.refresh_options(machine)
        machine.active.selector = min(machine.active.selector, len(machine.active.options) - 1)
        _emit(machine, "task-deleted", name=name)
        return TransitionOutcome(OutcomeKind.ACTION_EFFECT, machine.current, detail=f"deleted {name}")

    return action


def _persist_sequence(machine: FsmMachine) -> None:
    _store(machine).save_sequence(WORKING_SEQUENCE, list(machine.context["sequence"]))


def _remove_sequence_item(index: int):
    def action(machine: FsmMachine) -> TransitionOutcome:
        items: list[str] = machine.context["sequence"]
        removed = items.pop(index)
        _persist_sequence(machine)
        machine.active.refresh_options(machine)
        machine.active.selector = min(machine.active.selector, len(machine.active.options) - 1)
        return TransitionOutcome(OutcomeKind.ACTION_EFFECT, machine.current, detail=f"removed {removed}")

    return action


def _append_sequence_item(name: str):
    def action(machine: FsmMachine) -> TransitionOutcome:
        machine.context["sequence"].append(name)
        _persist_sequence(machine)
        return machine.activate(SEQUENCE_MENU)

    return action


def _run_sequence(machine: FsmMachine) -> TransitionOutcome:
    items = tuple(machine.context["sequence"])
    if not items:
        return TransitionOutcome(OutcomeKind.REJECTED, machine.current, error="sequence is empty")
    return machine.activate(PLAYBACK_ACTION, pending=PlaySequence(WORKING_SEQUENCE, items))


def _open_macro_slot(slot: int):
    def action(machine: FsmMachine) -> TransitionOutcome:
        return machine.activate(MACRO_SLOT_SUBMENU, arg=slot)

    return action


def _bind_macro(slot: int, task: str):
    def action(machine: FsmMachine) -> TransitionOutcome:
        binding: MacroBinding = machine.context["macro"].bind(slot, task)
        machine.context["macro"] = binding
        _store(machine).save_macro(DEFAULT_MACRO, binding)
        return machine.activate(MACRO_MENU)

    return action


def _run_macro(machine: FsmMachine) -> TransitionOutcome:
    return machine.activate(MACRO_ACTION)


# ---------------------------------------------------------------------------
# option providers


def _main_options(machine: FsmMachine) -> list[MenuOption]:
    return [
        MenuOption("opt:record", "record", _goto(RECORD_MENU)),
        MenuOption("opt:playback", "playback", _goto(PLAYBACK_MENU)),
        MenuOption("opt:sequence", "sequential playback", _goto(SEQUENCE_MENU)),
        MenuOption("opt:macro", "macro mode", _goto(MACRO_MENU)),
    ]


def _record_options(machine: FsmMachine) -> list[MenuOption]:
    opts = [
        MenuOption(f"task:{name}", name, _open_record(name, overwrite=True))
        for name in _store(machine).list_tasks()
    ]
    opts.append(MenuOption("opt:new", "new", _open_record_new))
    opts.append(_back_option(MAIN_MENU))
    return opts


def _playback_options(machine: FsmMachine) -> list[MenuOption]:
    armed = machine.context.get("delete_armed", False)
    opts = []
    for name in _store(machine).list_tasks():
        action = _delete_task(name) if armed else _play_task(name)
        opts.append(MenuOption(f"task:{name}", name, action))
    opts.append(MenuOption("opt:delete", "delete", _toggle_delete))
    opts.append(_back_option(MAIN_MENU))
    return opts


def _sequence_options(machine: FsmMachine) -> list[MenuOption]:
    items: list[str] = machine.context["sequence"]
    opts = [
        MenuOption(f"seq:{i}", f"{i + 1}. {name}", _remove_sequence_item(i))
        for i, name in enumerate(items)
    ]
    opts.append(MenuOption("opt:add", "add", _goto(ADD_TASK_SUBMENU)))
    opts.append(MenuOption("opt:run", "run", _run_sequence))
    opts.append(_back_option(MAIN_MENU))
    return opts


def _add_task_options(machine: FsmMachine) -> list[MenuOption]:
    opts = [
        MenuOption(f"task:{name}", name, _append_sequence_item(name))
        for name in _store(machine).list_tasks()
    ]
    opts.append(_back_option(SEQUENCE_MENU))
    return opts


def _macro_options(machine: FsmMachine) -> list[MenuOption]:
    binding: MacroBinding = machine.context["macro"]
    opts = []
    for slot in (1, 2, 3):
        task = binding.get(slot)
        label = f"G{slot}: {task if task else '-'}"
        opts.append(MenuOption(f"slot:{slot}", label, _open_macro_slot(slot)))
    opts.append(MenuOption("opt:run", "run", _run_macro))
    opts.append(_back_option(MAIN_MENU))
    return opts


def _macro_slot_options(machine: FsmMachine) -> list[MenuOption]:
    slot = machine.context.get("edit_slot")
    opts = [
        MenuOption(f"task:{name}", name, _bind_macro(slot, name))
        for name in _store(machine).list_tasks()
    ]
    opts.append(_back_option(MACRO_MENU))
    return opts


# ---------------------------------------------------------------------------
# action-state behaviour


def _record_can_enter(machine: FsmMachine, payload: Any) -> str | None:
    if payload is None:
        return "record target required"
    if not isinstance(payload, (str, RecordTarget)):
        return "record target must be a task name"
    return None


def _record_enter(machine: FsmMachine, arg: Any) -> None:
    pending = machine.pending
    if isinstance(pending, str):
        known = pending in _store(machine).list_tasks()
        machine.pending = RecordTarget(pending, overwrite=known)
    robot = _robot(machine)
    if robot.is_recording():
        robot.stop_recording()
    robot.start_recording("right")


def _record_command(machine: FsmMachine, command: ContextCommand, arg: int | None) -> TransitionOutcome:
    if command is not ContextCommand.STOP_BACK:
        return TransitionOutcome(OutcomeKind.IGNORED, machine.current)
    target: RecordTarget = machine.pending
    if not _robot(machine).is_recording():
        logger.warning("finish requested but no capture active; returning to menu")
        return machine.activate(RECORD_MENU)
    trajectory = _robot(machine).stop_recording()
    if trajectory.empty:
        # nothing captured: do not overwrite a stored task with emptiness
        logger.warning("recording of %s discarded: no guidance received", target.name)
        _emit(machine, "record-discarded", name=target.name)
    else:
        _store(machine).save_task(target.name, trajectory)
        _emit(machine, "record-saved", name=target.name)
    return machine.activate(RECORD_MENU)


def _record_system(machine: FsmMachine, trigger: SystemTrigger) -> TransitionOutcome | None:
    if trigger is SystemTrigger.RECORD_SAVED:
        robot = _robot(machine)
        if robot.is_recording():
            robot.stop_recording()  # robot-side save: discard our capture
        return machine.activate(RECORD_MENU)
    return None


def _record_describe(machine: FsmMachine) -> str:
    pending = machine.pending
    return f"recording {pending.name}" if isinstance(pending, RecordTarget) else "recording"


def _playback_can_enter(machine: FsmMachine, payload: Any) -> str | None:
    if payload is None:
        return "task to play required"
    if isinstance(payload, str):
        names = [payload]
    elif isinstance(payload, PlayTask):
        names = [payload.name]
    elif isinstance(payload, PlaySequence):
        names = list(payload.items)
    else:
        return "unsupported playback payload"
    store = _store(machine)
    missing = [n for n in names if n not in store.list_tasks()]
    if missing:
        return "missing task(s): " + ", ".join(missing)
    if _robot(machine).busy:
        return "robot is busy"
    return None


def _playback_enter(machine: FsmMachine, arg: Any) -> None:
    if isinstance(machine.pending, str):
        machine.pending = PlayTask(machine.pending)
    pending = machine.pending
    name = pending.items[pending.index] if isinstance(pending, PlaySequence) else pending.name
    task = _store(machine).load_task(name)
    _robot(machine).play(task.trajectory)


def _playback_command(machine: FsmMachine, command: ContextCommand, arg: int | None) -> TransitionOutcome:
    pending = machine.pending
    robot = _robot(machine)
    if command is ContextCommand.PAUSE_RESUME:
        if not robot.busy:
            # playback already completed; its finish notice is still in flight
            return TransitionOutcome(OutcomeKind.IGNORED, machine.current, detail="nothing playing")
        if pending.paused:
            robot.resume()
            machine.pending = replace(pending, paused=False)
            detail = "resumed"
        else:
            robot.pause()
            machine.pending = replace(pending, paused=True)
            detail = "paused"
        return TransitionOutcome(OutcomeKind.ACTION_EFFECT, machine.current, detail=detail)
    if command is ContextCommand.STOP_BACK:
        robot.stop()
        origin = SEQUENCE_MENU if isinstance(pending, PlaySequence) else PLAYBACK_MENU
        return machine.activate(origin)
    return TransitionOutcome(OutcomeKind.IGNORED, machine.current)


def _playback_system(machine: FsmMachine, trigger: SystemTrigger) -> TransitionOutcome | None:
    pending = machine.pending
    if trigger is SystemTrigger.PLAYBACK_FINISHED:
        if _robot(machine).busy:
            # premature trigger (robot still moving): not a real completion
            return None
        if isinstance(pending, PlaySequence):
            nxt = pending.index + 1
            if nxt < len(pending.items):
                machine.pending = replace(pending, index=nxt)
                task = _store(machine).load_task(pending.items[nxt])
                _robot(machine).play(task.trajectory)
                return TransitionOutcome(
                    OutcomeKind.ACTION_EFFECT, machine.current, detail=f"sequence item {nxt + 1}"
                )
            _emit(machine, "sequence-finished", name=pending.name)
            return machine.activate(SEQUENCE_MENU)
        return machine.activate(PLAYBACK_MENU)
    if trigger is SystemTrigger.SEQUENCE_FINISHED and isinstance(pending, PlaySequence):
        return machine.activate(SEQUENCE_MENU)
    return None


def _playback_describe(machine: FsmMachine) -> str:
    pending = machine.pending
    if pending is None:
        return ""
    if pending.paused:
        return "paused"
    if isinstance(pending, PlaySequence):
        return f"playing sequence {pending.index + 1}/{len(pending.items)}: {pending.items[pending.index]}"
    return f"playing {pending.name}"


def _macro_enter(machine: FsmMachine, arg: Any) -> None:
    machine.pending = MacroRun(binding=machine.context["macro"].slots)


def _macro_command(machine: FsmMachine, command: ContextCommand, arg: int | None) -> TransitionOutcome:
    robot = _robot(machine)
    if command is ContextCommand.STOP_BACK:
        if robot.busy:
            robot.stop()
        return machine.activate(MACRO_MENU)
    if command is ContextCommand.MACRO_FIRE:
        binding = dict(machine.pending.binding)
        task_name = binding.get(arg)
        if task_name is None:
            return TransitionOutcome(OutcomeKind.IGNORED, machine.current, detail=f"slot {arg} unbound")
        if robot.busy:
            logger.warning("macro fire ignored: robot busy")
            return TransitionOutcome(OutcomeKind.IGNORED, machine.current, detail="robot busy")
        try:
            task = _store(machine).load_task(task_name)
        except NotFoundError as exc:
            return TransitionOutcome(OutcomeKind.REJECTED, machine.current, error=str(exc))
        robot.play(task.trajectory)
        machine.pending = replace(machine.pending, running=task_name)
        _emit(machine, "macro-fired", slot=arg, name=task_name)
        return TransitionOutcome(OutcomeKind.ACTION_EFFECT, machine.current, detail=f"firing {task_name}")
    return TransitionOutcome(OutcomeKind.IGNORED, machine.current)


def _macro_system(machine: FsmMachine, trigger: SystemTrigger) -> TransitionOutcome | None:
    if trigger is SystemTrigger.PLAYBACK_FINISHED and isinstance(machine.pending, MacroRun):
        if _robot(machine).busy:
            return None
        machine.pending = replace(machine.pending, running=None)
        return TransitionOutcome(OutcomeKind.ACTION_EFFECT, machine.current, detail="macro task finished")
    return None


def _macro_describe(machine: FsmMachine) -> str:
    pending = machine.pending
    if isinstance(pending, MacroRun) and pending.running:
        return f"running {pending.running}"
    return "waiting for gesture"


def _slot_submenu_can_enter(machine: FsmMachine, payload: Any) -> str | None:
    if payload is None and machine.context.get("edit_slot") is None:
        return "macro slot (1-3) required"
    if payload is not None and payload not in (1, 2, 3):
        return f"macro slot must be 1-3, got {payload!r}"
    return None


def _slot_submenu_enter(machine: FsmMachine, arg: Any) -> None:
    if arg is not None:
        machine.context["edit_slot"] = arg


def _menu_describe_factory(state_id: str):
    def describe(machine: FsmMachine) -> str:
        if state_id == PLAYBACK_MENU and machine.context.get("delete_armed"):
            return "delete armed"
        if state_id == MACRO_SLOT_SUBMENU:
            return f"assign G{machine.context.get('edit_slot')}"
        return ""

    return describe


# ---------------------------------------------------------------------------
# builder


def build_interface_fsm(store, robot: RobotPort | None = None) -> FsmMachine:
    """Assemble the full interface machine over a task store and robot port."""
    robot = robot or NullRobot()
    try:
        sequence = list(store.load_sequence(WORKING_SEQUENCE).tasks)
    except NotFoundError:
        sequence = []
    try:
        macro = store.load_macro(DEFAULT_MACRO)
    except NotFoundError:
        macro = MacroBinding()

    context: dict[str, Any] = {
        "store": store,
        "robot": robot,
        "sequence": sequence,
        "macro": macro,
        "delete_armed": False,
        "edit_slot": None,
        "fsm_events": [],
    }

    def menu(state_id: str, title: str, provider, **extra) -> FsmState:
        return FsmState(
            state_id,
            StateKind.MENU,
            title,
            handlers=MENU_HANDLERS,
            options_provider=provider,
            on_select=_select_option,
            describe=_menu_describe_factory(state_id),
            **extra,
        )

    states = [
        menu(MAIN_MENU, "main", _main_options),
        menu(RECORD_MENU, "record", _record_options),
        menu(PLAYBACK_MENU, "playback", _playback_options),
        menu(SEQUENCE_MENU, "sequential playback", _sequence_options),
        menu(ADD_TASK_SUBMENU, "add task", _add_task_options),
        menu(MACRO_MENU, "macro mode", _macro_options),
        menu(
            MACRO_SLOT_SUBMENU,
            "assign task",
            _macro_slot_options,
            on_enter=_slot_submenu_enter,
            can_enter=_slot_submenu_can_enter,
        ),
        FsmState(
            RECORD_ACTION,
            StateKind.ACTION,
            "recording",
            handlers={4: TransitionSpec(HandlerKind.CONTEXT_COMMAND, ContextCommand.STOP_BACK)},
            can_enter=_record_can_enter,
            on_enter=_record_enter,
            on_command=_record_command,
            on_system=_record_system,
            describe=_record_describe,
        ),
        FsmState(
            PLAYBACK_ACTION,
            StateKind.ACTION,
            "playback",
            handlers={
                2: TransitionSpec(HandlerKind.CONTEXT_COMMAND, ContextCommand.PAUSE_RESUME),
                4: TransitionSpec(HandlerKind.CONTEXT_COMMAND, ContextCommand.STOP_BACK),
            },
            can_enter=_playback_can_enter,
            on_enter=_playback_enter,
            on_command=_playback_command,
            on_system=_playback_system,
            describe=_playback_describe,
        ),
        FsmState(
            MACRO_ACTION,
            StateKind.ACTION,
            "macro",
            handlers={
                1: TransitionSpec(HandlerKind.CONTEXT_COMMAND, ContextCommand.MACRO_FIRE, arg=1),
                2: TransitionSpec(HandlerKind.CONTEXT_COMMAND, ContextCommand.MACRO_FIRE, arg=2),
                3: TransitionSpec(HandlerKind.CONTEXT_COMMAND, ContextCommand.MACRO_FIRE, arg=3),
                4: TransitionSpec(HandlerKind.CONTEXT_COMMAND, ContextCommand.STOP_BACK),
            },
            on_enter=_macro_enter,
            on_command=_macro_command,
            on_system=_macro_system,
            describe=_macro_describe,
        ),
    ]
    machine = FsmMachine(states, initial=MAIN_MENU, context=context)
    return machine


# ---------------------------------------------------------------------------
# touchscreen conversion


def touch_to_input(machine: FsmMachine, option: int | None = None, button: str | None = None) -> Signal | Event | None:
    """Convert a raw touch to the equivalent core input.

    Pressing a menu option becomes an event that re-activates the current
    menu and selects that option; named buttons (action-state overlays)
    map onto the state's handler slots and travel as signals.
    """
    if (option is None) == (button is None):
        raise ValueError("exactly one of option/button required")
    if option is not None:
        slot = machine.context.get("edit_slot") if machine.current == MACRO_SLOT_SUBMENU else None
        return Event(target=machine.current, option=option, slot=slot)
    slot = BUTTON_SLOTS.get(button)
    if slot is None:
        return None
    return Signal(slot=slot)


def dispatch_touch(machine: FsmMachine, option: int | None = None, button: str | None = None) -> TransitionOutcome:
    converted = touch_to_input(machine, option=option, button=button)
    if converted is None:
        return TransitionOutcome(OutcomeKind.REJECTED, machine.current, error=f"unknown button {button!r}")
    if isinstance(converted, Signal):
        return machine.dispatch_signal(converted)
    return machine.dispatch_event(converted)
