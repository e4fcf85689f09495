"""Finite state machine driving the interaction logic.

The machine itself is generic: it owns a set of states, routes *signals*
through the active state's four command-handler slots, and lets *events*
activate any state directly (long jumps). All behaviour specific to the
menu/action interface (which options exist, what selecting them does) is
installed by the builder in :mod:`hrimux.fsm.interface` through option
actions, entry hooks and command closures.

Two input schemas:
  - Signal: a bare command identifier (slot 1..4). The active state either
    binds that slot to a transition or ignores it.
  - Event: a valued command naming a target state plus optional arguments
    (task name, option index, macro slot). Activates the target directly.

Dispatch is total: invalid input yields a ``REJECTED`` outcome and leaves
the machine untouched, it never raises. Producers feed one serialized
queue; each dispatch is atomic with respect to the others.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Any, Callable

logger = logging.getLogger(__name__)

HANDLER_SLOTS = (1, 2, 3, 4)


class StateKind(str, Enum):
    MENU = "menu"
    ACTION = "action"


class HandlerKind(str, Enum):
    SELECTOR_UP = "selector-up"
    SELECTOR_DOWN = "selector-down"
    SELECT_CURRENT = "select-current"
    CONTEXT_COMMAND = "context-command"


class ContextCommand(str, Enum):
    PAUSE_RESUME = "pause-resume"
    STOP_BACK = "stop-back"
    MACRO_FIRE = "macro-fire"


class OutcomeKind(str, Enum):
    STATE_CHANGED = "state-changed"
    SELECTOR_MOVED = "selector-moved"
    IGNORED = "ignored"
    ACTION_EFFECT = "action-effect"
    REJECTED = "rejected"


class SystemTrigger(str, Enum):
    PLAYBACK_FINISHED = "playback-finished"
    SEQUENCE_FINISHED = "sequence-finished"
    RECORD_SAVED = "record-saved"


@dataclass(frozen=True)
class Signal:
    """Discrete command routed through the active state's handler slots."""

    slot: int
    timestamp: float = 0.0

    def __post_init__(self) -> None:
        if self.slot not in HANDLER_SLOTS:
            raise ValueError(f"signal slot must be in {HANDLER_SLOTS}, got {self.slot}")


@dataclass(frozen=True)
class Event:
    """Valued command that activates a target state directly.

    At most one of ``task``/``option`` is meaningful for a given target;
    ``slot`` parameterizes menus that edit a macro slot.
    """

    target: str
    task: str | None = None
    option: int | None = None
    slot: int | None = None
    timestamp: float = 0.0


@dataclass(frozen=True)
class TransitionSpec:
    kind: HandlerKind
    command: ContextCommand | None = None
    arg: int | None = None


@dataclass(frozen=True)
class TransitionOutcome:
    kind: OutcomeKind
    state: str
    detail: str = ""
    error: str | None = None

    @property
    def mutated(self) -> bool:
        return self.kind in (
            OutcomeKind.STATE_CHANGED,
            OutcomeKind.SELECTOR_MOVED,
            OutcomeKind.ACTION_EFFECT,
        )


@dataclass(frozen=True)
class MenuOption:
    """One selectable entry of a menu state.

    ``id`` carries the contract (labels are presentation only). ``action``
    is interpreted by the interface layer via the owning state's
    ``on_select`` closure.
    """

    id: str
    label: str
    action: Any = None


@dataclass(frozen=True)
class GuiStateSnapshot:
    """Pure, renderer-ready projection of the active state.

    Two identical machine states produce equal snapshots; the canonical
    wire encoding makes them byte-identical.
    """

    state: str
    kind: str
    title: str
    options: tuple[str, ...]
    option_ids: tuple[str, ...]
    selector: int
    context: str


# ---------------------------------------------------------------------------
# Pending action payloads


@dataclass(frozen=True)
class RecordTarget:
    name: str
    overwrite: bool


@dataclass(frozen=True)
class PlayTask:
    name: str
    paused: bool = False


@dataclass(frozen=True)
class PlaySequence:
    name: str
    items: tuple[str, ...]
    index: int = 0
    paused: bool = False


@dataclass(frozen=True)
class MacroRun:
    binding: tuple[tuple[int, str | None], ...]
    running: str | None = None


PendingContext = RecordTarget | PlayTask | PlaySequence | MacroRun


class FsmState:
    """One interaction state: static identity plus installed behaviour.

    Menu states expose options (possibly recomputed from a provider on
    every entry) and a selector; action states expose context commands.
    """

    def __init__(
        self,
        id: str,
        kind: StateKind,
        title: str,
        handlers: dict[int, TransitionSpec] | None = None,
        options_provider: Callable[["FsmMachine"], list[MenuOption]] | None = None,
        on_enter: Callable[["FsmMachine", Any], None] | None = None,
        can_enter: Callable[["FsmMachine", Any], str | None] | None = None,
        on_select: Callable[["FsmMachine", MenuOption], TransitionOutcome] | None = None,
        on_command: Callable[["FsmMachine", ContextCommand, int | None], TransitionOutcome] | None = None,
        on_system: Callable[["FsmMachine", SystemTrigger], TransitionOutcome | None] | None = None,
        describe: Callable[["FsmMachine"], str] | None = None,
    ):
        handlers = dict(handlers or {})
        if any(slot not in HANDLER_SLOTS for slot in handlers):
            raise ValueError(f"state {id!r}: handler slots must be within {HANDLER_SLOTS}")
        if len(handlers) > len(HANDLER_SLOTS):
            raise ValueError(f"state {id!r}: at most {len(HANDLER_SLOTS)} handlers allowed")
        if kind is StateKind.MENU and options_provider is None:
            raise ValueError(f"menu state {id!r} needs an options provider")
        self.id = id
        self.kind = kind
        self.title = title
        self.handlers = handlers
        self.options_provider = options_provider
        self.on_enter = on_enter
        self.can_enter = can_enter
        self.on_select = on_select
        self.on_command = on_command
        self.on_system = on_system
        self.describe = describe
        self.options: list[MenuOption] = []
        self.selector = 0

    @property
    def transition_count(self) -> int:
        """|T_i|: number of installed command handlers."""
        return len(self.handlers)

    def refresh_options(self, machine: "FsmMachine") -> None:
        if self.options_provider is not None:
            self.options = self.options_provider(machine)
            if self.kind is StateKind.MENU and not self.options:
                raise RuntimeError(f"menu state {self.id!r} produced no options")
            self.selector = min(self.selector, len(self.options) - 1) if self.options else 0


class FsmMachine:
    """State registry plus the dispatch rules shared by all interfaces."""

    def __init__(self, states: list[FsmState], initial: str, context: dict[str, Any] | None = None):
        self.states: dict[str, FsmState] = {}
        for state in states:
            if state.id in self.states:
                raise ValueError(f"duplicate state id {state.id!r}")
            self.states[state.id] = state
        if initial not in self.states:
            raise ValueError(f"initial state {initial!r} not defined")
        for state in self.states.values():
            if state.transition_count > len(HANDLER_SLOTS):
                raise ValueError(f"state {state.id!r} exceeds handler budget")
        self.context: dict[str, Any] = context or {}
        self.pending: PendingContext | None = None
        self.current = initial
        self._enter_state(initial, arg=None, pending=None)

    # -- projections --------------------------------------------------------

    @property
    def active(self) -> FsmState:
        return self.states[self.current]

    def snapshot(self) -> GuiStateSnapshot:
        state = self.active
        return GuiStateSnapshot(
            state=state.id,
            kind=state.kind.value,
            title=state.title,
            options=tuple(opt.label for opt in state.options),
            option_ids=tuple(opt.id for opt in state.options),
            selector=state.selector,
            context=state.describe(self) if state.describe else "",
        )

    def validate(self) -> None:
        """Assert the structural invariants; used by tests and fuzzing."""
        assert self.current in self.states, f"current state {self.current!r} unknown"
        for state in self.states.values():
            assert state.transition_count <= len(HANDLER_SLOTS)
        state = self.active
        if state.kind is StateKind.MENU:
            assert state.options, f"menu {state.id!r} has no options"
            assert 0 <= state.selector < len(state.options)

    # -- dispatch ------------------------------------------------------------

    def dispatch_signal(self, signal: Signal) -> TransitionOutcome:
        state = self.active
        spec = state.handlers.get(signal.slot)
        if spec is None:
            return TransitionOutcome(OutcomeKind.IGNORED, self.current, detail=f"slot {signal.slot} unbound")
        if spec.kind is HandlerKind.SELECTOR_DOWN:
            return self._move_selector(state, +1)
        if spec.kind is HandlerKind.SELECTOR_UP:
            return self._move_selector(state, -1)
        if spec.kind is HandlerKind.SELECT_CURRENT:
            return self._select(state, state.selector)
        if spec.kind is HandlerKind.CONTEXT_COMMAND:
            if state.on_command is None:
                return TransitionOutcome(OutcomeKind.IGNORED, self.current, detail="no command handler")
            return state.on_command(self, spec.command, spec.arg)
        return TransitionOutcome(OutcomeKind.IGNORED, self.current)

    def dispatch_event(self, event: Event) -> TransitionOutcome:
        target = self.states.get(event.target)
        if target is None:
            return TransitionOutcome(
                OutcomeKind.REJECTED, self.current, error=f"unknown state {event.target!r}"
            )
        payload = self._event_entry_payload(event)
        if target.can_enter is not None:
            problem = target.can_enter(self, payload)
            if problem:
                return TransitionOutcome(OutcomeKind.REJECTED, self.current, error=problem)
        if event.option is not None and target.kind is StateKind.MENU:
            # validate against the post-entry option list so a rejected
            # event leaves the machine untouched
            count = len(self._preview_options(target, event))
            if not (0 <= event.option < count):
                return TransitionOutcome(
                    OutcomeKind.REJECTED, self.current, error=f"option index {event.option} out of range"
                )
        arg: Any = event.slot if event.slot is not None else event.task
        outcome = self._enter_state(target.id, arg=arg, pending=payload)
        if event.option is not None and target.kind is StateKind.MENU:
            return self._select(target, event.option)
        return outcome

    def _preview_options(self, target: FsmState, event: Event) -> list[MenuOption]:
        """Evaluate a menu's provider as it would run after entry, without mutating."""
        saved_armed = self.context.get("delete_armed")
        saved_slot = self.context.get("edit_slot")
        self.context["delete_armed"] = False
        if event.slot is not None:
            self.context["edit_slot"] = event.slot
        try:
            return target.options_provider(self) if target.options_provider else []
        finally:
            self.context["delete_armed"] = saved_armed
            self.context["edit_slot"] = saved_slot

    def system_transition(self, trigger: SystemTrigger) -> TransitionOutcome:
        state = self.active
        if state.on_system is not None:
            outcome = state.on_system(self, trigger)
            if outcome is not None:
                return outcome
        logger.warning("system trigger %s ignored in state %s", trigger.value, self.current)
        return TransitionOutcome(OutcomeKind.IGNORED, self.current, detail=f"{trigger.value} not applicable")

    # -- internals -----------------------------------------------------------

    def _event_entry_payload(self, event: Event) -> Any:
        if event.task is not None:
            return event.task
        if event.slot is not None:
            return event.slot
        return None

    def _move_selector(self, state: FsmState, delta: int) -> TransitionOutcome:
        if state.kind is not StateKind.MENU or not state.options:
            return TransitionOutcome(OutcomeKind.IGNORED, self.current, detail="no selector here")
        new = min(max(state.selector + delta, 0), len(state.options) - 1)
        if new == state.selector:
            return TransitionOutcome(OutcomeKind.IGNORED, self.current, detail="selector saturated")
        state.selector = new
        return TransitionOutcome(OutcomeKind.SELECTOR_MOVED, self.current, detail=f"selector={new}")

    def _select(self, state: FsmState, index: int) -> TransitionOutcome:
        if state.kind is not StateKind.MENU:
            return TransitionOutcome(OutcomeKind.IGNORED, self.current, detail="not a menu")
        if not (0 <= index < len(state.options)):
            return TransitionOutcome(OutcomeKind.REJECTED, self.current, error=f"option index {index} out of range")
        state.selector = index
        option = state.options[index]
        if state.on_select is None:
            return TransitionOutcome(OutcomeKind.IGNORED, self.current, detail="select unhandled")
        return state.on_select(self, option)

    def activate(self, state_id: str, arg: Any = None, pending: Any = None) -> TransitionOutcome:
        """Activate a state directly. Used by option actions and events."""
        if state_id not in self.states:
            return TransitionOutcome(OutcomeKind.REJECTED, self.current, error=f"unknown state {state_id!r}")
        target = self.states[state_id]
        if target.can_enter is not None:
            problem = target.can_enter(self, pending if pending is not None else arg)
            if problem:
                return TransitionOutcome(OutcomeKind.REJECTED, self.current, error=problem)
        return self._enter_state(state_id, arg=arg, pending=pending)

    def _enter_state(self, state_id: str, arg: Any, pending: Any) -> TransitionOutcome:
        target = self.states[state_id]
        self.current = state_id
        self.context["delete_armed"] = False
        if target.kind is StateKind.MENU:
            # stale action payloads must not leak into menu navigation
            self.pending = None
        else:
            self.pending = pending
        if target.on_enter is not None:
            target.on_enter(self, arg)
        target.refresh_options(self)
        target.selector = 0
        return TransitionOutcome(OutcomeKind.STATE_CHANGED, self.current, detail=f"entered {state_id}")
