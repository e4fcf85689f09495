"""Scripted virtual-user sessions over the four-task study protocol.

One session wires a fresh simulator, task store and interface machine to a
virtual clock, then walks the protocol: (1) play the pre-recorded cube
transport, (2) record the return move by simulated kinesthetic guidance,
(3) bind both moves to macro slots and fire them, (4) build and run the
two-action sequence. Between tasks an experimenter gate enforces the soft
time limit: a session past the limit stops before the next task, but a
task in progress is never interrupted.

The gesture-modality user issues commands through the stochastic
recognizer and keeps re-reading the GUI snapshot, so missed detections
turn into retries and misrecognitions into visible detours followed by
re-planning, like a human watching the screen. The touchscreen user
presses options directly, one event per command. Everything is driven by
one seeded RNG: identical seeds give identical sessions.
"""

from __future__ import annotations

import json
import logging
import random
from dataclasses import dataclass, field

from ..fsm.interface import (
    ADD_TASK_SUBMENU,
    MACRO_ACTION,
    MACRO_MENU,
    MACRO_SLOT_SUBMENU,
    MAIN_MENU,
    PLAYBACK_ACTION,
    PLAYBACK_MENU,
    RECORD_ACTION,
    RECORD_MENU,
    SEQUENCE_MENU,
    build_interface_fsm,
    dispatch_touch,
)
from ..fsm.machine import FsmMachine, OutcomeKind, PlaySequence, PlayTask, StateKind, SystemTrigger
from ..gestures.recognizer import GestureLabel, gesture_to_signal
from ..gestures.stochastic import stochastic_recognize
from ..robot.fixtures import ACTION_1, ACTION_2, MOVE_A_B, load_fixture_tasks
from ..robot.port import SimRobotPort
from ..robot.sim import GRIPPER_CLOSED, GRIPPER_OPEN, Pose, RobotSim
from ..store.memory import MemoryTaskStore
from .user import GESTURE, VirtualUserModel

logger = logging.getLogger(__name__)

LABEL_FOR_SLOT = {1: GestureLabel.G1, 2: GestureLabel.G2, 3: GestureLabel.G3, 4: GestureLabel.G4}

# named console buttons equivalent to each action-state handler slot
ACTION_BUTTONS = {
    (RECORD_ACTION, 4): "finish",
    (PLAYBACK_ACTION, 2): "pause",
    (PLAYBACK_ACTION, 4): "stop",
    (MACRO_ACTION, 1): "fire_1",
    (MACRO_ACTION, 2): "fire_2",
    (MACRO_ACTION, 3): "fire_3",
    (MACRO_ACTION, 4): "exit",
}

# how to reach each menu: (state to be in, option to select) steps from the main menu
MENU_CHAINS: dict[str, list[tuple[str, str]]] = {
    MAIN_MENU: [],
    RECORD_MENU: [(MAIN_MENU, "opt:record")],
    PLAYBACK_MENU: [(MAIN_MENU, "opt:playback")],
    SEQUENCE_MENU: [(MAIN_MENU, "opt:sequence")],
    MACRO_MENU: [(MAIN_MENU, "opt:macro")],
    ADD_TASK_SUBMENU: [(MAIN_MENU, "opt:sequence"), (SEQUENCE_MENU, "opt:add")],
}


class SessionError(Exception):
    pass


@dataclass(frozen=True)
class ScenarioConfig:
    soft_limit_s: float = 300.0
    move_duration_s: float = 62.0
    wave_duration_s: float = 20.0
    handover_duration_s: float = 25.0
    kt_duration_min_s: float = 8.0
    kt_duration_max_s: float = 15.0
    n_tasks: int = 4


@dataclass
class SessionLog:
    modality: str
    seed: int | str
    task_durations: list[float] = field(default_factory=list)  # tasks attempted, in order
    completed: list[bool] = field(default_factory=list)  # fixed length n_tasks
    inputs_per_task: list[int] = field(default_factory=list)
    total_s: float = 0.0

    def to_json(self) -> str:
        return json.dumps(
            {
                "modality": self.modality,
                "seed": self.seed,
                "task_durations": self.task_durations,
                "completed": self.completed,
                "inputs_per_task": self.inputs_per_task,
                "total_s": self.total_s,
            },
            separators=(",", ":"),
        )

    @classmethod
    def from_json(cls, line: str) -> "SessionLog":
        obj = json.loads(line)
        return cls(**obj)


class SessionDriver:
    """Runs one scripted session on a virtual clock."""

    def __init__(self, scenario: ScenarioConfig, user: VirtualUserModel, seed):
        self.scenario = scenario
        self.user = user
        self.seed = seed
        self.rng = random.Random(seed)
        self.clock = 0.0
        self.inputs = 0
        self.events: list[tuple[str, dict, float]] = []
        self.sim = RobotSim()
        self.store = MemoryTaskStore()
        load_fixture_tasks(
            self.sim,
            self.store,
            move_duration=scenario.move_duration_s,
            wave_duration=scenario.wave_duration_s,
            handover_duration=scenario.handover_duration_s,
        )
        self.machine: FsmMachine = build_interface_fsm(self.store, robot=SimRobotPort(self.sim))
        self.recorded_task: str | None = None
        self._guard = 0

    # -- clock and event plumbing ------------------------------------------------

    def advance(self, dt: float) -> None:
        """Advance the virtual clock, stepping playback at waypoint granularity."""
        remaining = dt
        while remaining > 1e-12:
            pb = self.sim.playback
            if pb is None or pb.paused:
                self.clock += remaining
                break
            boundaries = [w.t for w in pb.trajectory.waypoints if w.t > pb.t + 1e-12]
            target = boundaries[0] if boundaries else pb.trajectory.duration
            step = min(remaining, max(target - pb.t, 1e-9))
            self.sim.step(step)
            self.clock += step
            remaining -= step
            self._flush()

    def _flush(self) -> None:
        for kind, data in self.sim.drain_events():
            self.events.append((kind, data, self.clock))
            if kind == "playback-finished":
                self.machine.system_transition(SystemTrigger.PLAYBACK_FINISHED)
        for kind, data in self.machine.context["fsm_events"]:
            self.events.append((kind, data, self.clock))
            if kind == "record-saved":
                self.recorded_task = data["name"]
        self.machine.context["fsm_events"].clear()

    def wait_for_robot(self) -> None:
        while self.sim.busy:
            remaining = self.sim.time_to_completion()
            if remaining is None:
                raise SessionError("robot paused with no scripted resume")
            self.advance(max(remaining, 1e-9))
            self._flush()

    def seen(self, kind: str, since: float = 0.0, **match) -> float | None:
        """Clock of the first logged event of ``kind`` at/after ``since`` matching fields."""
        for k, data, t in self.events:
            if k == kind and t >= since and all(data.get(f) == v for f, v in match.items()):
                return t
        return None

    # -- low-level inputs ------------------------------------------------------------

    def _bump_guard(self) -> None:
        self._guard += 1
        if self._guard > 20_000:
            raise SessionError("session failed to converge (guard tripped)")

    def issue_gesture(self, label: GestureLabel) -> OutcomeKind:
        """Repeat the gesture until the recognizer reports a detection."""
        for _ in range(self.user.max_attempts_per_command):
            self._bump_guard()
            self.inputs += 1
            self.advance(self.user.decision_pause.draw(self.rng))
            self.advance(self.user.gesture_time.draw(self.rng))
            detection = stochastic_recognize(label, self.user.recognizer, self.rng, at_time=self.clock)
            if detection is None:
                continue
            if detection.timestamp > self.clock:
                self.advance(detection.timestamp - self.clock)
            outcome = self.machine.dispatch_signal(gesture_to_signal(detection))
            self._flush()
            return outcome.kind
        raise SessionError(f"gesture {label.value} never detected")

    def issue_touch(self, option: int | None = None, button: str | None = None) -> OutcomeKind:
        self._bump_guard()
        self.inputs += 1
        self.advance(self.user.decision_pause.draw(self.rng))
        self.advance(self.user.touch_time.draw(self.rng))
        outcome = dispatch_touch(self.machine, option=option, button=button)
        self._flush()
        return outcome.kind

    # -- goal-directed navigation ----------------------------------------------------

    def _select_step(self, option_id: str) -> None:
        """One command toward selecting ``option_id`` in the active menu."""
        if (
            option_id.startswith("task:")
            and self.machine.current == PLAYBACK_MENU
            and self.machine.context.get("delete_armed")
        ):
            # a misrecognized select armed delete mode; the user sees the
            # "delete armed" badge and toggles it off before picking a task
            option_id = "opt:delete"
        snap = self.machine.snapshot()
        if option_id not in snap.option_ids:
            raise SessionError(f"option {option_id!r} missing in {snap.state}")
        idx = snap.option_ids.index(option_id)
        if self.user.modality == GESTURE:
            slot = 1 if idx == snap.selector else (2 if idx > snap.selector else 3)
            self.issue_gesture(LABEL_FOR_SLOT[slot])
        else:
            self.issue_touch(option=idx)

    def action_command(self, slot: int) -> None:
        """Slot command in the active action state, via the modality's channel."""
        if self.user.modality == GESTURE:
            self.issue_gesture(LABEL_FOR_SLOT[slot])
        else:
            button = ACTION_BUTTONS.get((self.machine.current, slot))
            if button is None:
                raise SessionError(f"no button for slot {slot} in {self.machine.current}")
            self.issue_touch(button=button)

    def _step_toward(self, target_state: str) -> None:
        """One command moving the machine toward ``target_state``."""
        current = self.machine.current
        state = self.machine.active
        if state.kind is StateKind.ACTION:
            self.action_command(4)  # escape: finish/stop/exit
            return
        chain = MENU_CHAINS.get(target_state, MENU_CHAINS[MAIN_MENU])
        for chain_state, opener in reversed(chain):
            if current == chain_state:
                self._select_step(opener)
                return
        self._select_step("opt:back")

    def run_goal(self, target_state: str, option_id: str, success) -> None:
        """Issue commands until ``success(machine)`` holds.

        When at ``target_state``, work toward selecting ``option_id``;
        anywhere else, move toward ``target_state`` (escaping action
        states and backing out of wrong menus after misrecognitions).
        """
        while not success(self.machine):
            self._bump_guard()
            if self.machine.current == target_state:
                self._select_step(option_id)
            else:
                self._step_toward(target_state)

    # -- the four protocol tasks ---------------------------------------------------------

    def task_playback(self) -> float:
        start = self.clock
        self.run_goal(MAIN_MENU, "opt:playback", lambda m: m.current == PLAYBACK_MENU)
        self.run_goal(
            PLAYBACK_MENU,
            f"task:{MOVE_A_B}",
            lambda m: m.current == PLAYBACK_ACTION
            and isinstance(m.pending, PlayTask)
            and m.pending.name == MOVE_A_B,
        )
        self.wait_for_robot()
        finished = self.seen("playback-finished", since=start)
        if finished is None:
            raise SessionError("playback never finished")
        return self.clock

    def task_record(self) -> float:
        while self.recorded_task is None:
            self._bump_guard()
            self.run_goal(MAIN_MENU, "opt:record", lambda m: m.current == RECORD_MENU)
            self.run_goal(
                RECORD_MENU,
                "opt:new",
                lambda m: m.current == RECORD_ACTION
                and m.pending is not None
                and not getattr(m.pending, "overwrite", True),
            )
            self._feed_kt_guidance()
            while self.machine.current == RECORD_ACTION:
                self._bump_guard()
                self.action_command(4)
        return self.clock

    def _feed_kt_guidance(self) -> None:
        """Simulated kinesthetic teaching: a jittered arc returning the cube to A."""
        rng = self.rng
        duration = rng.uniform(self.scenario.kt_duration_min_s, self.scenario.kt_duration_max_s)
        pick = self.sim.world.cube
        place = self.sim.config.position_a
        apex = max(pick[2], place[2]) + rng.uniform(0.10, 0.20)
        bow = rng.uniform(-0.06, 0.06)
        mid = ((pick[0] + place[0]) / 2 + bow, (pick[1] + place[1]) / 2, apex)

        def above(p):
            return (p[0], p[1], p[2] + 0.12)

        script = [
            (0.00, above(pick), GRIPPER_OPEN),
            (0.15, pick, GRIPPER_OPEN),
            (0.25, pick, GRIPPER_CLOSED),
            (0.40, above(pick), GRIPPER_CLOSED),
            (0.60, mid, GRIPPER_CLOSED),
            (0.75, above(place), GRIPPER_CLOSED),
            (0.85, place, GRIPPER_CLOSED),
            (0.92, place, GRIPPER_OPEN),
            (1.00, above(place), GRIPPER_OPEN),
        ]
        last = 0.0
        for frac, pos, grip in script:
            self.advance(max((frac - last) * duration, 1e-6))
            last = frac
            self.sim.feed_guidance(Pose(pos, grip), self.clock)

    def task_macro(self) -> float:
        recorded = self.recorded_task
        self.run_goal(MAIN_MENU, "opt:macro", lambda m: m.current == MACRO_MENU)
        self._bind_macro_slot(1, MOVE_A_B)
        self._bind_macro_slot(2, recorded)
        self.run_goal(MACRO_MENU, "opt:run", lambda m: m.current == MACRO_ACTION)
        self._fire_macro(1, MOVE_A_B)
        self._fire_macro(2, recorded)
        return self.clock

    def _bind_macro_slot(self, slot: int, task: str) -> None:
        while self.machine.context["macro"].get(slot) != task:
            self._bump_guard()
            current = self.machine.current
            if current == MACRO_SLOT_SUBMENU:
                if self.machine.context.get("edit_slot") == slot:
                    self._select_step(f"task:{task}")
                else:
                    self._select_step("opt:back")  # editing the wrong slot
            elif current == MACRO_MENU:
                self._select_step(f"slot:{slot}")
            else:
                self._step_toward(MACRO_MENU)

    def _fire_macro(self, slot: int, task: str) -> None:
        while True:
            self._bump_guard()
            if self.machine.context["macro"].get(slot) != task:
                # a stray selection in the slot submenu re-bound it; fix first
                self._bind_macro_slot(slot, task)
                continue
            if self.machine.current != MACRO_ACTION:
                self.run_goal(MACRO_MENU, "opt:run", lambda m: m.current == MACRO_ACTION)
                continue
            if self.sim.busy:
                self.wait_for_robot()  # a misfired task plays out first
                continue
            mark = self.clock
            self.action_command(slot)
            if self.seen("macro-fired", since=mark, name=task) is not None:
                self.wait_for_robot()
                return

    def task_sequence(self) -> float:
        start = self.clock
        while True:
            self._bump_guard()
            machine = self.machine
            if machine.current == PLAYBACK_ACTION and isinstance(machine.pending, PlaySequence):
                break
            items = machine.context["sequence"]
            if ACTION_1 not in items:
                self._add_sequence_item(ACTION_1)
            elif ACTION_2 not in items:
                self._add_sequence_item(ACTION_2)
            elif machine.current == SEQUENCE_MENU:
                self._select_step("opt:run")
            else:
                self._step_toward(SEQUENCE_MENU)
        self.wait_for_robot()
        finished = self.seen("sequence-finished", since=start)
        if finished is None:
            raise SessionError("sequence never finished")
        return self.clock

    def _add_sequence_item(self, task: str) -> None:
        before = list(self.machine.context["sequence"])
        self.run_goal(SEQUENCE_MENU, "opt:add", lambda m: m.current == ADD_TASK_SUBMENU)
        self.run_goal(
            ADD_TASK_SUBMENU,
            f"task:{task}",
            lambda m: m.context["sequence"].count(task) > before.count(task),
        )

    # -- whole protocol -------------------------------------------------------------------

    def run(self) -> SessionLog:
        log = SessionLog(modality=self.user.modality, seed=self.seed, completed=[False] * self.scenario.n_tasks)
        runners = [self.task_playback, self.task_record, self.task_macro, self.task_sequence]
        task_start = 0.0
        for k, runner in enumerate(runners[: self.scenario.n_tasks]):
            inputs_before = self.inputs
            end = runner()
            log.task_durations.append(end - task_start)
            log.inputs_per_task.append(self.inputs - inputs_before)
            log.completed[k] = True
            task_start = end
            # experimenter gate: enough time left for the next task?
            if k + 1 < self.scenario.n_tasks and self.clock >= self.scenario.soft_limit_s:
                logger.info(
                    "session %s stopped after task %d at %.1fs (soft limit %.0fs)",
                    self.seed, k + 1, self.clock, self.scenario.soft_limit_s,
                )
                break
        log.total_s = self.clock
        return log


def run_session(scenario: ScenarioConfig, user: VirtualUserModel, seed) -> SessionLog:
    return SessionDriver(scenario, user, seed).run()
