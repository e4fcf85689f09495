"""Live interactive stack: bus, interaction core, simulator, recognizer.

Everything runs on one asyncio loop. Producers (TCP sessions, websocket
bridges, the simulator ticker, the gesture recognizer) publish onto the
hub; the interaction core consumes signal/event/touch/session channels
from a single subscription, dispatches serially, and publishes a fresh
GUI snapshot after every mutating outcome. The simulator ticks on wall
time and reports robot state at a fixed rate plus completion events that
feed the core's system transitions.
"""

from __future__ import annotations

import asyncio
import logging
import math
import time
from pathlib import Path

from ..bus.hub import BusHub
from ..bus.protocol import (
    BusMessage,
    GuidanceMessage,
    ImuMessage,
    RobotStateMessage,
    SessionNote,
    TouchMessage,
    encode_message,
)
from ..bus.server import BusServer
from ..config import AppConfig
from ..fsm.interface import build_interface_fsm, dispatch_touch
from ..fsm.machine import Event, FsmMachine, Signal, SystemTrigger
from ..gestures.recognizer import (
    GestureLabel,
    ImuSample,
    OnlineRecognizer,
    calibrate_templates,
    gesture_to_signal,
)
from ..robot.fixtures import load_fixture_tasks
from ..robot.port import SimRobotPort
from ..robot.sim import Pose, RobotSim
from ..store.files import FileTaskStore

logger = logging.getLogger(__name__)

_TRIGGERS = {
    "playback-finished": SystemTrigger.PLAYBACK_FINISHED,
    "sequence-finished": SystemTrigger.SEQUENCE_FINISHED,
    "record-saved": SystemTrigger.RECORD_SAVED,
}


def default_templates(window: int = 10):
    """Synthetic wrist-motion templates so live gesture input works out of the box."""
    shapes = {
        GestureLabel.G1: ("accel", 2, +6.0),
        GestureLabel.G2: ("accel", 2, -6.0),
        GestureLabel.G3: ("gyro", 0, +4.0),
        GestureLabel.G4: ("gyro", 0, -4.0),
    }
    trials = {}
    for label, (kind, axis, amp) in shapes.items():
        samples = []
        for i in range(window):
            accel = [0.0, 0.0, 9.81]
            gyro = [0.0, 0.0, 0.0]
            value = amp * math.sin(math.pi * i / (window - 1))
            (accel if kind == "accel" else gyro)[axis] += value
            samples.append(ImuSample(i * 0.1, tuple(accel), tuple(gyro)))
        trials[label] = [samples]
    return calibrate_templates(trials, window=window)


class LiveStack:
    def __init__(self, config: AppConfig):
        self.config = config
        self.hub = BusHub(buffer_limit=config.buffer_limit)
        self.sim = RobotSim()
        self.store = FileTaskStore(config.store_root)
        if config.preload_fixtures and not self.store.list_tasks():
            load_fixture_tasks(
                self.sim,
                self.store,
                move_duration=config.move_duration_s,
                wave_duration=config.wave_duration_s,
                handover_duration=config.handover_duration_s,
            )
        self.machine: FsmMachine = build_interface_fsm(self.store, robot=SimRobotPort(self.sim))
        self.bus_server: BusServer | None = None
        templates, threshold = default_templates()
        self.recognizer = OnlineRecognizer(templates, threshold)
        self._tasks: list[asyncio.Task] = []
        self._seq = {"gui": 0, "robot": 0, "session": 0, "signal": 0}
        self._log_file = None
        self._started = time.monotonic()

    # -- lifecycle ----------------------------------------------------------------

    async def start(self) -> None:
        if self.config.log_path:
            Path(self.config.log_path).parent.mkdir(parents=True, exist_ok=True)
            self._log_file = open(self.config.log_path, "ab")
            logger_sub = self.hub.subscribe("*", name="session-log")
            self._tasks.append(asyncio.create_task(self._log_loop(logger_sub)))
        if self.config.bus_port >= 0:
            self.bus_server = BusServer(self.hub, self.config.bus_host, self.config.bus_port)
            await self.bus_server.start()
        core_sub = self.hub.subscribe(["signal", "event", "touch", "session"], name="core")
        self._tasks.append(asyncio.create_task(self._core_loop(core_sub)))
        imu_sub = self.hub.subscribe(["imu"], name="recognizer")
        self._tasks.append(asyncio.create_task(self._recognizer_loop(imu_sub)))
        guidance_sub = self.hub.subscribe(["guidance"], name="guidance")
        self._tasks.append(asyncio.create_task(self._guidance_loop(guidance_sub)))
        self._tasks.append(asyncio.create_task(self._sim_loop()))
        self.publish_gui()
        logger.info("live stack started (store=%s)", self.config.store_root)

    async def stop(self) -> None:
        for task in self._tasks:
            task.cancel()
        if self._tasks:
            await asyncio.gather(*self._tasks, return_exceptions=True)
        self._tasks.clear()
        if self.bus_server is not None:
            await self.bus_server.stop()
        self.hub.close_all()
        if self._log_file is not None:
            self._log_file.close()
            self._log_file = None

    # -- publishing helpers ---------------------------------------------------------

    def now(self) -> float:
        return time.monotonic() - self._started

    def _publish(self, channel: str, payload) -> None:
        self._seq[channel] = self._seq.get(channel, 0) + 1
        self.hub.publish(BusMessage(channel=channel, seq=self._seq[channel], t=self.now(), payload=payload))

    def publish_gui(self) -> None:
        self._publish("gui", self.machine.snapshot())

    def publish_robot_state(self) -> None:
        self._publish("robot", RobotStateMessage.from_world(self.sim.world, self.now()))

    # -- consumers --------------------------------------------------------------------

    async def _core_loop(self, sub) -> None:
        while True:
            msg = await sub.get()
            if msg is None:
                return
            outcome = self.dispatch(msg)
            if outcome is not None and outcome.mutated:
                self.publish_gui()

    def dispatch(self, msg: BusMessage):
        payload = msg.payload
        if isinstance(payload, Signal):
            return self.machine.dispatch_signal(payload)
        if isinstance(payload, Event):
            return self.machine.dispatch_event(payload)
        if isinstance(payload, TouchMessage):
            return dispatch_touch(self.machine, option=payload.option, button=payload.button)
        if isinstance(payload, SessionNote) and payload.kind in _TRIGGERS:
            return self.machine.system_transition(_TRIGGERS[payload.kind])
        return None

    async def _recognizer_loop(self, sub) -> None:
        while True:
            msg = await sub.get()
            if msg is None:
                return
            imu: ImuMessage = msg.payload
            try:
                detection = self.recognizer.ingest_sample(ImuSample(imu.t, imu.accel, imu.gyro))
            except ValueError as exc:
                logger.warning("imu sample rejected: %s", exc)
                continue
            if detection is not None:
                self._publish(
                    "session",
                    SessionNote.make(
                        "gesture-detected",
                        t=self.now(),
                        label=detection.label.value,
                        confidence=round(detection.confidence, 4),
                    ),
                )
                self._publish("signal", gesture_to_signal(detection))

    async def _guidance_loop(self, sub) -> None:
        while True:
            msg = await sub.get()
            if msg is None:
                return
            g: GuidanceMessage = msg.payload
            if self.sim.recording is None:
                continue
            try:
                self.sim.feed_guidance(Pose(self._clamp(g.pos), g.grip), g.t)
            except Exception as exc:
                logger.warning("guidance rejected: %s", exc)

    def _clamp(self, pos):
        lo, hi = self.sim.config.workspace_min, self.sim.config.workspace_max
        return tuple(min(max(pos[i], lo[i]), hi[i]) for i in range(3))

    async def _sim_loop(self) -> None:
        dt = 1.0 / self.config.tick_hz
        robot_every = max(int(self.config.tick_hz / self.config.robot_rate_hz), 1)
        tick = 0
        while True:
            await asyncio.sleep(dt)
            self.sim.step(dt)
            for kind, data in self.sim.drain_events():
                self._publish("session", SessionNote.make(kind, t=self.now(), **data))
            for kind, data in self.machine.context["fsm_events"]:
                self._publish("session", SessionNote.make(kind, t=self.now(), **data))
            self.machine.context["fsm_events"].clear()
            tick += 1
            if tick % robot_every == 0:
                self.publish_robot_state()

    async def _log_loop(self, sub) -> None:
        while True:
            msg = await sub.get()
            if msg is None:
                return
            self._log_file.write(encode_message(msg))
            self._log_file.flush()
