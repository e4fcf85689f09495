"""Wire protocol of the interaction bus.

One message per line: a UTF-8 JSON object, newline-terminated, with the
fixed top-level key order ``channel, seq, t, payload``. Payload keys are
likewise emitted in a fixed per-channel order, so encoding is canonical:
the same message always yields byte-identical lines and
``encode(decode(line)) == line`` for lines this module produced.

Channels: imu, touch, signal, event, gui, robot, guidance, session.
Schemas are documented field-by-field in protocol.md at the repo root;
decode validates strictly and names the violated field. Timestamps are
producer-local seconds; ``seq`` increases monotonically per producer
(violations are flagged by the delivery layer, not rejected here).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

from ..fsm.machine import Event, GuiStateSnapshot, Signal
from ..robot.sim import GRIPPER_CLOSED, GRIPPER_OPEN, Pose, WorldState

CHANNELS = ("imu", "touch", "signal", "event", "gui", "robot", "guidance", "session")

MAX_LINE_BYTES = 1_000_000


class ProtocolError(Exception):
    pass


@dataclass(frozen=True)
class ImuMessage:
    t: float
    accel: tuple[float, float, float]
    gyro: tuple[float, float, float]


@dataclass(frozen=True)
class TouchMessage:
    t: float
    option: int | None = None
    button: str | None = None

    def __post_init__(self) -> None:
        if (self.option is None) == (self.button is None):
            raise ProtocolError("touch message needs exactly one of option/button")


@dataclass(frozen=True)
class RobotStateMessage:
    t: float
    arms: tuple[tuple[str, Pose], ...]
    cube: tuple[float, float, float]
    attached: str | None

    @classmethod
    def from_world(cls, world: WorldState, t: float) -> "RobotStateMessage":
        return cls(
            t=t,
            arms=tuple(sorted((arm, pose) for arm, pose in world.arms.items())),
            cube=world.cube,
            attached=world.attached,
        )


@dataclass(frozen=True)
class GuidanceMessage:
    t: float
    arm: str
    pos: tuple[float, float, float]
    grip: str


@dataclass(frozen=True)
class SessionNote:
    t: float
    kind: str
    data: tuple[tuple[str, Any], ...] = ()

    @classmethod
    def make(cls, kind: str, t: float = 0.0, **data: Any) -> "SessionNote":
        return cls(t=t, kind=kind, data=tuple(sorted(data.items())))

    def get(self, key: str, default: Any = None) -> Any:
        return dict(self.data).get(key, default)


Payload = (
    ImuMessage
    | TouchMessage
    | Signal
    | Event
    | GuiStateSnapshot
    | RobotStateMessage
    | GuidanceMessage
    | SessionNote
)


@dataclass(frozen=True)
class BusMessage:
    channel: str
    seq: int
    t: float
    payload: Payload

    def __post_init__(self) -> None:
        if self.channel not in CHANNELS:
            raise ProtocolError(f"unknown channel {self.channel!r}")


# -- field helpers -----------------------------------------------------------------


def _need(obj: dict, field: str, kinds, channel: str, nullable: bool = False):
    if field not in obj:
        raise ProtocolError(f"{channel}: missing field {field!r}")
    value = obj[field]
    if value is None:
        if nullable:
            return None
        raise ProtocolError(f"{channel}: field {field!r} must not be null")
    if not isinstance(value, kinds) or isinstance(value, bool):
        raise ProtocolError(f"{channel}: field {field!r} has wrong type {type(value).__name__}")
    return value


def _vec3(obj: dict, field: str, channel: str) -> tuple[float, float, float]:
    value = _need(obj, field, list, channel)
    if len(value) != 3 or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value):
        raise ProtocolError(f"{channel}: field {field!r} must be a 3-vector of numbers")
    return (float(value[0]), float(value[1]), float(value[2]))


def _no_extras(obj: dict, allowed: tuple[str, ...], channel: str) -> None:
    extras = set(obj) - set(allowed)
    if extras:
        raise ProtocolError(f"{channel}: unexpected field(s) {sorted(extras)}")


def _grip(value: str, channel: str) -> str:
    if value not in (GRIPPER_OPEN, GRIPPER_CLOSED):
        raise ProtocolError(f"{channel}: gripper must be open/closed, got {value!r}")
    return value


# -- per-channel payload codecs (fixed key order on encode, strict on decode) -------


def _imu_fields(p: ImuMessage) -> dict:
    return {"t": p.t, "accel": list(p.accel), "gyro": list(p.gyro)}


def _imu_parse(obj: dict) -> ImuMessage:
    _no_extras(obj, ("t", "accel", "gyro"), "imu")
    return ImuMessage(
        t=float(_need(obj, "t", (int, float), "imu")),
        accel=_vec3(obj, "accel", "imu"),
        gyro=_vec3(obj, "gyro", "imu"),
    )


def _touch_fields(p: TouchMessage) -> dict:
    return {"t": p.t, "option": p.option, "button": p.button}


def _touch_parse(obj: dict) -> TouchMessage:
    _no_extras(obj, ("t", "option", "button"), "touch")
    option = _need(obj, "option", int, "touch", nullable=True)
    button = _need(obj, "button", str, "touch", nullable=True)
    if (option is None) == (button is None):
        raise ProtocolError("touch: exactly one of option/button required")
    return TouchMessage(t=float(_need(obj, "t", (int, float), "touch")), option=option, button=button)


def _signal_fields(p: Signal) -> dict:
    return {"slot": p.slot, "t": p.timestamp}


def _signal_parse(obj: dict) -> Signal:
    _no_extras(obj, ("slot", "t"), "signal")
    slot = _need(obj, "slot", int, "signal")
    if slot not in (1, 2, 3, 4):
        raise ProtocolError(f"signal: slot must be 1-4, got {slot}")
    return Signal(slot=slot, timestamp=float(_need(obj, "t", (int, float), "signal")))


def _event_fields(p: Event) -> dict:
    return {"target": p.target, "task": p.task, "option": p.option, "slot": p.slot, "t": p.timestamp}


def _event_parse(obj: dict) -> Event:
    _no_extras(obj, ("target", "task", "option", "slot", "t"), "event")
    return Event(
        target=_need(obj, "target", str, "event"),
        task=_need(obj, "task", str, "event", nullable=True),
        option=_need(obj, "option", int, "event", nullable=True),
        slot=_need(obj, "slot", int, "event", nullable=True),
        timestamp=float(_need(obj, "t", (int, float), "event")),
    )


def _gui_fields(p: GuiStateSnapshot) -> dict:
    return {
        "state": p.state,
        "kind": p.kind,
        "title": p.title,
        "options": list(p.options),
        "option_ids": list(p.option_ids),
        "selector": p.selector,
        "context": p.context,
    }


def _gui_parse(obj: dict) -> GuiStateSnapshot:
    fields = ("state", "kind", "title", "options", "option_ids", "selector", "context")
    _no_extras(obj, fields, "gui")
    options = _need(obj, "options", list, "gui")
    option_ids = _need(obj, "option_ids", list, "gui")
    if not all(isinstance(v, str) for v in options + option_ids):
        raise ProtocolError("gui: options/option_ids must be strings")
    return GuiStateSnapshot(
        state=_need(obj, "state", str, "gui"),
        kind=_need(obj, "kind", str, "gui"),
        title=_need(obj, "title", str, "gui"),
        options=tuple(options),
        option_ids=tuple(option_ids),
        selector=_need(obj, "selector", int, "gui"),
        context=_need(obj, "context", str, "gui"),
    )


def _robot_fields(p: RobotStateMessage) -> dict:
    return {
        "t": p.t,
        "arms": {
            arm: {"pos": list(pose.position), "grip": pose.gripper} for arm, pose in p.arms
        },
        "cube": list(p.cube),
        "attached": p.attached,
    }


def _robot_parse(obj: dict) -> RobotStateMessage:
    _no_extras(obj, ("t", "arms", "cube", "attached"), "robot")
    arms_obj = _need(obj, "arms", dict, "robot")
    arms = []
    for arm in sorted(arms_obj):
        entry = arms_obj[arm]
        if arm not in ("left", "right"):
            raise ProtocolError(f"robot: unknown arm {arm!r}")
        if not isinstance(entry, dict):
            raise ProtocolError("robot: arm entry must be an object")
        _no_extras(entry, ("pos", "grip"), "robot.arm")
        arms.append((arm, Pose(_vec3(entry, "pos", "robot"), _grip(_need(entry, "grip", str, "robot"), "robot"))))
    attached = _need(obj, "attached", str, "robot", nullable=True)
    if attached is not None and attached not in ("left", "right"):
        raise ProtocolError(f"robot: attached must be left/right/null, got {attached!r}")
    return RobotStateMessage(
        t=float(_need(obj, "t", (int, float), "robot")),
        arms=tuple(arms),
        cube=_vec3(obj, "cube", "robot"),
        attached=attached,
    )


def _guidance_fields(p: GuidanceMessage) -> dict:
    return {"t": p.t, "arm": p.arm, "pos": list(p.pos), "grip": p.grip}


def _guidance_parse(obj: dict) -> GuidanceMessage:
    _no_extras(obj, ("t", "arm", "pos", "grip"), "guidance")
    arm = _need(obj, "arm", str, "guidance")
    if arm not in ("left", "right"):
        raise ProtocolError(f"guidance: arm must be left/right, got {arm!r}")
    return GuidanceMessage(
        t=float(_need(obj, "t", (int, float), "guidance")),
        arm=arm,
        pos=_vec3(obj, "pos", "guidance"),
        grip=_grip(_need(obj, "grip", str, "guidance"), "guidance"),
    )


def _session_fields(p: SessionNote) -> dict:
    return {"t": p.t, "kind": p.kind, "data": {k: v for k, v in sorted(p.data)}}


def _session_parse(obj: dict) -> SessionNote:
    _no_extras(obj, ("t", "kind", "data"), "session")
    data = _need(obj, "data", dict, "session")
    return SessionNote(
        t=float(_need(obj, "t", (int, float), "session")),
        kind=_need(obj, "kind", str, "session"),
        data=tuple(sorted(data.items())),
    )


_CODECS = {
    "imu": (ImuMessage, _imu_fields, _imu_parse),
    "touch": (TouchMessage, _touch_fields, _touch_parse),
    "signal": (Signal, _signal_fields, _signal_parse),
    "event": (Event, _event_fields, _event_parse),
    "gui": (GuiStateSnapshot, _gui_fields, _gui_parse),
    "robot": (RobotStateMessage, _robot_fields, _robot_parse),
    "guidance": (GuidanceMessage, _guidance_fields, _guidance_parse),
    "session": (SessionNote, _session_fields, _session_parse),
}


def encode_message(msg: BusMessage) -> bytes:
    """Canonical single-line encoding, newline-terminated."""
    payload_type, to_fields, _ = _CODECS[msg.channel]
    if not isinstance(msg.payload, payload_type):
        raise ProtocolError(
            f"channel {msg.channel!r} carries {payload_type.__name__}, got {type(msg.payload).__name__}"
        )
    obj = {"channel": msg.channel, "seq": msg.seq, "t": msg.t, "payload": to_fields(msg.payload)}
    line = json.dumps(obj, separators=(",", ":"), ensure_ascii=False, sort_keys=False)
    data = line.encode("utf-8") + b"\n"
    if len(data) > MAX_LINE_BYTES:
        raise ProtocolError(f"encoded message exceeds {MAX_LINE_BYTES} bytes")
    return data


def decode_message(line: bytes | str) -> BusMessage:
    """Strict parse of one wire line; raises ProtocolError naming the violation."""
    if isinstance(line, bytes):
        if len(line) > MAX_LINE_BYTES:
            raise ProtocolError(f"line exceeds {MAX_LINE_BYTES} bytes")
        try:
            text = line.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ProtocolError(f"line is not valid UTF-8: {exc}") from None
    else:
        text = line
    text = text.strip("\r\n")
    if not text:
        raise ProtocolError("empty line")
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProtocolError(f"malformed JSON: {exc.msg}") from None
    if not isinstance(obj, dict):
        raise ProtocolError("message must be a JSON object")
    _no_extras(obj, ("channel", "seq", "t", "payload"), "message")
    channel = _need(obj, "channel", str, "message")
    if channel not in CHANNELS:
        raise ProtocolError(f"unknown channel {channel!r}")
    seq = _need(obj, "seq", int, "message")
    if seq < 0:
        raise ProtocolError(f"seq must be non-negative, got {seq}")
    t = float(_need(obj, "t", (int, float), "message"))
    payload_obj = _need(obj, "payload", dict, "message")
    _, _, parse = _CODECS[channel]
    try:
        payload = parse(payload_obj)
    except ProtocolError:
        raise
    except (TypeError, ValueError) as exc:
        raise ProtocolError(f"{channel}: invalid payload: {exc}") from None
    return BusMessage(channel=channel, seq=seq, t=t, payload=payload)


class SeqTracker:
    """Flags per-channel sequence regressions from one producer (warn, still deliver)."""

    def __init__(self) -> None:
        self._last: dict[str, int] = {}

    def check(self, msg: BusMessage) -> bool:
        last = self._last.get(msg.channel)
        self._last[msg.channel] = msg.seq
        return last is None or msg.seq > last
