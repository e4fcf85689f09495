"""Shared generators for protocol tests: valid random messages per channel
and a corpus of malformed wire lines."""

from __future__ import annotations

import random

from hrimux.bus import (
    BusMessage,
    GuidanceMessage,
    ImuMessage,
    RobotStateMessage,
    SessionNote,
    TouchMessage,
)
from hrimux.fsm import Event, GuiStateSnapshot, Signal
from hrimux.robot import GRIPPER_CLOSED, GRIPPER_OPEN, Pose


def _vec(rng):
    return (rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 12))


def _word(rng, n=6):
    return "".join(rng.choice("abcdefghijklmnopqrstuvwxyz_") for _ in range(n))


def random_payload(channel: str, rng: random.Random):
    if channel == "imu":
        return ImuMessage(t=rng.uniform(0, 100), accel=_vec(rng), gyro=_vec(rng))
    if channel == "touch":
        if rng.random() < 0.5:
            return TouchMessage(t=rng.uniform(0, 100), option=rng.randrange(8))
        return TouchMessage(t=rng.uniform(0, 100), button=rng.choice(["pause", "stop", "finish"]))
    if channel == "signal":
        return Signal(slot=rng.randint(1, 4), timestamp=rng.uniform(0, 100))
    if channel == "event":
        return Event(
            target=_word(rng),
            task=_word(rng) if rng.random() < 0.4 else None,
            option=rng.randrange(8) if rng.random() < 0.4 else None,
            slot=rng.randint(1, 3) if rng.random() < 0.3 else None,
            timestamp=rng.uniform(0, 100),
        )
    if channel == "gui":
        n = rng.randint(1, 6)
        return GuiStateSnapshot(
            state=_word(rng),
            kind=rng.choice(["menu", "action"]),
            title=_word(rng),
            options=tuple(_word(rng) for _ in range(n)),
            option_ids=tuple(f"opt:{_word(rng, 4)}" for _ in range(n)),
            selector=rng.randrange(n),
            context=rng.choice(["", "paused", "recording task_1"]),
        )
    if channel == "robot":
        return RobotStateMessage(
            t=rng.uniform(0, 100),
            arms=(
                ("left", Pose(_vec(rng), rng.choice([GRIPPER_OPEN, GRIPPER_CLOSED]))),
                ("right", Pose(_vec(rng), rng.choice([GRIPPER_OPEN, GRIPPER_CLOSED]))),
            ),
            cube=_vec(rng),
            attached=rng.choice([None, "left", "right"]),
        )
    if channel == "guidance":
        return GuidanceMessage(
            t=rng.uniform(0, 100),
            arm=rng.choice(["left", "right"]),
            pos=_vec(rng),
            grip=rng.choice([GRIPPER_OPEN, GRIPPER_CLOSED]),
        )
    if channel == "session":
        return SessionNote.make(
            rng.choice(["log", "record-saved", "playback-finished"]),
            t=rng.uniform(0, 100),
            detail=_word(rng),
            value=rng.randint(0, 99),
        )
    raise ValueError(channel)


def random_message(channel: str, rng: random.Random, seq: int | None = None) -> BusMessage:
    return BusMessage(
        channel=channel,
        seq=seq if seq is not None else rng.randrange(10_000),
        t=rng.uniform(0, 1_000),
        payload=random_payload(channel, rng),
    )


# 20 malformed lines: syntax errors, schema violations, type errors
MALFORMED_LINES = [
    b"",
    b"not json at all\n",
    b"{\n",
    b"[1,2,3]\n",
    b'"just a string"\n',
    b'{"channel":"imu"}\n',
    b'{"channel":"warp","seq":1,"t":0,"payload":{}}\n',
    b'{"channel":"imu","seq":1,"t":0}\n',
    b'{"channel":"imu","seq":1,"t":0,"payload":{"t":0,"accel":[0,0],"gyro":[0,0,0]}}\n',
    b'{"channel":"imu","seq":1,"t":0,"payload":{"t":0,"accel":[0,0,"x"],"gyro":[0,0,0]}}\n',
    b'{"channel":"imu","seq":-4,"t":0,"payload":{"t":0,"accel":[0,0,0],"gyro":[0,0,0]}}\n',
    b'{"channel":"imu","seq":1,"t":0,"payload":{"t":0,"accel":[0,0,0],"gyro":[0,0,0],"bonus":1}}\n',
    b'{"channel":"touch","seq":1,"t":0,"payload":{"t":0,"option":1,"button":"stop"}}\n',
    b'{"channel":"touch","seq":1,"t":0,"payload":{"t":0,"option":null,"button":null}}\n',
    b'{"channel":"signal","seq":1,"t":0,"payload":{"slot":9,"t":0}}\n',
    b'{"channel":"signal","seq":1,"t":0,"payload":{"slot":"two","t":0}}\n',
    b'{"channel":"event","seq":1,"t":0,"payload":{"task":null,"option":null,"slot":null,"t":0}}\n',
    b'{"channel":"gui","seq":1,"t":0,"payload":{"state":"s","kind":"menu","title":"x","options":[1],"option_ids":["a"],"selector":0,"context":""}}\n',
    b'{"channel":"robot","seq":1,"t":0,"payload":{"t":0,"arms":{"tail":{"pos":[0,0,0],"grip":"open"}},"cube":[0,0,0],"attached":null}}\n',
    b'{"channel":"guidance","seq":1,"t":"soon","payload":{"t":0,"arm":"left","pos":[0,0,0],"grip":"open"}}\n',
]
