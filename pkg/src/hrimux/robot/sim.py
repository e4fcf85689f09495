"""Simulated dual-arm tabletop robot.

End-effector kinematics only: each arm is a point gripper moving through a
configured workspace box above the table. The simulator supports
kinesthetic-teaching capture (guidance poses appended verbatim while
recording), trajectory playback with pause/resume/stop, and a single cube
that attaches to a closed gripper within pick tolerance and tracks it.

Playback interpolates linearly between waypoints on the simulator's own
clock; all durations derive from trajectory timestamps, so world traces
are reproducible independent of the tick rate at waypoint granularity.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Callable

logger = logging.getLogger(__name__)

Vec3 = tuple[float, float, float]

ARMS = ("left", "right")

GRIPPER_OPEN = "open"
GRIPPER_CLOSED = "closed"


def _dist(a: Vec3, b: Vec3) -> float:
    return math.sqrt((a[0] - b[0]) ** 2 + (a[1] - b[1]) ** 2 + (a[2] - b[2]) ** 2)


def _lerp(a: Vec3, b: Vec3, u: float) -> Vec3:
    return (a[0] + (b[0] - a[0]) * u, a[1] + (b[1] - a[1]) * u, a[2] + (b[2] - a[2]) * u)


@dataclass(frozen=True)
class Pose:
    position: Vec3
    gripper: str = GRIPPER_OPEN

    def __post_init__(self) -> None:
        if self.gripper not in (GRIPPER_OPEN, GRIPPER_CLOSED):
            raise ValueError(f"gripper must be open/closed, got {self.gripper!r}")


@dataclass(frozen=True)
class Waypoint:
    t: float
    pose: Pose


@dataclass(frozen=True)
class Trajectory:
    arm: str
    waypoints: tuple[Waypoint, ...]

    def __post_init__(self) -> None:
        if self.arm not in ARMS:
            raise ValueError(f"arm must be one of {ARMS}, got {self.arm!r}")
        times = [w.t for w in self.waypoints]
        if times and times[0] != 0.0:
            raise ValueError("first waypoint must be at t=0")
        if any(b <= a for a, b in zip(times, times[1:])):
            raise ValueError("waypoint timestamps must be strictly increasing")

    @property
    def duration(self) -> float:
        return self.waypoints[-1].t if self.waypoints else 0.0

    @property
    def empty(self) -> bool:
        return not self.waypoints

    def pose_at(self, t: float) -> Pose:
        """Linearly interpolated position; gripper holds the last reached waypoint's state."""
        wps = self.waypoints
        if not wps:
            raise ValueError("empty trajectory has no poses")
        if t <= wps[0].t:
            return wps[0].pose
        if t >= wps[-1].t:
            return wps[-1].pose
        for prev, nxt in zip(wps, wps[1:]):
            if t < nxt.t:
                u = (t - prev.t) / (nxt.t - prev.t)
                return Pose(_lerp(prev.pose.position, nxt.pose.position, u), prev.pose.gripper)
        return wps[-1].pose


@dataclass(frozen=True)
class WorldConfig:
    position_a: Vec3 = (0.40, 0.30, 0.02)
    position_b: Vec3 = (0.40, -0.30, 0.02)
    cube_edge: float = 0.037
    pick_tolerance: float = 0.02
    workspace_min: Vec3 = (0.0, -0.5, 0.0)
    workspace_max: Vec3 = (1.0, 0.5, 0.5)
    # the left arm parks closed at the handover point so two-arm handover
    # fixtures can transfer the cube to it (trajectories drive one arm)
    home_left: Pose = Pose((0.55, 0.0, 0.30), GRIPPER_CLOSED)
    home_right: Pose = Pose((0.70, -0.40, 0.25), GRIPPER_OPEN)

    def __post_init__(self) -> None:
        gap = _dist(self.position_a, self.position_b)
        if abs(gap - 0.60) > 1e-9:
            raise ValueError(f"A-B distance must be 0.60 m, got {gap:.4f}")


@dataclass
class WorldState:
    arms: dict[str, Pose]
    cube: Vec3
    attached: str | None

    def copy(self) -> "WorldState":
        return WorldState(dict(self.arms), self.cube, self.attached)


@dataclass
class _Playback:
    trajectory: Trajectory
    t: float = 0.0
    paused: bool = False


@dataclass
class _Recording:
    arm: str
    start: float | None = None
    waypoints: list[Waypoint] = field(default_factory=list)


class SimError(Exception):
    pass


class RobotSim:
    """Owns the world and processes commands and ticks on one serialized loop."""

    def __init__(self, config: WorldConfig | None = None):
        self.config = config or WorldConfig()
        self.on_event: Callable[[str, dict], None] | None = None
        self._events: list[tuple[str, dict]] = []
        self.reset()

    def reset(self) -> None:
        cfg = self.config
        self.world = WorldState(
            arms={"left": cfg.home_left, "right": cfg.home_right},
            cube=cfg.position_a,
            attached=None,
        )
        self.playback: _Playback | None = None
        self.recording: _Recording | None = None
        self.clock = 0.0
        self.transfers: list[tuple[str | None, str | None]] = []

    # -- events ---------------------------------------------------------------

    def _emit(self, kind: str, **data) -> None:
        self._events.append((kind, data))
        if self.on_event is not None:
            self.on_event(kind, data)

    def drain_events(self) -> list[tuple[str, dict]]:
        out, self._events = self._events, []
        return out

    # -- kinesthetic teaching ---------------------------------------------------

    def start_recording(self, arm: str) -> None:
        if arm not in ARMS:
            raise SimError(f"unknown arm {arm!r}")
        if self.recording is not None:
            raise SimError("already recording")
        self.recording = _Recording(arm=arm)

    def feed_guidance(self, pose: Pose, t: float) -> None:
        """Append one guidance pose; timestamps are rebased so the first is 0."""
        rec = self.recording
        if rec is None:
            raise SimError("not recording")
        if rec.start is None:
            rec.start = t
        rebased = t - rec.start
        if rec.waypoints and rebased <= rec.waypoints[-1].t:
            raise SimError(f"guidance time {t} not increasing")
        rec.waypoints.append(Waypoint(rebased, pose))
        self._set_arm(rec.arm, pose)

    def stop_recording(self) -> Trajectory:
        rec = self.recording
        if rec is None:
            raise SimError("not recording")
        self.recording = None
        if not rec.waypoints:
            logger.warning("recording stopped with zero samples")
        return Trajectory(rec.arm, tuple(rec.waypoints))

    # -- playback ---------------------------------------------------------------

    @property
    def busy(self) -> bool:
        return self.playback is not None

    def play(self, trajectory: Trajectory) -> None:
        if self.playback is not None:
            raise SimError("playback already active")
        if trajectory.empty:
            self._emit("playback-finished")
            return
        self.playback = _Playback(trajectory)
        self._set_arm(trajectory.arm, trajectory.pose_at(0.0))

    def pause(self) -> None:
        if self.playback is None or self.playback.paused:
            raise SimError("nothing to pause")
        self.playback.paused = True

    def resume(self) -> None:
        if self.playback is None or not self.playback.paused:
            logger.warning("resume while not paused; ignored")
            return
        self.playback.paused = False

    def stop(self) -> None:
        """Truncate playback; emits nothing further."""
        self.playback = None

    def time_to_completion(self) -> float | None:
        if self.playback is None or self.playback.paused:
            return None
        return self.playback.trajectory.duration - self.playback.t

    # -- stepping ---------------------------------------------------------------

    def step(self, dt: float) -> WorldState:
        if dt <= 0:
            raise SimError("dt must be positive")
        self.clock += dt
        pb = self.playback
        if pb is not None and not pb.paused:
            pb.t += dt
            traj = pb.trajectory
            self._set_arm(traj.arm, traj.pose_at(pb.t))
            if pb.t >= traj.duration:
                self.playback = None
                self._emit("playback-finished")
        return self.world.copy()

    def run_to_completion(self, tick: float = 0.5) -> float:
        """Step through the active playback at waypoint granularity.

        Returns the simulated time consumed. Ticks are capped at ``tick``
        seconds but always land exactly on waypoint boundaries so gripper
        changes, and therefore attachment changes, are never skipped.
        """
        consumed = 0.0
        while self.playback is not None and not self.playback.paused:
            pb = self.playback
            boundaries = [w.t for w in pb.trajectory.waypoints if w.t > pb.t + 1e-12]
            target = boundaries[0] if boundaries else pb.trajectory.duration
            dt = min(max(target - pb.t, 1e-9), tick)
            self.step(dt)
            consumed += dt
        return consumed

    # -- internals ----------------------------------------------------------------

    def _set_arm(self, arm: str, pose: Pose) -> None:
        self.world.arms[arm] = pose
        self._update_attachment()

    def _update_attachment(self) -> None:
        world = self.world
        if world.attached is not None:
            holder = world.arms[world.attached]
            if holder.gripper == GRIPPER_OPEN:
                self.transfers.append((world.attached, None))
                world.attached = None
            else:
                world.cube = holder.position
        if world.attached is None:
            for arm in ARMS:
                pose = world.arms[arm]
                if pose.gripper == GRIPPER_CLOSED and _dist(pose.position, world.cube) <= self.config.pick_tolerance:
                    world.attached = arm
                    world.cube = pose.position
                    self.transfers.append((None, arm))
                    break

    def attachment_changes(self) -> list[tuple[str | None, str | None]]:
        return list(self.transfers)
