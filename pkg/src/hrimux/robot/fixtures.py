"""Pre-recorded fixture tasks installed before every experiment session.

Three synthetic trajectories mirror the tasks a configured deployment
would ship with: a cube transport from position A to position B, an
arm-waving greeting, and a two-arm handover of the cube. Geometry comes
from the world config; durations are scenario configuration.
"""

from __future__ import annotations

from .sim import GRIPPER_CLOSED, GRIPPER_OPEN, Pose, RobotSim, Trajectory, Vec3, Waypoint

MOVE_A_B = "move_a_b"
ACTION_1 = "action_1"
ACTION_2 = "action_2"

_LIFT = 0.15


def _above(p: Vec3, dz: float = _LIFT) -> Vec3:
    return (p[0], p[1], p[2] + dz)


def _wp(t: float, pos: Vec3, grip: str) -> Waypoint:
    return Waypoint(t, Pose(pos, grip))


def transport_trajectory(start: Vec3, goal: Vec3, duration: float, arm: str = "right") -> Trajectory:
    """Pick the cube at ``start`` and place it at ``goal``."""
    d = duration
    return Trajectory(
        arm,
        (
            _wp(0.00 * d, _above(start), GRIPPER_OPEN),
            _wp(0.10 * d, start, GRIPPER_OPEN),
            _wp(0.15 * d, start, GRIPPER_CLOSED),
            _wp(0.30 * d, _above(start), GRIPPER_CLOSED),
            _wp(0.70 * d, _above(goal), GRIPPER_CLOSED),
            _wp(0.85 * d, goal, GRIPPER_CLOSED),
            _wp(0.90 * d, goal, GRIPPER_OPEN),
            _wp(1.00 * d, _above(goal), GRIPPER_OPEN),
        ),
    )


def wave_trajectory(duration: float, arm: str = "left") -> Trajectory:
    """Greeting wave, high above the table so the cube is never disturbed."""
    d = duration
    base = (0.55, 0.0, 0.40)
    sway = 0.12
    pts = [
        (base[0], base[1] + (sway if i % 2 else -sway), base[2]) for i in range(1, 5)
    ]
    return Trajectory(
        arm,
        (
            _wp(0.0, (0.55, 0.0, 0.30), GRIPPER_CLOSED),
            _wp(0.15 * d, pts[0], GRIPPER_CLOSED),
            _wp(0.35 * d, pts[1], GRIPPER_CLOSED),
            _wp(0.55 * d, pts[2], GRIPPER_CLOSED),
            _wp(0.75 * d, pts[3], GRIPPER_CLOSED),
            _wp(1.00 * d, (0.55, 0.0, 0.30), GRIPPER_CLOSED),
        ),
    )


def handover_trajectory(pick: Vec3, handover_at: Vec3, duration: float) -> Trajectory:
    """Right arm picks the cube and releases it into the parked left gripper.

    The release point sits 1.5 cm from the left gripper: inside pick
    tolerance, so the cube re-attaches to the closed left hand the moment
    the right hand opens.
    """
    d = duration
    release = (handover_at[0] + 0.015, handover_at[1], handover_at[2])
    return Trajectory(
        "right",
        (
            _wp(0.00 * d, _above(pick), GRIPPER_OPEN),
            _wp(0.10 * d, pick, GRIPPER_OPEN),
            _wp(0.15 * d, pick, GRIPPER_CLOSED),
            _wp(0.30 * d, _above(pick), GRIPPER_CLOSED),
            _wp(0.60 * d, release, GRIPPER_CLOSED),
            _wp(0.70 * d, release, GRIPPER_OPEN),
            _wp(0.85 * d, (release[0] + 0.20, release[1] - 0.20, release[2]), GRIPPER_OPEN),
            _wp(1.00 * d, (0.70, -0.40, 0.25), GRIPPER_OPEN),
        ),
    )


def load_fixture_tasks(sim: RobotSim, store, move_duration: float = 65.0,
                       wave_duration: float = 20.0, handover_duration: float = 25.0) -> list[str]:
    """Install the three pre-recorded tasks into ``store``; returns their names."""
    cfg = sim.config
    store.save_task(MOVE_A_B, transport_trajectory(cfg.position_a, cfg.position_b, move_duration))
    store.save_task(ACTION_1, wave_trajectory(wave_duration))
    store.save_task(ACTION_2, handover_trajectory(cfg.position_a, cfg.home_left.position, handover_duration))
    return [MOVE_A_B, ACTION_1, ACTION_2]
