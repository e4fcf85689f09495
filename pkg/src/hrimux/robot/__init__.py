from .sim import (
    ARMS,
    GRIPPER_CLOSED,
    GRIPPER_OPEN,
    Pose,
    RobotSim,
    SimError,
    Trajectory,
    Waypoint,
    WorldConfig,
    WorldState,
)
from .fixtures import ACTION_1, ACTION_2, MOVE_A_B, load_fixture_tasks

__all__ = [
    "ARMS",
    "GRIPPER_CLOSED",
    "GRIPPER_OPEN",
    "Pose",
    "RobotSim",
    "SimError",
    "Trajectory",
    "Waypoint",
    "WorldConfig",
    "WorldState",
    "ACTION_1",
    "ACTION_2",
    "MOVE_A_B",
    "load_fixture_tasks",
]
