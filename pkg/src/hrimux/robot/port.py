"""Adapter exposing a RobotSim through the port the interaction core expects."""

from __future__ import annotations

from .sim import RobotSim, Trajectory


class SimRobotPort:
    def __init__(self, sim: RobotSim):
        self.sim = sim

    @property
    def busy(self) -> bool:
        return self.sim.busy

    def start_recording(self, arm: str) -> None:
        self.sim.start_recording(arm)

    def is_recording(self) -> bool:
        return self.sim.recording is not None

    def stop_recording(self) -> Trajectory:
        return self.sim.stop_recording()

    def play(self, trajectory: Trajectory) -> None:
        self.sim.play(trajectory)

    def pause(self) -> None:
        self.sim.pause()

    def resume(self) -> None:
        self.sim.resume()

    def stop(self) -> None:
        self.sim.stop()
