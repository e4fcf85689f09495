"""File-backed task store.

One self-describing text file per entity under a root directory:

    <root>/tasks/<name>.task
    <root>/sequences/<name>.seq
    <root>/macros/<name>.macro

Trajectories are stored as one waypoint row per line: ``t x y z gripper``.
Floats are written with repr(), i.e. the shortest decimal that round-trips
exactly, so save/load is bit-exact. Writes go to a temp file in the same
directory followed by an atomic rename; a crash mid-write leaves the
previous version intact.
"""

from __future__ import annotations

import os
import time
from pathlib import Path

from .base import MACRO_SLOTS, MacroBinding, NotFoundError, SequenceDef, StoreError, Task, check_name
from ..robot.sim import GRIPPER_CLOSED, GRIPPER_OPEN, Pose, Trajectory, Waypoint

_TASK_MAGIC = "hrimux-task v1"
_SEQ_MAGIC = "hrimux-sequence v1"
_MACRO_MAGIC = "hrimux-macro v1"


class FileTaskStore:
    def __init__(self, root: str | Path):
        self.root = Path(root)
        for sub in ("tasks", "sequences", "macros"):
            (self.root / sub).mkdir(parents=True, exist_ok=True)

    # -- tasks ------------------------------------------------------------

    def _task_path(self, name: str) -> Path:
        return self.root / "tasks" / f"{check_name(name)}.task"

    def save_task(self, name: str, trajectory: Trajectory) -> None:
        lines = [
            _TASK_MAGIC,
            f"name {check_name(name)}",
            f"arm {trajectory.arm}",
            f"created {time.time()!r}",
            f"waypoints {len(trajectory.waypoints)}",
        ]
        for wp in trajectory.waypoints:
            x, y, z = wp.pose.position
            lines.append(f"{wp.t!r} {x!r} {y!r} {z!r} {wp.pose.gripper}")
        self._atomic_write(self._task_path(name), "\n".join(lines) + "\n")

    def load_task(self, name: str) -> Task:
        path = self._task_path(name)
        if not path.exists():
            raise NotFoundError(f"task {name!r} not found")
        lines = path.read_text().splitlines()
        header = self._parse_header(lines, _TASK_MAGIC, path, ("name", "arm", "created", "waypoints"))
        count = int(header["waypoints"])
        rows = lines[5 : 5 + count]
        if len(rows) != count:
            raise StoreError(f"{path}: expected {count} waypoint rows, found {len(rows)}")
        waypoints = []
        for row in rows:
            t, x, y, z, grip = row.split()
            if grip not in (GRIPPER_OPEN, GRIPPER_CLOSED):
                raise StoreError(f"{path}: bad gripper value {grip!r}")
            waypoints.append(Waypoint(float(t), Pose((float(x), float(y), float(z)), grip)))
        trajectory = Trajectory(header["arm"], tuple(waypoints))
        return Task(header["name"], trajectory, created_at=float(header["created"]))

    def delete_task(self, name: str) -> None:
        path = self._task_path(name)
        if not path.exists():
            raise NotFoundError(f"task {name!r} not found")
        path.unlink()

    def list_tasks(self) -> list[str]:
        return sorted(p.stem for p in (self.root / "tasks").glob("*.task"))

    # -- sequences ----------------------------------------------------------

    def _seq_path(self, name: str) -> Path:
        return self.root / "sequences" / f"{check_name(name)}.seq"

    def save_sequence(self, name: str, tasks: list[str]) -> None:
        lines = [_SEQ_MAGIC, f"name {check_name(name)}", f"tasks {len(tasks)}"]
        lines.extend(check_name(t) for t in tasks)
        self._atomic_write(self._seq_path(name), "\n".join(lines) + "\n")

    def load_sequence(self, name: str) -> SequenceDef:
        path = self._seq_path(name)
        if not path.exists():
            raise NotFoundError(f"sequence {name!r} not found")
        lines = path.read_text().splitlines()
        header = self._parse_header(lines, _SEQ_MAGIC, path, ("name", "tasks"))
        count = int(header["tasks"])
        tasks = lines[3 : 3 + count]
        if len(tasks) != count:
            raise StoreError(f"{path}: expected {count} task rows, found {len(tasks)}")
        return SequenceDef(header["name"], tuple(tasks))

    def list_sequences(self) -> list[str]:
        return sorted(p.stem for p in (self.root / "sequences").glob("*.seq"))

    # -- macros ---------------------------------------------------------------

    def _macro_path(self, name: str) -> Path:
        return self.root / "macros" / f"{check_name(name)}.macro"

    def save_macro(self, name: str, binding: MacroBinding) -> None:
        lines = [_MACRO_MAGIC, f"name {check_name(name)}"]
        for slot, task in binding.slots:
            lines.append(f"slot {slot} {task if task is not None else '-'}")
        self._atomic_write(self._macro_path(name), "\n".join(lines) + "\n")

    def load_macro(self, name: str) -> MacroBinding:
        path = self._macro_path(name)
        if not path.exists():
            raise NotFoundError(f"macro {name!r} not found")
        lines = path.read_text().splitlines()
        if not lines or lines[0] != _MACRO_MAGIC:
            raise StoreError(f"{path}: not a macro file")
        slots: list[tuple[int, str | None]] = []
        for line in lines[2:]:
            _, slot, task = line.split(maxsplit=2)
            slots.append((int(slot), None if task == "-" else task))
        if tuple(s for s, _ in slots) != MACRO_SLOTS:
            raise StoreError(f"{path}: macro must define slots {MACRO_SLOTS}")
        return MacroBinding(tuple(slots))

    # -- helpers -----------------------------------------------------------------

    @staticmethod
    def _parse_header(lines: list[str], magic: str, path: Path, keys: tuple[str, ...]) -> dict[str, str]:
        if not lines or lines[0] != magic:
            raise StoreError(f"{path}: bad or missing magic line")
        header: dict[str, str] = {}
        for key, line in zip(keys, lines[1 : 1 + len(keys)]):
            k, _, v = line.partition(" ")
            if k != key:
                raise StoreError(f"{path}: expected header {key!r}, found {k!r}")
            header[key] = v
        return header

    @staticmethod
    def _atomic_write(path: Path, content: str) -> None:
        tmp = path.with_name(path.name + ".tmp")
        tmp.write_text(content)
        os.replace(tmp, path)
