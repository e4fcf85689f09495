"""Dict-backed store for tests and simulated sessions."""

from __future__ import annotations

from .base import MacroBinding, NotFoundError, SequenceDef, Task, check_name
from ..robot.sim import Trajectory


class MemoryTaskStore:
    def __init__(self) -> None:
        self._tasks: dict[str, Task] = {}
        self._sequences: dict[str, SequenceDef] = {}
        self._macros: dict[str, MacroBinding] = {}

    def save_task(self, name: str, trajectory: Trajectory) -> None:
        check_name(name)
        self._tasks[name] = Task(name, trajectory)

    def load_task(self, name: str) -> Task:
        try:
            return self._tasks[name]
        except KeyError:
            raise NotFoundError(f"task {name!r} not found") from None

    def delete_task(self, name: str) -> None:
        if name not in self._tasks:
            raise NotFoundError(f"task {name!r} not found")
        del self._tasks[name]

    def list_tasks(self) -> list[str]:
        return sorted(self._tasks)

    def save_sequence(self, name: str, tasks: list[str]) -> None:
        check_name(name)
        self._sequences[name] = SequenceDef(name, tuple(tasks))

    def load_sequence(self, name: str) -> SequenceDef:
        try:
            return self._sequences[name]
        except KeyError:
            raise NotFoundError(f"sequence {name!r} not found") from None

    def list_sequences(self) -> list[str]:
        return sorted(self._sequences)

    def save_macro(self, name: str, binding: MacroBinding) -> None:
        check_name(name)
        self._macros[name] = binding

    def load_macro(self, name: str) -> MacroBinding:
        try:
            return self._macros[name]
        except KeyError:
            raise NotFoundError(f"macro {name!r} not found") from None
