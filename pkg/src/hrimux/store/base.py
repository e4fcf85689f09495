"""Persistence contracts for tasks, sequences and macro bindings."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Protocol

from ..robot.sim import Trajectory

MACRO_SLOTS = (1, 2, 3)  # slot 4 is reserved for exiting macro mode

_NAME_RE = re.compile(r"^[A-Za-z0-9][A-Za-z0-9_.-]*$")


class StoreError(Exception):
    pass


class NotFoundError(StoreError):
    pass


def check_name(name: str) -> str:
    if not _NAME_RE.match(name or ""):
        raise StoreError(f"invalid entity name {name!r}")
    return name


@dataclass(frozen=True)
class Task:
    name: str
    trajectory: Trajectory
    created_at: float = 0.0


@dataclass(frozen=True)
class SequenceDef:
    name: str
    tasks: tuple[str, ...]


@dataclass(frozen=True)
class MacroBinding:
    """Tasks bound to the three firing slots; unbound slots map to None."""

    slots: tuple[tuple[int, str | None], ...] = ((1, None), (2, None), (3, None))

    def __post_init__(self) -> None:
        if tuple(s for s, _ in self.slots) != MACRO_SLOTS:
            raise ValueError(f"macro binding must cover slots {MACRO_SLOTS}")

    def get(self, slot: int) -> str | None:
        return dict(self.slots).get(slot)

    def bind(self, slot: int, task: str | None) -> "MacroBinding":
        if slot not in MACRO_SLOTS:
            raise ValueError(f"only slots {MACRO_SLOTS} are bindable")
        return MacroBinding(tuple((s, task if s == slot else t) for s, t in self.slots))


class TaskStore(Protocol):
    def save_task(self, name: str, trajectory: Trajectory) -> None: ...

    def load_task(self, name: str) -> Task: ...

    def delete_task(self, name: str) -> None: ...

    def list_tasks(self) -> list[str]: ...

    def save_sequence(self, name: str, tasks: list[str]) -> None: ...

    def load_sequence(self, name: str) -> SequenceDef: ...

    def list_sequences(self) -> list[str]: ...

    def save_macro(self, name: str, binding: MacroBinding) -> None: ...

    def load_macro(self, name: str) -> MacroBinding: ...
