from .base import MacroBinding, NotFoundError, SequenceDef, StoreError, Task, TaskStore
from .files import FileTaskStore
from .memory import MemoryTaskStore

__all__ = [
    "FileTaskStore",
    "MacroBinding",
    "MemoryTaskStore",
    "NotFoundError",
    "SequenceDef",
    "StoreError",
    "Task",
    "TaskStore",
]
