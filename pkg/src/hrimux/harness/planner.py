"""Minimal signal plans for menu navigation.

With a saturating selector, the shortest route to option ``k`` from
selector ``s`` is |k - s| moves in one direction followed by one select,
so planned length is |k - s| + 1. Slot 2 moves the selector down,
slot 3 up, slot 1 selects.
"""

from __future__ import annotations

from ..fsm.machine import GuiStateSnapshot, Signal

SELECT_SLOT = 1
DOWN_SLOT = 2
UP_SLOT = 3


class PlannerError(Exception):
    pass


def plan_signal_sequence(snapshot: GuiStateSnapshot, target_index: int) -> list[Signal]:
    n = len(snapshot.options)
    if not 0 <= target_index < n:
        raise PlannerError(f"target index {target_index} invalid for {n} options")
    delta = target_index - snapshot.selector
    slot = DOWN_SLOT if delta > 0 else UP_SLOT
    moves = [Signal(slot) for _ in range(abs(delta))]
    return moves + [Signal(SELECT_SLOT)]
