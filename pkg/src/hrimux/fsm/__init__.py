from .machine import (
    ContextCommand,
    Event,
    FsmMachine,
    FsmState,
    GuiStateSnapshot,
    HandlerKind,
    MacroRun,
    MenuOption,
    OutcomeKind,
    PlaySequence,
    PlayTask,
    RecordTarget,
    Signal,
    StateKind,
    SystemTrigger,
    TransitionOutcome,
    TransitionSpec,
)
from .interface import (
    ACTION_STATES,
    ADD_TASK_SUBMENU,
    BUTTON_SLOTS,
    MACRO_ACTION,
    MACRO_MENU,
    MACRO_SLOT_SUBMENU,
    MAIN_MENU,
    MENU_STATES,
    NullRobot,
    PLAYBACK_ACTION,
    PLAYBACK_MENU,
    RECORD_ACTION,
    RECORD_MENU,
    RobotPort,
    SEQUENCE_MENU,
    build_interface_fsm,
    dispatch_touch,
    next_task_name,
    touch_to_input,
)

__all__ = [
    "ACTION_STATES",
    "ADD_TASK_SUBMENU",
    "BUTTON_SLOTS",
    "ContextCommand",
    "Event",
    "FsmMachine",
    "FsmState",
    "GuiStateSnapshot",
    "HandlerKind",
    "MACRO_ACTION",
    "MACRO_MENU",
    "MACRO_SLOT_SUBMENU",
    "MAIN_MENU",
    "MENU_STATES",
    "MacroRun",
    "MenuOption",
    "NullRobot",
    "OutcomeKind",
    "PLAYBACK_ACTION",
    "PLAYBACK_MENU",
    "PlaySequence",
    "PlayTask",
    "RECORD_ACTION",
    "RECORD_MENU",
    "RecordTarget",
    "RobotPort",
    "SEQUENCE_MENU",
    "Signal",
    "StateKind",
    "SystemTrigger",
    "TransitionOutcome",
    "TransitionSpec",
    "build_interface_fsm",
    "dispatch_touch",
    "next_task_name",
    "touch_to_input",
]
