from .planner import PlannerError, plan_signal_sequence
from .session import ScenarioConfig, SessionDriver, SessionError, SessionLog, run_session
from .study import StudyConfig, load_dataset, recall_sweep, run_study, save_dataset, session_seed
from .user import GESTURE, MODALITIES, TOUCHSCREEN, TimeModel, VirtualUserModel, zero_jitter

__all__ = [
    "GESTURE",
    "MODALITIES",
    "PlannerError",
    "ScenarioConfig",
    "SessionDriver",
    "SessionError",
    "SessionLog",
    "StudyConfig",
    "TOUCHSCREEN",
    "TimeModel",
    "VirtualUserModel",
    "load_dataset",
    "plan_signal_sequence",
    "recall_sweep",
    "run_session",
    "run_study",
    "save_dataset",
    "session_seed",
    "zero_jitter",
]
