"""Virtual-user parameters for scripted sessions.

Per-input times are invented configuration (the study this harness
supports never measured them), so downstream checks compare orderings and
monotonic trends, never absolute seconds. Defaults: touch 0.7 s, gesture
1.2 s, decision pause 0.5 s, each jittered +-20%.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from ..gestures.stochastic import StochasticRecognizerModel

GESTURE = "gesture"
TOUCHSCREEN = "touchscreen"
MODALITIES = (GESTURE, TOUCHSCREEN)


@dataclass(frozen=True)
class TimeModel:
    mean: float
    jitter: float  # absolute half-width, seconds

    def __post_init__(self) -> None:
        if self.mean <= 0:
            raise ValueError("duration mean must be positive")

    def draw(self, rng: random.Random) -> float:
        return max(self.mean + rng.uniform(-self.jitter, self.jitter), 1e-3)


@dataclass(frozen=True)
class VirtualUserModel:
    modality: str
    gesture_time: TimeModel = TimeModel(1.2, 0.24)
    touch_time: TimeModel = TimeModel(0.7, 0.14)
    decision_pause: TimeModel = TimeModel(0.5, 0.10)
    recognizer: StochasticRecognizerModel = field(default_factory=StochasticRecognizerModel)
    max_attempts_per_command: int = 400  # retry until detected, with a hard stop

    def __post_init__(self) -> None:
        if self.modality not in MODALITIES:
            raise ValueError(f"modality must be one of {MODALITIES}")


def zero_jitter(user: VirtualUserModel) -> VirtualUserModel:
    """Deterministic twin of a user model (closed-form duration tests)."""
    return VirtualUserModel(
        modality=user.modality,
        gesture_time=TimeModel(user.gesture_time.mean, 0.0),
        touch_time=TimeModel(user.touch_time.mean, 0.0),
        decision_pause=TimeModel(user.decision_pause.mean, 0.0),
        recognizer=user.recognizer,
        max_attempts_per_command=user.max_attempts_per_command,
    )
