"""Seeded multi-session studies and their on-disk dataset format."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from pathlib import Path

from ..gestures.stochastic import StochasticRecognizerModel
from .session import ScenarioConfig, SessionLog, run_session
from .user import GESTURE, MODALITIES, TOUCHSCREEN, VirtualUserModel


@dataclass(frozen=True)
class StudyConfig:
    sessions_per_modality: int = 25
    modalities: tuple[str, ...] = (GESTURE, TOUCHSCREEN)
    scenario: ScenarioConfig = field(default_factory=ScenarioConfig)
    recognizer: StochasticRecognizerModel = field(default_factory=StochasticRecognizerModel)
    uniform_recall: float | None = None  # override every label's recall when set

    def __post_init__(self) -> None:
        for modality in self.modalities:
            if modality not in MODALITIES:
                raise ValueError(f"unknown modality {modality!r}")


def session_seed(master_seed: int, modality: str, index: int) -> str:
    # string seeds hash deterministically across runs and platforms
    return f"{master_seed}:{modality}:{index}"


def run_study(config: StudyConfig, master_seed: int) -> list[SessionLog]:
    """Independent seeded sessions; the dataset is reproducible from the seed."""
    recognizer = config.recognizer
    if config.uniform_recall is not None:
        recognizer = recognizer.with_uniform_recall(config.uniform_recall)
    logs: list[SessionLog] = []
    for modality in config.modalities:
        user = VirtualUserModel(modality=modality, recognizer=recognizer)
        for i in range(config.sessions_per_modality):
            seed = session_seed(master_seed, modality, i)
            logs.append(run_session(config.scenario, user, seed))
    return logs


def save_dataset(logs: list[SessionLog], path: str | Path) -> None:
    Path(path).write_text("".join(log.to_json() + "\n" for log in logs))


def load_dataset(path: str | Path) -> list[SessionLog]:
    lines = Path(path).read_text().splitlines()
    return [SessionLog.from_json(line) for line in lines if line.strip()]


def recall_sweep(config: StudyConfig, master_seed: int, recalls=(0.4, 0.7, 1.0)) -> dict[float, list[SessionLog]]:
    """Gesture-modality studies at each uniform recall, same seeds throughout."""
    out: dict[float, list[SessionLog]] = {}
    for p in recalls:
        swept = replace(config, modalities=(GESTURE,), uniform_recall=p)
        out[p] = run_study(swept, master_seed)
    return out
