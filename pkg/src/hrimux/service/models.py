"""Request/response models of the HTTP surface."""

from __future__ import annotations

from pydantic import BaseModel, Field


class SessionLogModel(BaseModel):
    modality: str
    seed: int | str
    task_durations: list[float]
    completed: list[bool]
    inputs_per_task: list[int]
    total_s: float


class SimulateRequest(BaseModel):
    sessions: int = Field(default=25, ge=1, le=500)
    seed: int = 1
    modality: str = "both"  # gesture | touchscreen | both
    recall: float | None = Field(default=None, ge=0.0, le=1.0)
    soft_limit_s: float = 300.0
    move_duration_s: float = 62.0


class SimulateResponse(BaseModel):
    sessions: list[SessionLogModel]


class BoxStatsModel(BaseModel):
    n: int
    median: float
    q1: float
    q3: float
    whisker_low: float
    whisker_high: float
    outliers: list[float]


class ModalityTimingModel(BaseModel):
    sessions: int
    completed_all: int
    per_task: list[BoxStatsModel | None]


class AnalyzeRequest(BaseModel):
    sessions: list[SessionLogModel]


class AnalyzeResponse(BaseModel):
    modalities: dict[str, ModalityTimingModel]
    report: str


class ConfusionRequest(BaseModel):
    trials: list[tuple[str, str | None]]  # (true, predicted-or-null)


class ConfusionResponse(BaseModel):
    counts: list[list[int]]
    accuracy: float
    recall: dict[str, float | None]
    precision: dict[str, float | None]
    report: str


class UeqRequest(BaseModel):
    scores: list[list[float]]  # respondents x 26, -3..+3


class UeqScaleModel(BaseModel):
    scale: str
    mean: float
    ci_half_width: float | None
    classification: str
    alpha: float | None


class UeqResponse(BaseModel):
    n_respondents: int
    scales: list[UeqScaleModel]
    pragmatic: float
    hedonic: float
    report: str


class ReplayRequest(BaseModel):
    lines: list[str]


class ReplayResponse(BaseModel):
    states: list[str]
    applied: int
    skipped: int
    final_state: str
    errors: list[str]


class TouchRequest(BaseModel):
    option: int | None = None
    button: str | None = None


class DispatchResponse(BaseModel):
    outcome: str
    state: str
    error: str | None = None


class GuiModel(BaseModel):
    state: str
    kind: str
    title: str
    options: list[str]
    option_ids: list[str]
    selector: int
    context: str


class ArmModel(BaseModel):
    pos: list[float]
    grip: str


class WorldModel(BaseModel):
    arms: dict[str, ArmModel]
    cube: list[float]
    attached: str | None
    position_a: list[float]
    position_b: list[float]


class StateResponse(BaseModel):
    gui: GuiModel
    world: WorldModel
    tasks: list[str]


class HealthResponse(BaseModel):
    status: str
    version: str
