from .confusion import (
    AnalyticsError,
    ConfusionMatrix,
    LABELS,
    TrialRecord,
    confusion_matrix,
    render_confusion,
)
from .reliability import RELIABILITY_THRESHOLD, cronbach_alpha, is_reliable
from .timing import (
    BoxStats,
    CompletionSummary,
    boxplot_stats,
    completion_summary,
    render_timing,
    task_durations_by_modality,
)
from .ueq import (
    HEDONIC_SCALES,
    NEUTRAL_BAND,
    PRAGMATIC_SCALES,
    SCALES,
    ScaleStats,
    UeqScaleReport,
    classify,
    intervals_overlap,
    render_ueq,
    respondent_scale_scores,
    significant_differences,
    ueq_scale_report,
    validate_questionnaire,
)
from .io import load_questionnaire, load_timings, load_trials

__all__ = [
    "AnalyticsError",
    "BoxStats",
    "CompletionSummary",
    "ConfusionMatrix",
    "HEDONIC_SCALES",
    "LABELS",
    "NEUTRAL_BAND",
    "PRAGMATIC_SCALES",
    "RELIABILITY_THRESHOLD",
    "SCALES",
    "ScaleStats",
    "TrialRecord",
    "UeqScaleReport",
    "boxplot_stats",
    "classify",
    "completion_summary",
    "confusion_matrix",
    "cronbach_alpha",
    "intervals_overlap",
    "is_reliable",
    "load_questionnaire",
    "load_timings",
    "load_trials",
    "render_confusion",
    "render_timing",
    "render_ueq",
    "respondent_scale_scores",
    "significant_differences",
    "task_durations_by_modality",
    "ueq_scale_report",
    "validate_questionnaire",
]
