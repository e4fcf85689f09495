"""Scale scoring for the 26-item user-experience questionnaire.

Item-to-scale membership and item polarity come from a bundled data file
mirroring the standard published layout. Answers arrive on the -3..+3
scale in questionnaire order; reversed items are sign-flipped before any
aggregation. Scale means are classified against the conventional +-0.8
neutral band, and 95% confidence intervals support the
non-overlap significance reading used when comparing two conditions.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

import numpy as np

from .confusion import AnalyticsError
from .reliability import cronbach_alpha

NEUTRAL_BAND = 0.8
Z_95 = 1.96

NEGATIVE = "negative"
NEUTRAL = "neutral"
POSITIVE = "positive"


def _load_layout() -> dict:
    ref = resources.files("hrimux.analytics").joinpath("data/ueq_items.json")
    return json.loads(ref.read_text())


_LAYOUT = _load_layout()
SCALES: tuple[str, ...] = tuple(_LAYOUT["scales"])
PRAGMATIC_SCALES: tuple[str, ...] = tuple(_LAYOUT["pragmatic"])
HEDONIC_SCALES: tuple[str, ...] = tuple(_LAYOUT["hedonic"])
ITEM_SCALE: tuple[str, ...] = tuple(entry["scale"] for entry in _LAYOUT["items"])
ITEM_POLARITY = np.array([entry["polarity"] for entry in _LAYOUT["items"]], dtype=float)
N_ITEMS = len(_LAYOUT["items"])


def classify(mean: float, band: float = NEUTRAL_BAND) -> str:
    """Strictly above +band is positive, strictly below -band negative."""
    if mean > band:
        return POSITIVE
    if mean < -band:
        return NEGATIVE
    return NEUTRAL


@dataclass(frozen=True)
class ScaleStats:
    scale: str
    mean: float
    ci_half_width: float | None  # None when n < 2
    classification: str
    alpha: float | None  # internal consistency; None when undefined

    def interval(self) -> tuple[float, float] | None:
        if self.ci_half_width is None:
            return None
        return (self.mean - self.ci_half_width, self.mean + self.ci_half_width)


@dataclass(frozen=True)
class UeqScaleReport:
    n_respondents: int
    scales: tuple[ScaleStats, ...]
    pragmatic: float
    hedonic: float

    def scale(self, name: str) -> ScaleStats:
        for stats in self.scales:
            if stats.scale == name:
                return stats
        raise KeyError(name)


def validate_questionnaire(scores) -> np.ndarray:
    data = np.asarray(scores, dtype=float)
    if data.ndim != 2 or data.shape[1] != N_ITEMS:
        raise AnalyticsError(f"questionnaire matrix must be respondents x {N_ITEMS}")
    if np.any(np.abs(data) > 3.0):
        raise AnalyticsError("item scores must lie within [-3, 3]")
    return data


def respondent_scale_scores(scores) -> dict[str, np.ndarray]:
    """Per-respondent scale score: mean of that scale's polarity-applied items."""
    data = validate_questionnaire(scores) * ITEM_POLARITY
    out: dict[str, np.ndarray] = {}
    for scale in SCALES:
        cols = [i for i, s in enumerate(ITEM_SCALE) if s == scale]
        out[scale] = data[:, cols].mean(axis=1)
    return out


def ueq_scale_report(scores) -> UeqScaleReport:
    data = validate_questionnaire(scores)
    per_scale = respondent_scale_scores(data)
    n = data.shape[0]
    stats = []
    for scale in SCALES:
        values = per_scale[scale]
        mean = float(values.mean())
        ci = float(Z_95 * values.std(ddof=1) / np.sqrt(n)) if n >= 2 else None
        cols = [i for i, s in enumerate(ITEM_SCALE) if s == scale]
        try:
            alpha = cronbach_alpha((data * ITEM_POLARITY)[:, cols])
        except AnalyticsError:
            alpha = None
        stats.append(ScaleStats(scale, mean, ci, classify(mean), alpha))
    by_name = {s.scale: s.mean for s in stats}
    pragmatic = float(np.mean([by_name[s] for s in PRAGMATIC_SCALES]))
    hedonic = float(np.mean([by_name[s] for s in HEDONIC_SCALES]))
    return UeqScaleReport(n, tuple(stats), pragmatic, hedonic)


def intervals_overlap(a: tuple[float, float], b: tuple[float, float]) -> bool:
    return a[0] <= b[1] and b[0] <= a[1]


def significant_differences(a: UeqScaleReport, b: UeqScaleReport) -> dict[str, bool]:
    """Scale-wise significance by the CI non-overlap criterion."""
    out: dict[str, bool] = {}
    for scale in SCALES:
        ia, ib = a.scale(scale).interval(), b.scale(scale).interval()
        out[scale] = ia is not None and ib is not None and not intervals_overlap(ia, ib)
    return out


def render_ueq(report: UeqScaleReport, label: str = "") -> str:
    lines = [f"UEQ scale report{' for ' + label if label else ''} (n={report.n_respondents})"]
    for s in report.scales:
        ci = f"+-{s.ci_half_width:.3f}" if s.ci_half_width is not None else "ci undefined"
        alpha = f"alpha={s.alpha:.2f}" if s.alpha is not None else "alpha undefined"
        lines.append(f"  {s.scale:<15} mean={s.mean:+.3f} {ci:<12} {s.classification:<8} {alpha}")
    lines.append(f"  pragmatic={report.pragmatic:+.3f} hedonic={report.hedonic:+.3f}")
    return "\n".join(lines)
