"""Stochastic recognizer model for simulation studies.

Instead of processing sensor streams, this model answers one question per
performed gesture: was it detected at all (per-label recall), and if so,
as which label (per-label confusion row) and after what latency. Defaults
encode a low-recall, high-precision recognizer: detection probabilities
well under one, confusion rows strongly diagonal.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .recognizer import GestureDetection, GestureLabel

LABELS = tuple(GestureLabel)


def _diagonal_rows(off_mass: float = 0.015) -> dict[GestureLabel, dict[GestureLabel, float]]:
    per_other = off_mass / (len(LABELS) - 1)
    return {
        label: {other: (1.0 - off_mass) if other is label else per_other for other in LABELS}
        for label in LABELS
    }


DEFAULT_RECALL = {
    GestureLabel.G1: 0.40,
    GestureLabel.G2: 0.50,
    GestureLabel.G3: 0.50,
    GestureLabel.G4: 0.40,
}


@dataclass(frozen=True)
class StochasticRecognizerModel:
    detect_prob: dict[GestureLabel, float] = field(default_factory=lambda: dict(DEFAULT_RECALL))
    confusion: dict[GestureLabel, dict[GestureLabel, float]] = field(default_factory=_diagonal_rows)
    latency_mean_s: float = 0.15
    latency_jitter_s: float = 0.05

    def __post_init__(self) -> None:
        for label, p in self.detect_prob.items():
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"detect_prob[{label.value}] must be in [0,1], got {p}")
        for label, row in self.confusion.items():
            total = sum(row.values())
            if abs(total - 1.0) > 1e-9:
                raise ValueError(f"confusion row for {label.value} sums to {total}, expected 1")

    def with_uniform_recall(self, p: float) -> "StochasticRecognizerModel":
        return StochasticRecognizerModel(
            detect_prob={label: p for label in LABELS},
            confusion=self.confusion,
            latency_mean_s=self.latency_mean_s,
            latency_jitter_s=self.latency_jitter_s,
        )


def stochastic_recognize(
    true_label: GestureLabel,
    model: StochasticRecognizerModel,
    rng: random.Random,
    at_time: float = 0.0,
) -> GestureDetection | None:
    """One recognition attempt; deterministic for a given rng state.

    With probability ``detect_prob[true_label]`` the gesture is detected;
    the reported label is drawn from the confusion row and the timestamp
    carries a latency draw. Otherwise the gesture goes unnoticed.
    """
    if rng.random() >= model.detect_prob[true_label]:
        return None
    row = model.confusion[true_label]
    u = rng.random()
    acc = 0.0
    reported = true_label
    for label in LABELS:
        acc += row[label]
        if u < acc:
            reported = label
            break
    latency = model.latency_mean_s + rng.uniform(-model.latency_jitter_s, model.latency_jitter_s)
    return GestureDetection(reported, at_time + max(latency, 0.0), confidence=1.0)
