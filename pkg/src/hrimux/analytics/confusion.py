"""Confusion matrix with per-class recall/precision and overall accuracy.

Rows are the performed gestures, columns the four predictions plus a
"missed" column for undetected executions. Missed counts enter the recall
denominators (a gesture the system never saw is still a failed recall)
but are excluded from precision, which only judges emitted predictions.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..gestures.recognizer import GestureLabel

LABELS = tuple(GestureLabel)
MISSED = "missed"


class AnalyticsError(Exception):
    pass


@dataclass(frozen=True)
class TrialRecord:
    true: GestureLabel
    predicted: GestureLabel | None  # None = missed


@dataclass(frozen=True)
class ConfusionMatrix:
    counts: tuple[tuple[int, ...], ...]  # len(LABELS) rows x len(LABELS)+1 cols

    @property
    def total(self) -> int:
        return sum(sum(row) for row in self.counts)

    @property
    def trace(self) -> int:
        return sum(self.counts[i][i] for i in range(len(LABELS)))

    @property
    def accuracy(self) -> float:
        return self.trace / self.total

    def row_sum(self, label: GestureLabel) -> int:
        return sum(self.counts[LABELS.index(label)])

    def column_sum(self, label: GestureLabel) -> int:
        j = LABELS.index(label)
        return sum(row[j] for row in self.counts)

    def missed(self, label: GestureLabel) -> int:
        return self.counts[LABELS.index(label)][len(LABELS)]

    def recall(self, label: GestureLabel) -> float | None:
        """None when the class never occurred among the true labels."""
        row = self.row_sum(label)
        if row == 0:
            return None
        i = LABELS.index(label)
        return self.counts[i][i] / row

    def precision(self, label: GestureLabel) -> float | None:
        """None when the class was never predicted (undefined ratio)."""
        col = self.column_sum(label)
        if col == 0:
            return None
        i = LABELS.index(label)
        return self.counts[i][i] / col

    def summary(self) -> dict:
        return {
            "accuracy": self.accuracy,
            "recall": {l.value: self.recall(l) for l in LABELS},
            "precision": {
                l.value: self.precision(l) for l in LABELS
            },
        }


def confusion_matrix(trials: list[TrialRecord]) -> ConfusionMatrix:
    if not trials:
        raise AnalyticsError("confusion_matrix needs at least one trial")
    counts = [[0] * (len(LABELS) + 1) for _ in LABELS]
    for trial in trials:
        i = LABELS.index(trial.true)
        j = len(LABELS) if trial.predicted is None else LABELS.index(trial.predicted)
        counts[i][j] += 1
    return ConfusionMatrix(tuple(tuple(row) for row in counts))


def render_confusion(matrix: ConfusionMatrix) -> str:
    """Plain-text table: rows true labels, columns predictions + missed,
    recall column and precision row appended."""
    header = ["true\\pred"] + [l.value for l in LABELS] + [MISSED, "recall"]
    lines = ["\t".join(header)]
    for i, label in enumerate(LABELS):
        recall = matrix.recall(label)
        shown = "-" if recall is None else f"{recall:.3f}"
        row = [label.value] + [str(c) for c in matrix.counts[i]] + [shown]
        lines.append("\t".join(row))
    precisions = [
        "-" if matrix.precision(l) is None else f"{matrix.precision(l):.3f}" for l in LABELS
    ]
    lines.append("\t".join(["precision"] + precisions + ["-", f"acc={matrix.accuracy:.3f}"]))
    return "\n".join(lines)
