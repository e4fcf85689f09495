"""Delimited text inputs for the analytics operations.

Formats (documented in protocol.md):
  - gesture trials: one ``true<TAB>predicted`` pair per line, ``-`` for a
    missed detection; header lines starting with ``#`` are skipped.
  - questionnaire: one respondent per line, 26 comma- or tab-separated
    scores on the -3..+3 scale.
  - timings: ``modality<TAB>task_index<TAB>seconds`` per line.
"""

from __future__ import annotations

from pathlib import Path

from .confusion import AnalyticsError, TrialRecord
from ..gestures.recognizer import GestureLabel


def _data_lines(path: str | Path) -> list[str]:
    lines = Path(path).read_text().splitlines()
    return [ln.strip() for ln in lines if ln.strip() and not ln.lstrip().startswith("#")]


def load_trials(path: str | Path) -> list[TrialRecord]:
    trials = []
    for ln in _data_lines(path):
        parts = ln.split()
        if len(parts) != 2:
            raise AnalyticsError(f"bad trial line: {ln!r}")
        true, predicted = parts
        trials.append(
            TrialRecord(
                GestureLabel(true),
                None if predicted == "-" else GestureLabel(predicted),
            )
        )
    return trials


def load_questionnaire(path: str | Path) -> list[list[float]]:
    rows = []
    for ln in _data_lines(path):
        parts = ln.replace(",", " ").split()
        rows.append([float(p) for p in parts])
    return rows


def load_timings(path: str | Path) -> dict[str, dict[int, list[float]]]:
    out: dict[str, dict[int, list[float]]] = {}
    for ln in _data_lines(path):
        parts = ln.split()
        if len(parts) != 3:
            raise AnalyticsError(f"bad timing line: {ln!r}")
        modality, task, seconds = parts
        out.setdefault(modality, {}).setdefault(int(task), []).append(float(seconds))
    return out
