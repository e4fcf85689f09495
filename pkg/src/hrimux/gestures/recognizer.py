"""Online template-matching gesture recognizer for streaming IMU data.

Replaces a learned model with a deliberately simple, pluggable pipeline:
a sliding window of the last W samples is compared by DTW against one
calibrated template per gesture, and a detection fires when the best
distance drops below the calibrated threshold. A refractory period keeps
one physical gesture from producing a burst of detections, and windows
with negligible motion are skipped outright.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .dtw import dtw_distance
from ..fsm.machine import Signal


class GestureLabel(str, Enum):
    G1 = "G1"  # wrist up
    G2 = "G2"  # wrist down
    G3 = "G3"  # spike clockwise
    G4 = "G4"  # spike counter-clockwise


GESTURE_SLOTS = {
    GestureLabel.G1: 1,
    GestureLabel.G2: 2,
    GestureLabel.G3: 3,
    GestureLabel.G4: 4,
}

IMU_RATE_HZ = 10.0


@dataclass(frozen=True)
class ImuSample:
    timestamp: float
    accel: tuple[float, float, float]
    gyro: tuple[float, float, float]

    def vector(self) -> np.ndarray:
        return np.array(self.accel + self.gyro, dtype=float)


@dataclass(frozen=True)
class GestureDetection:
    label: GestureLabel
    timestamp: float
    confidence: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.confidence <= 1.0:
            raise ValueError("confidence must be within [0, 1]")


@dataclass(frozen=True)
class GestureTemplate:
    label: GestureLabel
    samples: tuple[ImuSample, ...]

    def matrix(self) -> np.ndarray:
        return np.stack([s.vector() for s in self.samples])


class CalibrationError(Exception):
    pass


def resample_to_length(samples: list[ImuSample], length: int) -> tuple[ImuSample, ...]:
    """Linear-interpolate a trial onto exactly ``length`` samples."""
    if not samples:
        raise CalibrationError("cannot resample an empty trial")
    if len(samples) == length:
        return tuple(samples)
    src = np.stack([s.vector() for s in samples])
    t_src = np.linspace(0.0, 1.0, len(samples))
    t_dst = np.linspace(0.0, 1.0, length)
    out = np.stack([np.interp(t_dst, t_src, src[:, k]) for k in range(src.shape[1])], axis=1)
    ts = np.interp(t_dst, t_src, [s.timestamp for s in samples])
    return tuple(
        ImuSample(float(ts[i]), tuple(out[i, :3]), tuple(out[i, 3:])) for i in range(length)
    )


def calibrate_templates(
    labeled_trials: dict[GestureLabel, list[list[ImuSample]]],
    window: int = 10,
    threshold_margin: float = 1.05,
) -> tuple[dict[GestureLabel, GestureTemplate], float]:
    """Pick one medoid template per label and a matching threshold.

    The medoid is the trial minimizing the summed DTW distance to the other
    trials of its label; the threshold is the largest distance from any
    training trial to its label's medoid, widened by ``threshold_margin``
    so every training trial matches its own class.
    """
    missing = [label.value for label in GestureLabel if not labeled_trials.get(label)]
    if missing:
        raise CalibrationError("missing trials for label(s): " + ", ".join(missing))

    normalized = {
        label: [resample_to_length(trial, window) for trial in trials]
        for label, trials in labeled_trials.items()
    }
    templates: dict[GestureLabel, GestureTemplate] = {}
    worst = 0.0
    for label, trials in normalized.items():
        mats = [np.stack([s.vector() for s in trial]) for trial in trials]
        sums = [sum(dtw_distance(mats[i], other) for other in mats) for i in range(len(mats))]
        medoid = int(np.argmin(sums))
        templates[label] = GestureTemplate(label, trials[medoid])
        worst = max(worst, max(dtw_distance(mat, mats[medoid]) for mat in mats))
    threshold = worst * threshold_margin if worst > 0 else 1e-6
    return templates, threshold


class OnlineRecognizer:
    """One instance per IMU stream; single-threaded over its own stream."""

    def __init__(
        self,
        templates: dict[GestureLabel, GestureTemplate],
        threshold: float,
        window: int = 10,
        refractory_s: float = 1.0,
        motion_floor: float = 0.05,
    ):
        lengths = {len(t.samples) for t in templates.values()}
        if lengths and lengths != {window}:
            raise ValueError(f"all templates must have window length {window}, got {lengths}")
        self.templates = {label: t.matrix() for label, t in templates.items()}
        self.threshold = threshold
        self.window = window
        self.refractory_s = refractory_s
        self.motion_floor = motion_floor
        self._buffer: deque[ImuSample] = deque(maxlen=window)
        self._last_t: float | None = None
        self._suppress_until = -np.inf

    def ingest_sample(self, sample: ImuSample) -> GestureDetection | None:
        if self._last_t is not None and sample.timestamp <= self._last_t:
            raise ValueError(
                f"out-of-order sample: {sample.timestamp} after {self._last_t}"
            )
        self._last_t = sample.timestamp
        self._buffer.append(sample)
        if len(self._buffer) < self.window:
            return None
        if sample.timestamp < self._suppress_until:
            return None
        mat = np.stack([s.vector() for s in self._buffer])
        if float(mat.std(axis=0).max()) < self.motion_floor:
            return None
        best_label, best_dist = None, np.inf
        for label, template in self.templates.items():
            d = dtw_distance(mat, template)
            if d < best_dist:
                best_label, best_dist = label, d
        if best_label is None or best_dist >= self.threshold:
            return None
        self._suppress_until = sample.timestamp + self.refractory_s
        confidence = float(np.clip(1.0 - best_dist / self.threshold, 0.0, 1.0))
        return GestureDetection(best_label, sample.timestamp, confidence)


def gesture_to_signal(detection: GestureDetection) -> Signal:
    """G1..G4 map one-to-one onto command handler slots 1..4."""
    return Signal(slot=GESTURE_SLOTS[detection.label], timestamp=detection.timestamp)
