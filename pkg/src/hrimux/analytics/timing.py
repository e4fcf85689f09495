"""Box-plot statistics and completion accounting for session datasets."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .confusion import AnalyticsError

IQR_FACTOR = 1.5


@dataclass(frozen=True)
class BoxStats:
    n: int
    median: float
    q1: float
    q3: float
    whisker_low: float
    whisker_high: float
    outliers: tuple[float, ...]

    @property
    def iqr(self) -> float:
        return self.q3 - self.q1


def boxplot_stats(samples) -> BoxStats:
    """Quartiles by linear interpolation; outliers beyond 1.5*IQR of them."""
    data = np.asarray(list(samples), dtype=float)
    if data.size == 0:
        raise AnalyticsError("boxplot_stats needs at least one sample")
    q1, median, q3 = (float(v) for v in np.percentile(data, [25, 50, 75]))
    iqr = q3 - q1
    low_fence = q1 - IQR_FACTOR * iqr
    high_fence = q3 + IQR_FACTOR * iqr
    inside = data[(data >= low_fence) & (data <= high_fence)]
    outliers = data[(data < low_fence) | (data > high_fence)]
    return BoxStats(
        n=int(data.size),
        median=median,
        q1=q1,
        q3=q3,
        whisker_low=float(inside.min()),
        whisker_high=float(inside.max()),
        outliers=tuple(sorted(float(v) for v in outliers)),
    )


@dataclass(frozen=True)
class CompletionSummary:
    sessions: dict[str, int]  # modality -> session count
    completed_all: dict[str, int]  # modality -> sessions finishing every task
    per_task_n: dict[str, tuple[int, ...]]  # modality -> sessions reaching each task


def completion_summary(session_logs, n_tasks: int = 4) -> CompletionSummary:
    """Counts per modality; a session contributes timings only for tasks it reached."""
    sessions: dict[str, int] = {}
    completed: dict[str, int] = {}
    reached: dict[str, list[int]] = {}
    for log in session_logs:
        modality = log.modality
        sessions[modality] = sessions.get(modality, 0) + 1
        completed.setdefault(modality, 0)
        reached.setdefault(modality, [0] * n_tasks)
        if all(log.completed[:n_tasks]) and len(log.completed) >= n_tasks:
            completed[modality] += 1
        for k in range(min(len(log.task_durations), n_tasks)):
            reached[modality][k] += 1
    return CompletionSummary(
        sessions=sessions,
        completed_all=completed,
        per_task_n={m: tuple(v) for m, v in reached.items()},
    )


def task_durations_by_modality(session_logs, n_tasks: int = 4) -> dict[str, list[list[float]]]:
    """modality -> per-task lists of durations from sessions that reached the task."""
    out: dict[str, list[list[float]]] = {}
    for log in session_logs:
        buckets = out.setdefault(log.modality, [[] for _ in range(n_tasks)])
        for k, duration in enumerate(log.task_durations[:n_tasks]):
            buckets[k].append(duration)
    return out


def render_timing(session_logs, n_tasks: int = 4) -> str:
    summary = completion_summary(session_logs, n_tasks)
    durations = task_durations_by_modality(session_logs, n_tasks)
    lines = ["timing summary"]
    for modality in sorted(summary.sessions):
        lines.append(
            f"  {modality}: {summary.completed_all[modality]}/{summary.sessions[modality]} "
            f"sessions completed all {n_tasks} tasks"
        )
        for k in range(n_tasks):
            samples = durations[modality][k]
            if not samples:
                lines.append(f"    task {k + 1}: no data")
                continue
            box = boxplot_stats(samples)
            lines.append(
                f"    task {k + 1}: n={box.n} median={box.median:.1f}s "
                f"q1={box.q1:.1f} q3={box.q3:.1f} outliers={len(box.outliers)}"
            )
    return "\n".join(lines)
