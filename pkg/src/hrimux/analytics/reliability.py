"""Internal-consistency coefficient for questionnaire scales."""

from __future__ import annotations

import numpy as np

from .confusion import AnalyticsError

RELIABILITY_THRESHOLD = 0.7  # rule-of-thumb floor for a reliable scale


def cronbach_alpha(item_matrix) -> float:
    """alpha = k/(k-1) * (1 - sum(item variances) / variance(total score)).

    ``item_matrix`` is respondents x items. Sample variances (n-1
    denominator) throughout. Undefined when fewer than two items or
    respondents are given or the total score never varies.
    """
    data = np.asarray(item_matrix, dtype=float)
    if data.ndim != 2:
        raise AnalyticsError("item matrix must be 2-dimensional (respondents x items)")
    n, k = data.shape
    if k < 2:
        raise AnalyticsError(f"need at least 2 items, got {k}")
    if n < 2:
        raise AnalyticsError(f"need at least 2 respondents, got {n}")
    item_var = data.var(axis=0, ddof=1).sum()
    total_var = data.sum(axis=1).var(ddof=1)
    if total_var == 0:
        raise AnalyticsError("total score variance is zero; alpha undefined")
    return float(k / (k - 1) * (1.0 - item_var / total_var))


def is_reliable(alpha: float, threshold: float = RELIABILITY_THRESHOLD) -> bool:
    return alpha >= threshold
