"""Dynamic time warping over fixed-dimension sample sequences."""

from __future__ import annotations

import numpy as np


def dtw_distance(seq_a, seq_b) -> float:
    """Accumulated cost of the optimal monotonic alignment of two sequences.

    Per-step cost is the Euclidean distance between samples (absolute
    difference for scalar sequences). Symmetric; zero exactly when the two
    sequences admit an alignment of identical samples.
    """
    a = np.atleast_2d(np.asarray(seq_a, dtype=float))
    b = np.atleast_2d(np.asarray(seq_b, dtype=float))
    if a.shape[0] == 1 and a.shape[1] > 1 and np.ndim(seq_a) == 1:
        a = a.T
    if b.shape[0] == 1 and b.shape[1] > 1 and np.ndim(seq_b) == 1:
        b = b.T
    if a.size == 0 or b.size == 0:
        raise ValueError("dtw_distance requires non-empty sequences")
    if a.shape[1] != b.shape[1]:
        raise ValueError(f"sample dimensions differ: {a.shape[1]} vs {b.shape[1]}")

    n, m = a.shape[0], b.shape[0]
    # pairwise cost matrix, then the classic O(n*m) accumulation
    diff = a[:, None, :] - b[None, :, :]
    cost = np.sqrt((diff * diff).sum(axis=2))
    acc = np.full((n + 1, m + 1), np.inf)
    acc[0, 0] = 0.0
    for i in range(1, n + 1):
        row = acc[i]
        prev = acc[i - 1]
        for j in range(1, m + 1):
            row[j] = cost[i - 1, j - 1] + min(prev[j], row[j - 1], prev[j - 1])
    return float(acc[n, m])
