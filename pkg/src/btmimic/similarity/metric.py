"""The gameplay similarity metric.

Pipeline: sample both records into snapshot timelines, normalize them
jointly, build the cell-similarity matrix, then maximize the
trend-series value with a cubic dynamic program. Cell similarity is
1 - d/2 where d is the averaged Manhattan distance of two normalized
snapshots; d spans [0, 2], so cells land in [0, 1] and a perfect match
scores exactly 1.

The DP kernel is compiled (Cython) when available, with a bit-identical
numpy fallback; ``KERNEL_BACKEND`` names the one in use.
"""

from __future__ import annotations

import numpy as np

from ..hexsim.match import GameRecord
from .timeline import SnapshotTimeline, normalize_joint, sample_timeline
from .trends import Trend

try:
    from ._dp import trend_kernel as _compiled_kernel
except ImportError:
    _compiled_kernel = None

from ._dp_py import trend_kernel as _python_kernel

if _compiled_kernel is not None:
    _kernel = _compiled_kernel
    KERNEL_BACKEND = "cython"
else:
    _kernel = _python_kernel
    KERNEL_BACKEND = "python"

DEFAULT_SAMPLE_INTERVAL = 5  # rounds; 2 Hz at 10 rounds per second


def get_kernel(backend: str):
    """Explicit kernel access for benchmarks and parity tests."""
    if backend == "cython":
        if _compiled_kernel is None:
            raise RuntimeError("compiled kernel not built")
        return _compiled_kernel
    if backend == "python":
        return _python_kernel
    raise ValueError(f"unknown backend {backend!r}")


def build_similarity_matrix(norm_context: np.ndarray,
                            norm_evaluated: np.ndarray) -> np.ndarray:
    """Cell similarities s[i, j] = 1 - mean_l |C[i,l] - E[j,l]| / 2."""
    if norm_context.shape[1] != norm_evaluated.shape[1]:
        raise ValueError("snapshot dimensions differ")
    m = norm_context.shape[0]
    n = norm_evaluated.shape[0]
    k = norm_context.shape[1]
    acc = np.zeros((m, n))
    for l in range(k):  # feature-chunked to keep memory at O(m*n)
        acc += np.abs(norm_context[:, l, None] - norm_evaluated[None, :, l])
    return 1.0 - acc / (2.0 * k)


def best_trend_series(matrix: np.ndarray) -> tuple[float, list[Trend]]:
    """Maximum trend-series value over the matrix, with one witness."""
    matrix = np.ascontiguousarray(matrix, dtype=np.float64)
    m, n = matrix.shape
    raw, end_row, bl, pred = _kernel(matrix)
    trends: list[Trend] = []
    j = n - 1
    i = int(end_row)
    while True:
        length = int(bl[j, i])
        start_row = i - length + 1
        start_col = j - length + 1
        trends.append(Trend(start_row, start_col, length))
        if start_col == 0:
            break
        i = int(pred[start_col, start_row])
        j = start_col - 1
    trends.reverse()
    return raw / n ** 3, trends


def length_penalty(record_context: GameRecord,
                   record_evaluated: GameRecord) -> float:
    """Absolute relative deviation of gameplay lengths, in rounds."""
    if record_context.length <= 0:
        raise ValueError("context gameplay has zero length")
    return abs(1.0 - record_evaluated.length / record_context.length)


def similarity_of_timelines(context: SnapshotTimeline,
                            evaluated: SnapshotTimeline) -> float:
    nc, ne = normalize_joint(context, evaluated)
    matrix = build_similarity_matrix(nc, ne)
    value, _ = best_trend_series(matrix)
    return value


def gameplay_similarity(record_context: GameRecord,
                        record_evaluated: GameRecord,
                        player: str = "red",
                        interval: int = DEFAULT_SAMPLE_INTERVAL) -> float:
    """Similarity of two gameplays from the evaluated player's side."""
    tc = sample_timeline(record_context, player, interval)
    te = sample_timeline(record_evaluated, player, interval)
    return similarity_of_timelines(tc, te)


def dump_matrix(matrix: np.ndarray) -> str:
    """Dense text grid, for debugging."""
    lines = []
    for row in matrix:
        lines.append(" ".join(f"{v:.4f}" for v in row))
    return "\n".join(lines) + "\n"
