"""Trends and trend-series over a cell-similarity matrix.

A trend is a run of diagonal cells; its value is (sum of cells) times
length squared, so long coherent stretches dominate. A trend-series
covers every column exactly once with trends that cannot be merged into
longer diagonals; its value is the summed trend value divided by the
cube of the total length (= column count).

``brute_force_trend_series`` enumerates every admissible series and is
the verification oracle for the dynamic program in ``metric``; keep it
independent of that code path.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class InvalidTrendSeries(ValueError):
    pass


@dataclass(frozen=True)
class Trend:
    row: int      # start cell row (context index)
    col: int      # start cell column (evaluated index)
    length: int

    @property
    def end_row(self) -> int:
        return self.row + self.length - 1

    @property
    def end_col(self) -> int:
        return self.col + self.length - 1


def trend_value(t: Trend, matrix: np.ndarray) -> float:
    cells = [matrix[t.row + x, t.col + x] for x in range(t.length)]
    return float(sum(cells)) * t.length ** 2


def validate_trend_series(trends: list[Trend], matrix: np.ndarray) -> None:
    """Raise InvalidTrendSeries unless the two defining constraints hold."""
    m, n = matrix.shape
    ordered = sorted(trends, key=lambda t: t.col)
    col = 0
    prev: Trend | None = None
    for t in ordered:
        if t.length < 1:
            raise InvalidTrendSeries(f"trend {t} has non-positive length")
        if t.col != col:
            raise InvalidTrendSeries(
                f"columns not covered exactly once at column {col}")
        if t.row < 0 or t.end_row >= m or t.end_col >= n:
            raise InvalidTrendSeries(f"trend {t} leaves the matrix")
        if prev is not None and t.row == prev.end_row + 1:
            raise InvalidTrendSeries(
                f"trends {prev} and {t} could be merged into one diagonal")
        col = t.end_col + 1
        prev = t
    if col != n:
        raise InvalidTrendSeries(f"columns {col}..{n - 1} not covered")


def trend_series_value(trends: list[Trend], matrix: np.ndarray) -> float:
    validate_trend_series(trends, matrix)
    total_len = sum(t.length for t in trends)
    total = sum(trend_value(t, matrix) for t in trends)
    return total / total_len ** 3


BRUTE_FORCE_CAP = 8


def brute_force_trend_series(matrix: np.ndarray) -> tuple[float, list[Trend]]:
    """Exhaustive maximum over all admissible trend-series.

    Enumerates all column compositions into diagonal runs and all row
    placements, skipping mergeable neighbors. Exponential; refuses
    matrices beyond 8x8.
    """
    m, n = matrix.shape
    if m > BRUTE_FORCE_CAP or n > BRUTE_FORCE_CAP:
        raise ValueError(f"brute force capped at {BRUTE_FORCE_CAP}x{BRUTE_FORCE_CAP}")
    if m < 1 or n < 1:
        raise ValueError("matrix must be non-empty")

    # seg[i][j][L] = sum of the diagonal run of length L ending at (i, j)
    P = matrix.astype(np.float64).copy()
    for i in range(1, m):
        P[i, 1:] += P[i - 1, :-1]

    def run_sum(end_row: int, end_col: int, length: int) -> float:
        top = P[end_row, end_col]
        if end_row - length >= 0 and end_col - length >= 0:
            top -= P[end_row - length, end_col - length]
        return float(top)

    best_value = -np.inf
    best_series: list[Trend] = []
    stack: list[Trend] = []

    def recurse(col: int, prev_end_row: int, acc: float) -> None:
        nonlocal best_value, best_series
        if col == n:
            if acc > best_value:
                best_value = acc
                best_series = list(stack)
            return
        for length in range(1, min(m, n - col) + 1):
            for row in range(0, m - length + 1):
                if row == prev_end_row + 1:
                    continue  # mergeable with the previous trend
                end_row = row + length - 1
                v = run_sum(end_row, col + length - 1, length) * length * length
                stack.append(Trend(row, col, length))
                recurse(col + length, end_row, acc + v)
                stack.pop()

    recurse(0, -2, 0.0)  # -2: nothing is mergeable with the first trend
    return best_value / n ** 3, best_series
