"""Snapshot timelines: fixed-interval samples of a player's resources.

A snapshot holds the 10 per-player features logged by the simulator
(gold, unit/building totals, per-type quantities and counts). Both
timelines of a comparison are min-max normalized jointly, per feature,
to [-1, 1]; normalizing each timeline on its own would erase exactly
the magnitude differences the metric is supposed to see.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..hexsim.match import GameRecord
from ..hexsim.state import FEATURE_NAMES


@dataclass(frozen=True)
class SnapshotTimeline:
    samples: np.ndarray      # (n, k), raw feature values
    interval: int            # rounds between snapshots

    def __len__(self) -> int:
        return self.samples.shape[0]


def sample_timeline(record: GameRecord, player: str,
                    interval: int) -> SnapshotTimeline:
    """Snapshots at rounds interval, 2*interval, ..., up to game length."""
    if interval < 1:
        raise ValueError("sample interval must be >= 1")
    feats = record.features[player]
    n = len(feats) // interval
    rows = [feats[(i + 1) * interval - 1] for i in range(n)]
    data = np.array(rows, dtype=np.float64).reshape(n, len(FEATURE_NAMES))
    return SnapshotTimeline(data, interval)


def normalize_joint(a: SnapshotTimeline,
                    b: SnapshotTimeline) -> tuple[np.ndarray, np.ndarray]:
    """Per-feature min-max over the union of both timelines, to [-1, 1].

    A feature that is constant across both timelines maps to 0.
    """
    if len(a) == 0 or len(b) == 0:
        raise ValueError("cannot normalize an empty timeline")
    if a.samples.shape[1] != b.samples.shape[1]:
        raise ValueError("timelines disagree on feature count")
    lo = np.minimum(a.samples.min(axis=0), b.samples.min(axis=0))
    hi = np.maximum(a.samples.max(axis=0), b.samples.max(axis=0))
    span = hi - lo
    safe = np.where(span > 0, span, 1.0)

    def norm(x: np.ndarray) -> np.ndarray:
        out = -1.0 + 2.0 * (x - lo) / safe
        out[:, span == 0] = 0.0
        return out

    return norm(a.samples), norm(b.samples)


def timeline_csv(tl: SnapshotTimeline) -> str:
    lines = [",".join(FEATURE_NAMES)]
    for row in tl.samples:
        lines.append(",".join(str(int(v)) for v in row))
    return "\n".join(lines) + "\n"


def parse_timeline_csv(text: str, interval: int) -> SnapshotTimeline:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    data = [[float(x) for x in ln.split(",")] for ln in lines[1:]]
    arr = np.array(data, dtype=np.float64).reshape(len(data), len(FEATURE_NAMES))
    return SnapshotTimeline(arr, interval)
