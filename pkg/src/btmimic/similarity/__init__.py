from .metric import (
    DEFAULT_SAMPLE_INTERVAL,
    KERNEL_BACKEND,
    best_trend_series,
    build_similarity_matrix,
    dump_matrix,
    gameplay_similarity,
    get_kernel,
    length_penalty,
    similarity_of_timelines,
)
from .timeline import (
    SnapshotTimeline,
    normalize_joint,
    parse_timeline_csv,
    sample_timeline,
    timeline_csv,
)
from .trends import (
    InvalidTrendSeries,
    Trend,
    brute_force_trend_series,
    trend_series_value,
    trend_value,
    validate_trend_series,
)

__all__ = [
    "DEFAULT_SAMPLE_INTERVAL", "KERNEL_BACKEND",
    "best_trend_series", "build_similarity_matrix", "dump_matrix",
    "gameplay_similarity", "get_kernel", "length_penalty",
    "similarity_of_timelines",
    "SnapshotTimeline", "normalize_joint", "sample_timeline",
    "timeline_csv", "parse_timeline_csv",
    "InvalidTrendSeries", "Trend", "brute_force_trend_series",
    "trend_series_value", "trend_value", "validate_trend_series",
]
