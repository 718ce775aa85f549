"""The two shipped strategies.

``build_strategy`` loads the packaged template and parameter files; the
defaults in the parameter files are the canonical vectors the
experiment harness calls p_A and p_B.
"""

from __future__ import annotations

from ..btree.params import AdaptiveBehaviorTree
from ..btree.templates import load_abt
from ..resources import read_ref

from . import services  # noqa: F401  (registers the service leaves)


def build_strategy(kind: str) -> AdaptiveBehaviorTree:
    kind = kind.upper()
    if kind not in ("A", "B"):
        raise ValueError(f"unknown strategy kind {kind!r}")
    suffix = kind.lower()
    template = read_ref(f"builtin:strategy_{suffix}.bt")
    params = read_ref(f"builtin:strategy_{suffix}.params")
    return load_abt(template, params)
