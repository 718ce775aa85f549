"""The tree-driven player."""

from __future__ import annotations

from ..hexsim.balance import parse_kv
from ..resources import read_ref
from .nodes import BlackBoard, Node, TickContext, tick


def load_delay_table(ref: str = "builtin:default.delays") -> dict[str, int]:
    return {k: int(v) for k, v in parse_kv(read_ref(ref)).items()}


class BHTPlayer:
    """Ticks a bound behavior tree once per round."""

    strict = False

    def __init__(self, root: Node, delay_table: dict[str, int] | None = None):
        self.root = root
        self.delay_table = delay_table if delay_table is not None \
            else load_delay_table()
        self.bb: BlackBoard | None = None

    def start(self, handle) -> None:
        self.bb = BlackBoard()

    def act(self, handle) -> None:
        tick(self.root, TickContext(handle, self.bb, self.delay_table))
