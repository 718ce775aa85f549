"""Map files: a W x H axial-coordinate board with disabled cells.

Line format:
    W H                 header, board spans q in [0, W), r in [0, H)
    C red q r           red castle start cell
    C green q r         green castle start cell
    D q r               disabled cell (water, mountains, ...)
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .balance import ConfigError
from .coords import Coord


@dataclass(frozen=True)
class GameMap:
    width: int
    height: int
    start_cells: dict[str, Coord]          # player -> castle cell
    disabled: frozenset[Coord] = field(default_factory=frozenset)

    def in_bounds(self, cell: Coord) -> bool:
        q, r = cell
        return 0 <= q < self.width and 0 <= r < self.height

    def is_enabled(self, cell: Coord) -> bool:
        return self.in_bounds(cell) and cell not in self.disabled

    def all_cells(self):
        for q in range(self.width):
            for r in range(self.height):
                yield (q, r)


def parse_map(text: str) -> GameMap:
    width = height = 0
    starts: dict[str, Coord] = {}
    disabled: set[Coord] = set()
    header_seen = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if not header_seen:
            if len(parts) != 2:
                raise ConfigError(f"line {lineno}: expected 'W H' header")
            width, height = int(parts[0]), int(parts[1])
            if width < 1 or height < 1:
                raise ConfigError("map dimensions must be positive")
            header_seen = True
        elif parts[0] == "C":
            if len(parts) != 4 or parts[1] not in ("red", "green"):
                raise ConfigError(f"line {lineno}: expected 'C red|green q r'")
            starts[parts[1]] = (int(parts[2]), int(parts[3]))
        elif parts[0] == "D":
            if len(parts) != 3:
                raise ConfigError(f"line {lineno}: expected 'D q r'")
            disabled.add((int(parts[1]), int(parts[2])))
        else:
            raise ConfigError(f"line {lineno}: unknown map directive {parts[0]!r}")
    if not header_seen:
        raise ConfigError("map file has no header line")
    if set(starts) != {"red", "green"}:
        raise ConfigError("map must declare exactly one castle cell per player")
    gm = GameMap(width, height, starts, frozenset(disabled))
    for player, cell in starts.items():
        if not gm.in_bounds(cell):
            raise ConfigError(f"{player} start cell {cell} out of bounds")
        if cell in disabled:
            raise ConfigError(f"{player} start cell {cell} is disabled")
    return gm


def format_map(gm: GameMap) -> str:
    lines = [f"{gm.width} {gm.height}"]
    for player in ("red", "green"):
        q, r = gm.start_cells[player]
        lines.append(f"C {player} {q} {r}")
    for q, r in sorted(gm.disabled):
        lines.append(f"D {q} {r}")
    return "\n".join(lines) + "\n"


def load_map(path) -> GameMap:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_map(fh.read())
