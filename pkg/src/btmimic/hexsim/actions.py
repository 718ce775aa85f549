"""Game actions and the Action Time-List (ATL) wire format.

ATL files are line oriented, UTF-8, LF endings:

    round;player;action;param1;param2;...

Action parameter order matches the action signatures:
    move;id;q,r;proportion
    spawn;id;type;quantity
    settle;id;type;q,r
    upgrade;id
    repair;id
    query
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .coords import Coord

PROPORTIONS = (0.25, 0.5, 0.75, 1.0)


@dataclass(frozen=True)
class Move:
    id: int
    position: Coord
    proportion: float = 1.0
    kind = "move"

    def __post_init__(self):
        if self.proportion not in PROPORTIONS:
            raise ValueError(f"proportion must be one of {PROPORTIONS}")


@dataclass(frozen=True)
class SpawnUnit:
    id: int
    type: str
    quantity: int
    kind = "spawn"


@dataclass(frozen=True)
class SettleBuilding:
    id: int
    type: str
    position: Coord
    kind = "settle"


@dataclass(frozen=True)
class Upgrade:
    id: int
    kind = "upgrade"


@dataclass(frozen=True)
class Repair:
    id: int
    kind = "repair"


@dataclass(frozen=True)
class Query:
    kind = "query"


Action = Union[Move, SpawnUnit, SettleBuilding, Upgrade, Repair, Query]

# (round, player, action) triple as stored in an ATL
AtlEntry = tuple[int, str, Action]


def _fmt_pos(cell: Coord) -> str:
    return f"{cell[0]},{cell[1]}"


def _parse_pos(token: str) -> Coord:
    q, r = token.split(",")
    return (int(q), int(r))


def _fmt_prop(p: float) -> str:
    # 0.25/0.5/0.75/1.0 round-trip exactly through repr
    return repr(p)


def format_action(action: Action) -> str:
    if isinstance(action, Move):
        return f"move;{action.id};{_fmt_pos(action.position)};{_fmt_prop(action.proportion)}"
    if isinstance(action, SpawnUnit):
        return f"spawn;{action.id};{action.type};{action.quantity}"
    if isinstance(action, SettleBuilding):
        return f"settle;{action.id};{action.type};{_fmt_pos(action.position)}"
    if isinstance(action, Upgrade):
        return f"upgrade;{action.id}"
    if isinstance(action, Repair):
        return f"repair;{action.id}"
    if isinstance(action, Query):
        return "query"
    raise TypeError(f"not an action: {action!r}")


def parse_action(name: str, params: list[str]) -> Action:
    if name == "move":
        return Move(int(params[0]), _parse_pos(params[1]), float(params[2]))
    if name == "spawn":
        return SpawnUnit(int(params[0]), params[1], int(params[2]))
    if name == "settle":
        return SettleBuilding(int(params[0]), params[1], _parse_pos(params[2]))
    if name == "upgrade":
        return Upgrade(int(params[0]))
    if name == "repair":
        return Repair(int(params[0]))
    if name == "query":
        return Query()
    raise ValueError(f"unknown action name {name!r}")


def format_atl(entries: list[AtlEntry]) -> str:
    lines = []
    for rnd, player, action in entries:
        lines.append(f"{rnd};{player};{format_action(action)}")
    return "\n".join(lines) + ("\n" if lines else "")


def parse_atl(text: str) -> list[AtlEntry]:
    entries: list[AtlEntry] = []
    last_round = -1
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        fields = line.split(";")
        if len(fields) < 3:
            raise ValueError(f"ATL line {lineno}: expected round;player;action;...")
        rnd = int(fields[0])
        player = fields[1]
        if player not in ("red", "green"):
            raise ValueError(f"ATL line {lineno}: bad player {player!r}")
        if rnd < last_round:
            raise ValueError(f"ATL line {lineno}: rounds must be non-decreasing")
        last_round = rnd
        entries.append((rnd, player, parse_action(fields[2], fields[3:])))
    return entries
