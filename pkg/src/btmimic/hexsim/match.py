"""Running full games and recording them as replayable ATLs.

A driver only needs ``start(handle)`` and ``act(handle)``; the handle is
the sole way drivers touch the game, and it logs every issued action
into the record. Replaying a record's two ATLs under the same seed
reproduces the record bit for bit.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

from .actions import Action, AtlEntry, Query, format_atl, parse_atl
from .balance import BalanceTable
from .engine import step_round
from .hexmap import GameMap
from .state import (
    FEATURE_NAMES,
    GREEN,
    RED,
    GameState,
    GameStatus,
    WorldView,
    check_feasible,
    create_game,
    issue_action,
    world_view,
)


class GameHandle:
    """A single player's port into a running game."""

    __slots__ = ("state", "player", "record")

    def __init__(self, state: GameState, player: str, record: "GameRecord"):
        self.state = state
        self.player = player
        self.record = record

    @property
    def round(self) -> int:
        return self.state.round

    def view(self) -> WorldView:
        return world_view(self.state, self.player)

    def check(self, action: Action) -> bool:
        return check_feasible(self.state, self.player, action)

    def path_exists(self, src, dst) -> bool:
        """The pathfinding probe drivers use to skip unreachable targets."""
        from .pathfind import find_path
        return find_path(self.state, src, dst, self.player) is not None

    def issue(self, action: Action) -> None:
        issue_action(self.state, self.player, action)
        self.record.atl(self.player).append((self.state.round, self.player, action))


@dataclass
class GameRecord:
    red_atl: list[AtlEntry] = field(default_factory=list)
    green_atl: list[AtlEntry] = field(default_factory=list)
    # per-player feature log; entry i is the state after round i+1
    features: dict[str, list[tuple[int, ...]]] = field(
        default_factory=lambda: {RED: [], GREEN: []})
    status: str = GameStatus.RUNNING
    length: int = 0
    seed: int = 0
    horizon: int = 0

    def atl(self, player: str) -> list[AtlEntry]:
        return self.red_atl if player == RED else self.green_atl

    def canonical_bytes(self) -> bytes:
        """Canonical serialized form, used for bit-identity checks."""
        parts = [
            f"seed={self.seed};horizon={self.horizon};"
            f"status={self.status};length={self.length}\n",
            format_atl(self.red_atl),
            "--\n",
            format_atl(self.green_atl),
            "--\n",
        ]
        for player in (RED, GREEN):
            for row in self.features[player]:
                parts.append(",".join(map(str, row)) + "\n")
        return "".join(parts).encode("utf-8")


class ATLPlayer:
    """Replays a recorded action list; infeasible actions end the game."""

    strict = True

    def __init__(self, entries: list[AtlEntry]):
        self.entries = entries
        self._idx = 0

    def start(self, handle: GameHandle) -> None:
        self._idx = 0

    def act(self, handle: GameHandle) -> None:
        rnd = handle.round
        while self._idx < len(self.entries) and self.entries[self._idx][0] == rnd:
            handle.issue(self.entries[self._idx][2])
            self._idx += 1


def run_match(red, green, game_map: GameMap, balance: BalanceTable,
              seed: int, horizon: int) -> GameRecord:
    """Play a full game between two drivers and record it."""
    state = create_game(game_map, balance, seed, horizon)
    state.strict_players = frozenset(
        p for p, drv in ((RED, red), (GREEN, green))
        if getattr(drv, "strict", False))
    record = GameRecord(seed=seed, horizon=horizon)
    handles = {RED: GameHandle(state, RED, record),
               GREEN: GameHandle(state, GREEN, record)}
    red.start(handles[RED])
    green.start(handles[GREEN])
    while state.status == GameStatus.RUNNING:
        red.act(handles[RED])
        green.act(handles[GREEN])
        step_round(state)
        if state.status == GameStatus.FAILURE:
            break
        record.features[RED].append(state.features(RED))
        record.features[GREEN].append(state.features(GREEN))
    record.status = state.status
    record.length = state.round
    return record


# -- on-disk layout -----------------------------------------------------------
#
# A record directory holds:
#   red.atl / green.atl      the action lists
#   meta.txt                 seed, horizon, status, length, map/balance refs
#   features_red.csv         per-round feature log (header + one row/round)
#   features_green.csv

def save_record(record: GameRecord, dirpath, map_ref: str = "",
                balance_ref: str = "") -> None:
    os.makedirs(dirpath, exist_ok=True)
    with open(os.path.join(dirpath, "red.atl"), "w", encoding="utf-8",
              newline="\n") as fh:
        fh.write(format_atl(record.red_atl))
    with open(os.path.join(dirpath, "green.atl"), "w", encoding="utf-8",
              newline="\n") as fh:
        fh.write(format_atl(record.green_atl))
    meta = (
        f"spec-version = 1\n"
        f"seed = {record.seed}\n"
        f"horizon = {record.horizon}\n"
        f"status = {record.status}\n"
        f"length = {record.length}\n"
        f"map = {map_ref}\n"
        f"balance = {balance_ref}\n"
    )
    with open(os.path.join(dirpath, "meta.txt"), "w", encoding="utf-8",
              newline="\n") as fh:
        fh.write(meta)
    for player in (RED, GREEN):
        path = os.path.join(dirpath, f"features_{player}.csv")
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(",".join(FEATURE_NAMES) + "\n")
            for row in record.features[player]:
                fh.write(",".join(map(str, row)) + "\n")


def load_record(dirpath) -> tuple[GameRecord, dict[str, str]]:
    from .balance import parse_kv

    with open(os.path.join(dirpath, "meta.txt"), "r", encoding="utf-8") as fh:
        meta = parse_kv(fh.read())
    record = GameRecord(
        seed=int(meta["seed"]), horizon=int(meta["horizon"]),
        status=meta["status"], length=int(meta["length"]))
    with open(os.path.join(dirpath, "red.atl"), "r", encoding="utf-8") as fh:
        record.red_atl = parse_atl(fh.read())
    with open(os.path.join(dirpath, "green.atl"), "r", encoding="utf-8") as fh:
        record.green_atl = parse_atl(fh.read())
    for player in (RED, GREEN):
        path = os.path.join(dirpath, f"features_{player}.csv")
        rows: list[tuple[int, ...]] = []
        with open(path, "r", encoding="utf-8") as fh:
            next(fh)  # header
            for line in fh:
                line = line.strip()
                if line:
                    rows.append(tuple(int(x) for x in line.split(",")))
        record.features[player] = rows
    return record, meta
