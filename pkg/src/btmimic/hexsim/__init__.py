from .actions import (
    Action,
    Move,
    Query,
    Repair,
    SettleBuilding,
    SpawnUnit,
    Upgrade,
    format_atl,
    parse_atl,
)
from .balance import BalanceTable, load_balance
from .coords import distance, neighbors
from .hexmap import GameMap, load_map
from .match import (
    ATLPlayer,
    GameHandle,
    GameRecord,
    load_record,
    run_match,
    save_record,
)
from .rng import Xorshift64Star
from .state import (
    GREEN,
    RED,
    Building,
    GameState,
    GameStatus,
    Unit,
    check_feasible,
    create_game,
    issue_action,
    world_view,
)
from .engine import step_round
from .pathfind import find_path

__all__ = [
    "Action", "Move", "SpawnUnit", "SettleBuilding", "Upgrade", "Repair",
    "Query", "parse_atl", "format_atl",
    "BalanceTable", "load_balance", "GameMap", "load_map",
    "distance", "neighbors", "Xorshift64Star",
    "RED", "GREEN", "GameState", "GameStatus", "Unit", "Building",
    "create_game", "check_feasible", "issue_action", "world_view",
    "step_round", "find_path",
    "GameRecord", "run_match", "ATLPlayer", "GameHandle",
    "save_record", "load_record",
]
