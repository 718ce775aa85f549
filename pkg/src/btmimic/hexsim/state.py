"""World state for the round-based hex RTS.

Entity ids are allocated per player (red gets odd ids, green even) so a
player's nth entity has the same id regardless of what the opponent
does. Recorded action lists stay replayable against a different
opponent because of this; do not change the scheme.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .actions import Action, Move, Query, Repair, SettleBuilding, SpawnUnit, Upgrade
from .balance import SETTLEABLE, BalanceTable, ConfigError
from .coords import Coord, cells_within, distance, neighbors
from .hexmap import GameMap
from .rng import Xorshift64Star

RED = "red"
GREEN = "green"
PLAYERS = (RED, GREEN)


def opponent(player: str) -> str:
    return GREEN if player == RED else RED


class GameStatus:
    RUNNING = "running"
    RED_WON = "red-won"
    GREEN_WON = "green-won"
    DRAW = "draw"
    FAILURE = "failure"


@dataclass(slots=True)
class Unit:
    id: int
    owner: str
    type: str
    quantity: int
    hp_pool: int
    pos: Coord
    # remaining path, next step last (pop() is O(1)); empty/None = no move
    path: list[Coord] | None = None
    move_cooldown: int = 0
    pending_split: int = 0         # quantity detaching on the first step
    block_wait: int = 0            # rounds spent waiting on a blocked step
    engaged: bool = False          # attacked or was attacked last round
    last_attacker: int | None = None

    @property
    def state(self) -> str:
        if self.engaged:
            return "battling"
        if self.path:
            return "moving"
        return "idle"


@dataclass(slots=True)
class Building:
    id: int
    owner: str
    type: str
    level: int
    hp: int
    pos: Coord
    pool: dict[str, int] = field(default_factory=dict)  # barracks only
    train_progress: int = 0
    under_attack: bool = False     # damaged last round

    @property
    def state(self) -> str:
        if self.under_attack:
            return "under-attack"
        if self.type in ("farm", "barracks"):
            return "producing"
        return "idle"


@dataclass(slots=True)
class GameState:
    game_map: GameMap
    balance: BalanceTable
    seed: int
    horizon: int
    rng: Xorshift64Star
    round: int = 0
    status: str = GameStatus.RUNNING
    gold: dict[str, int] = field(default_factory=dict)
    units: dict[int, Unit] = field(default_factory=dict)
    buildings: dict[int, Building] = field(default_factory=dict)
    unit_at: dict[tuple[str, Coord], int] = field(default_factory=dict)
    building_at: dict[Coord, int] = field(default_factory=dict)
    queues: dict[str, list[Action]] = field(default_factory=dict)
    # players whose infeasible actions end the game (ATL replays)
    strict_players: frozenset[str] = frozenset()
    _next_id: dict[str, int] = field(default_factory=dict)

    # -- entity bookkeeping ------------------------------------------------

    def alloc_id(self, player: str) -> int:
        eid = self._next_id[player]
        self._next_id[player] = eid + 2
        return eid

    def add_unit(self, unit: Unit) -> None:
        self.units[unit.id] = unit
        self.unit_at[(unit.owner, unit.pos)] = unit.id

    def remove_unit(self, unit: Unit) -> None:
        del self.units[unit.id]
        key = (unit.owner, unit.pos)
        if self.unit_at.get(key) == unit.id:
            del self.unit_at[key]

    def move_unit(self, unit: Unit, dest: Coord) -> None:
        del self.unit_at[(unit.owner, unit.pos)]
        unit.pos = dest
        self.unit_at[(unit.owner, dest)] = unit.id

    def add_building(self, b: Building) -> None:
        self.buildings[b.id] = b
        self.building_at[b.pos] = b.id

    def remove_building(self, b: Building) -> None:
        del self.buildings[b.id]
        if self.building_at.get(b.pos) == b.id:
            del self.building_at[b.pos]

    def unit_on(self, player: str, cell: Coord) -> Unit | None:
        uid = self.unit_at.get((player, cell))
        return self.units[uid] if uid is not None else None

    def building_on(self, cell: Coord) -> Building | None:
        bid = self.building_at.get(cell)
        return self.buildings[bid] if bid is not None else None

    def castles(self, player: str) -> list[Building]:
        return [b for _, b in sorted(self.buildings.items())
                if b.owner == player and b.type == "castle"]

    def player_units(self, player: str) -> list[Unit]:
        return [u for _, u in sorted(self.units.items()) if u.owner == player]

    def player_buildings(self, player: str) -> list[Building]:
        return [b for _, b in sorted(self.buildings.items()) if b.owner == player]

    def max_hp(self, b: Building) -> int:
        return self.balance.building_hp(b.type, b.level)

    # -- feature snapshot ---------------------------------------------------

    def features(self, player: str) -> tuple[int, ...]:
        """The 10 per-player resource features sampled by timelines."""
        qty = {"peasant": 0, "knight": 0, "archer": 0}
        for u in self.units.values():
            if u.owner == player:
                qty[u.type] += u.quantity
        cnt = {"castle": 0, "farm": 0, "barracks": 0, "tower": 0}
        for b in self.buildings.values():
            if b.owner == player:
                cnt[b.type] += 1
        total_units = qty["peasant"] + qty["knight"] + qty["archer"]
        total_buildings = cnt["castle"] + cnt["farm"] + cnt["barracks"] + cnt["tower"]
        return (
            self.gold[player], total_units, total_buildings,
            qty["peasant"], qty["knight"], qty["archer"],
            cnt["castle"], cnt["farm"], cnt["barracks"], cnt["tower"],
        )


FEATURE_NAMES = (
    "gold", "units", "buildings",
    "peasant_qty", "knight_qty", "archer_qty",
    "castles", "farms", "barracks", "towers",
)


def create_game(game_map: GameMap, balance: BalanceTable, seed: int,
                horizon: int) -> GameState:
    if horizon <= 0:
        raise ConfigError("horizon must be positive")
    for player, cell in game_map.start_cells.items():
        if not game_map.is_enabled(cell):
            raise ConfigError(f"{player} start cell {cell} unusable")
    state = GameState(
        game_map=game_map, balance=balance, seed=seed, horizon=horizon,
        rng=Xorshift64Star(seed),
        gold={RED: balance.starting_gold, GREEN: balance.starting_gold},
        queues={RED: [], GREEN: []},
        _next_id={RED: 1, GREEN: 2},
    )
    for player in PLAYERS:
        castle = Building(
            id=state.alloc_id(player), owner=player, type="castle", level=1,
            hp=balance.building_hp("castle", 1), pos=game_map.start_cells[player],
        )
        state.add_building(castle)
    return state


def issue_action(state: GameState, player: str, action: Action) -> None:
    """Queue an action for execution at the end of the current round."""
    state.queues[player].append(action)


def spawn_placement(state: GameState, barracks: Building,
                    utype: str) -> tuple[str, object] | None:
    """Where a spawned unit would go: merge into a same-type stack on the
    barracks cell, or the nearest free enabled cell within 2 hexes.
    Returns ("merge", unit) or ("place", cell), or None if boxed in."""
    player = barracks.owner
    on_cell = state.unit_on(player, barracks.pos)
    if on_cell is not None and on_cell.type == utype:
        return ("merge", on_cell)
    if on_cell is None:
        return ("place", barracks.pos)
    for dist in (1, 2):
        for cell in sorted(cells_within(barracks.pos, dist)):
            if distance(cell, barracks.pos) != dist:
                continue
            if not state.game_map.is_enabled(cell):
                continue
            if state.unit_at.get((player, cell)) is not None:
                continue
            if state.unit_at.get((opponent(player), cell)) is not None:
                continue
            return ("place", cell)
    return None


def check_feasible(state: GameState, player: str, action: Action) -> bool:
    """True iff the action would execute successfully right now."""
    balance = state.balance
    gold = state.gold[player]
    if isinstance(action, Query):
        return True
    if isinstance(action, Move):
        unit = state.units.get(action.id)
        return (unit is not None and unit.owner == player
                and state.game_map.in_bounds(action.position))
    if isinstance(action, SpawnUnit):
        b = state.buildings.get(action.id)
        if b is None or b.owner != player or b.type != "barracks":
            return False
        if action.type not in balance.units or action.quantity < 1:
            return False
        if b.pool.get(action.type, 0) < action.quantity:
            return False
        if gold < balance.unit_cost(action.type, action.quantity):
            return False
        return spawn_placement(state, b, action.type) is not None
    if isinstance(action, SettleBuilding):
        castle = state.buildings.get(action.id)
        if castle is None or castle.owner != player or castle.type != "castle":
            return False
        if action.type not in SETTLEABLE:
            return False
        pos = action.position
        if not state.game_map.is_enabled(pos):
            return False
        if pos in state.building_at:
            return False
        if state.unit_at.get((opponent(player), pos)) is not None:
            return False
        if distance(castle.pos, pos) > balance.settle_radius(castle.level):
            return False
        return gold >= balance.building_cost(action.type, 1)
    if isinstance(action, Upgrade):
        b = state.buildings.get(action.id)
        if b is None or b.owner != player:
            return False
        if b.level >= balance.max_level:
            return False
        return gold >= balance.upgrade_cost(b.type, b.level)
    if isinstance(action, Repair):
        b = state.buildings.get(action.id)
        if b is None or b.owner != player:
            return False
        missing = state.max_hp(b) - b.hp
        if missing <= 0:
            return False
        return gold >= balance.repair_cost(missing)
    return False


# -- player-facing view ----------------------------------------------------

@dataclass(frozen=True, slots=True)
class UnitView:
    id: int
    pos: Coord
    type: str
    quantity: int
    state: str
    hp: int


@dataclass(frozen=True, slots=True)
class BuildingView:
    id: int
    pos: Coord
    type: str
    level: int
    state: str
    hp: int
    max_hp: int
    pool: dict[str, int] | None = None


@dataclass(frozen=True, slots=True)
class WorldView:
    player: str
    round: int
    gold: int
    units: list[UnitView]
    buildings: list[BuildingView]
    enemy_units: list[UnitView]
    enemy_buildings: list[BuildingView]
    free_cells: list[Coord]
    rules: BalanceTable


def _unit_view(u: Unit) -> UnitView:
    return UnitView(u.id, u.pos, u.type, u.quantity, u.state, u.hp_pool)


def _building_view(state: GameState, b: Building) -> BuildingView:
    pool = dict(b.pool) if b.type == "barracks" else None
    return BuildingView(b.id, b.pos, b.type, b.level, b.state, b.hp,
                        state.max_hp(b), pool)


def world_view(state: GameState, player: str) -> WorldView:
    enemy = opponent(player)
    own_units = [_unit_view(u) for u in state.player_units(player)]
    own_buildings = [_building_view(state, b) for b in state.player_buildings(player)]
    enemy_units = [_unit_view(u) for u in state.player_units(enemy)]
    enemy_buildings = [_building_view(state, b) for b in state.player_buildings(enemy)]

    free: set[Coord] = set()
    for castle in state.castles(player):
        radius = state.balance.settle_radius(castle.level)
        for cell in cells_within(castle.pos, radius):
            if not state.game_map.is_enabled(cell):
                continue
            if cell in state.building_at:
                continue
            if state.unit_at.get((player, cell)) is not None:
                continue
            if state.unit_at.get((enemy, cell)) is not None:
                continue
            free.add(cell)

    return WorldView(
        player=player, round=state.round, gold=state.gold[player],
        units=own_units, buildings=own_buildings,
        enemy_units=enemy_units, enemy_buildings=enemy_buildings,
        free_cells=sorted(free), rules=state.balance,
    )
