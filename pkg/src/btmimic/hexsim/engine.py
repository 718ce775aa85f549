"""Round execution.

Order within one round is fixed: red's queued actions then green's, the
per-unit task loop in ascending id order, building production, damage
application and removal of dead entities, then the terminal check.
Damage is accumulated during the round and applied once, so combat is
simultaneous and independent of unit iteration order.
"""

from __future__ import annotations

from .actions import Action, Move, Query, Repair, SettleBuilding, SpawnUnit, Upgrade
from .coords import cells_within, neighbors
from .pathfind import find_path
from .state import (
    GREEN,
    RED,
    Building,
    GameState,
    GameStatus,
    Unit,
    check_feasible,
    opponent,
    spawn_placement,
)


def step_round(state: GameState) -> None:
    if state.status != GameStatus.RUNNING:
        raise RuntimeError(f"cannot step a game with status {state.status!r}")

    unit_dmg: dict[int, int] = {}
    bld_dmg: dict[int, int] = {}

    # (1) execute queued actions, red before green, FIFO per player
    for player in (RED, GREEN):
        queue = state.queues[player]
        state.queues[player] = []
        strict = player in state.strict_players
        for action in queue:
            if not check_feasible(state, player, action):
                if strict:
                    # an ATL player replayed an action the world no longer
                    # supports; the game ends here, round not counted
                    state.status = GameStatus.FAILURE
                    return
                continue
            _execute(state, player, action)

    # (2) unit task loop
    for u in state.units.values():
        u.engaged = False
    for uid in sorted(state.units):
        unit = state.units.get(uid)
        if unit is None:
            continue  # merged away earlier in this loop
        _unit_tasks(state, unit, unit_dmg, bld_dmg)

    # (3) building production
    for bid in sorted(state.buildings):
        _produce(state, state.buildings[bid], bld_dmg, unit_dmg)

    # (4) apply damage, drop dead entities
    for uid in sorted(unit_dmg):
        unit = state.units.get(uid)
        if unit is None:
            continue
        unit.hp_pool -= unit_dmg[uid]
        unit.engaged = True
        if unit.hp_pool <= 0:
            state.remove_unit(unit)
        else:
            per = state.balance.units[unit.type].hp
            unit.quantity = min(unit.quantity, (unit.hp_pool + per - 1) // per)
    for b in state.buildings.values():
        b.under_attack = False
    for bid in sorted(bld_dmg):
        b = state.buildings.get(bid)
        if b is None:
            continue
        b.hp -= bld_dmg[bid]
        if b.hp <= 0:
            state.remove_building(b)
        else:
            b.under_attack = True

    # (5)
    state.round += 1

    # (6) terminal status
    red_alive = any(b.type == "castle" and b.owner == RED
                    for b in state.buildings.values())
    green_alive = any(b.type == "castle" and b.owner == GREEN
                      for b in state.buildings.values())
    if not red_alive and not green_alive:
        state.status = GameStatus.DRAW
    elif not red_alive:
        state.status = GameStatus.GREEN_WON
    elif not green_alive:
        state.status = GameStatus.RED_WON
    elif state.round >= state.horizon:
        if state.gold[RED] > state.gold[GREEN]:
            state.status = GameStatus.RED_WON
        elif state.gold[GREEN] > state.gold[RED]:
            state.status = GameStatus.GREEN_WON
        else:
            state.status = GameStatus.DRAW


# -- action execution --------------------------------------------------------

def _execute(state: GameState, player: str, action: Action) -> None:
    balance = state.balance
    if isinstance(action, Query):
        return
    if isinstance(action, Move):
        unit = state.units[action.id]
        path = find_path(state, unit.pos, action.position, player)
        unit.pending_split = 0
        if not path:
            unit.path = None
            return
        if action.proportion < 1.0 and unit.quantity >= 2:
            split_qty = max(1, int(unit.quantity * action.proportion))
            if split_qty < unit.quantity:
                # the detached part leaves when the first step executes
                unit.pending_split = split_qty
        path.reverse()  # next step kept at the end for O(1) pops
        unit.path = path
        unit.move_cooldown = balance.units[unit.type].move_period
        return
    if isinstance(action, SpawnUnit):
        b = state.buildings[action.id]
        state.gold[player] -= balance.unit_cost(action.type, action.quantity)
        b.pool[action.type] = b.pool.get(action.type, 0) - action.quantity
        placement = spawn_placement(state, b, action.type)
        how, target = placement
        per = balance.units[action.type].hp
        if how == "merge":
            target.quantity += action.quantity
            target.hp_pool += action.quantity * per
        else:
            state.add_unit(Unit(
                id=state.alloc_id(player), owner=player, type=action.type,
                quantity=action.quantity, hp_pool=action.quantity * per,
                pos=target,
            ))
        return
    if isinstance(action, SettleBuilding):
        state.gold[player] -= balance.building_cost(action.type, 1)
        state.add_building(Building(
            id=state.alloc_id(player), owner=player, type=action.type,
            level=1, hp=balance.building_hp(action.type, 1),
            pos=action.position,
        ))
        return
    if isinstance(action, Upgrade):
        b = state.buildings[action.id]
        state.gold[player] -= balance.upgrade_cost(b.type, b.level)
        b.level += 1
        b.hp += balance.buildings[b.type].hp  # the per-level hp increment
        return
    if isinstance(action, Repair):
        b = state.buildings[action.id]
        missing = state.max_hp(b) - b.hp
        state.gold[player] -= balance.repair_cost(missing)
        b.hp = state.max_hp(b)
        return
    raise TypeError(f"not an action: {action!r}")


# -- per-unit tasks -----------------------------------------------------------

def _enemy_in_range(state: GameState, unit: Unit) -> Unit | None:
    enemy = opponent(unit.owner)
    target = state.unit_on(enemy, unit.pos)
    if state.balance.units[unit.type].range >= 1:
        candidates = [target] if target else []
        for cell in neighbors(unit.pos):
            adj = state.unit_on(enemy, cell)
            if adj is not None:
                candidates.append(adj)
        if candidates:
            target = min(candidates, key=lambda u: u.id)
    return target


def _unit_tasks(state: GameState, unit: Unit,
                unit_dmg: dict[int, int], bld_dmg: dict[int, int]) -> None:
    attack = state.balance.units[unit.type].attack * unit.quantity

    target = _enemy_in_range(state, unit)
    if target is not None:
        unit_dmg[target.id] = unit_dmg.get(target.id, 0) + attack
        target.last_attacker = unit.id
        unit.engaged = True
        return

    b = state.building_on(unit.pos)
    if b is not None and b.owner != unit.owner:
        bld_dmg[b.id] = bld_dmg.get(b.id, 0) + attack
        unit.engaged = True
        return

    if unit.path:
        _advance(state, unit)
        return

    # respond to an attack: close in on the attacker, battle follows when
    # the attacker comes into range
    if unit.last_attacker is not None:
        foe = state.units.get(unit.last_attacker)
        foe_pos = foe.pos if foe is not None else None
        if foe_pos is None:
            fb = state.buildings.get(unit.last_attacker)
            foe_pos = fb.pos if fb is not None else None
        if foe_pos is None:
            unit.last_attacker = None
            return
        path = find_path(state, unit.pos, foe_pos, unit.owner)
        if path:
            path.reverse()
            unit.path = path
            unit.pending_split = 0
            unit.move_cooldown = state.balance.units[unit.type].move_period


def _advance(state: GameState, unit: Unit) -> None:
    unit.move_cooldown -= 1
    if unit.move_cooldown > 0:
        return
    step = unit.path[-1]
    final = len(unit.path) == 1
    own = state.unit_on(unit.owner, step)
    foe = state.unit_on(opponent(unit.owner), step)

    if own is not None:
        if final and own.type == unit.type:
            rest = _take_split(unit)
            own.quantity += unit.quantity
            own.hp_pool += unit.hp_pool
            old_pos = unit.pos
            state.remove_unit(unit)
            if rest is not None:
                _drop_remainder(state, unit, old_pos, rest)
            return
        if final:
            # different type at the destination: stop short
            unit.path = None
            unit.pending_split = 0
            return
        _wait_or_replan(state, unit)
        return
    if foe is not None and not final:
        _wait_or_replan(state, unit)
        return

    unit.block_wait = 0
    rest = _take_split(unit)
    old_pos = unit.pos
    state.move_unit(unit, step)
    if rest is not None:
        _drop_remainder(state, unit, old_pos, rest)
    unit.path.pop()
    if unit.path:
        unit.move_cooldown = state.balance.units[unit.type].move_period
    else:
        unit.path = None


def _wait_or_replan(state: GameState, unit: Unit) -> None:
    """Next step is occupied by another unit: wait for it to clear,
    trying a detour around all occupied cells once per move period.
    Congestion never cancels a move; the unit holds its goal."""
    unit.move_cooldown = 1
    unit.block_wait += 1
    if unit.block_wait < state.balance.units[unit.type].move_period:
        return
    unit.block_wait = 0
    dest = unit.path[0]
    path = find_path(state, unit.pos, dest, unit.owner, include_own_units=True)
    if path:
        path.reverse()
        unit.path = path
        unit.move_cooldown = state.balance.units[unit.type].move_period


def _take_split(unit: Unit) -> tuple[int, int] | None:
    """Deduct the stay-behind part of a proportional move from the mover.

    Returns (quantity, hp) of the remainder, or None when the whole unit
    moves. Must be called exactly when the first step executes."""
    split_qty = unit.pending_split
    unit.pending_split = 0
    if not split_qty:
        return None
    rest_qty = unit.quantity - split_qty
    if rest_qty < 1:
        return None
    rest_hp = unit.hp_pool * rest_qty // unit.quantity
    unit.quantity = split_qty
    unit.hp_pool -= rest_hp
    return rest_qty, rest_hp


def _drop_remainder(state: GameState, mover: Unit, cell, rest: tuple[int, int]) -> None:
    qty, hp = rest
    state.add_unit(Unit(
        id=state.alloc_id(mover.owner), owner=mover.owner, type=mover.type,
        quantity=qty, hp_pool=hp, pos=cell,
    ))


# -- production ---------------------------------------------------------------

def _produce(state: GameState, b: Building,
             bld_dmg: dict[int, int], unit_dmg: dict[int, int]) -> None:
    balance = state.balance
    attacked = bld_dmg.get(b.id, 0) > 0
    if b.type == "farm":
        if not attacked:
            state.gold[b.owner] += balance.farm_income(b.level)
    elif b.type == "barracks":
        if not attacked:
            cap = balance.barracks_capacity(b.level)
            total = sum(b.pool.values())
            if total < cap:
                b.train_progress += b.level
                rounds = balance.buildings["barracks"].train_rounds
                while b.train_progress >= rounds and total < cap:
                    b.train_progress -= rounds
                    utype = _train_type(balance, b)
                    b.pool[utype] = b.pool.get(utype, 0) + 1
                    total += 1
    elif b.type == "tower":
        enemy = opponent(b.owner)
        best: Unit | None = None
        for cell in _radius_cells(b.pos, balance.buildings["tower"].radius):
            u = state.unit_on(enemy, cell)
            if u is not None and (best is None or u.id < best.id):
                best = u
        if best is not None:
            dmg = balance.tower_damage(b.level)
            unit_dmg[best.id] = unit_dmg.get(best.id, 0) + dmg
            best.last_attacker = b.id


def _train_type(balance, b: Building) -> str:
    # fill the smallest pool among the types this barracks level can train
    types = balance.trainable_types(b.level)
    return min(types, key=lambda t: (b.pool.get(t, 0), types.index(t)))


_RADIUS_CACHE: dict[tuple[tuple[int, int], int], tuple] = {}


def _radius_cells(center, radius):
    key = (center, radius)
    cached = _RADIUS_CACHE.get(key)
    if cached is None:
        cached = tuple(cells_within(center, radius))
        _RADIUS_CACHE[key] = cached
    return cached
