"""StrategyInfo and the service leaves the strategy trees are built from.

All decisions are pure functions of the blackboard (view + guidance), no
randomness anywhere: ties break on lowest id, then smallest (q, r).
That determinism is what makes a tree's gameplay reproducible and lets
the optimizer cache criterion values.

StrategyInfo writes the shared guidance every tick: playstyle,
defender/attacker assignment honoring the balance fraction, how many
more units the sub-strategy wants, and the trigger set gating strategy
services. Services prepare exactly one feasibility-checked action under
bb["pending"]; the action leaf after them issues it.
"""

from __future__ import annotations

from ..btree.nodes import FAILURE, SUCCESS, TickContext, register_leaf
from ..hexsim.actions import Move, Repair, SettleBuilding, SpawnUnit, Upgrade
from ..hexsim.coords import cells_within, distance

SPAWN_TYPE_ORDER = ("peasant", "archer", "knight")


def _as_int(value) -> int:
    return int(float(value) + 0.5)


def _nearest_castle(view, pos):
    castles = [b for b in view.buildings if b.type == "castle"]
    if not castles:
        return None
    return min(castles, key=lambda c: (distance(c.pos, pos), c.id))


def _free_cell_near(view, center, max_radius):
    """Nearest enabled cell with no entity on it, deterministic order."""
    occupied = {u.pos for u in view.units}
    occupied.update(u.pos for u in view.enemy_units)
    occupied.update(b.pos for b in view.buildings)
    occupied.update(b.pos for b in view.enemy_buildings)
    free_set = set(view.free_cells)
    for d in range(1, max_radius + 1):
        ring = [c for c in cells_within(center, d)
                if distance(c, center) == d]
        for cell in sorted(ring):
            if cell in occupied:
                continue
            if cell in free_set:
                return cell
    return None


def _prepare(ctx: TickContext, action) -> bool:
    if ctx.handle.check(action):
        ctx.bb["pending"] = action
        return SUCCESS
    return FAILURE


def _prepare_move(ctx: TickContext, unit, dest, proportion=1.0) -> bool:
    """Prepare a move only when the engine can actually route it; an
    unreachable target would execute as a no-op and burn the action
    budget forever."""
    if unit.pos == dest or not ctx.handle.path_exists(unit.pos, dest):
        return FAILURE
    return _prepare(ctx, Move(unit.id, dest, proportion))


# -- StrategyInfo ---------------------------------------------------------------

@register_leaf("strategy_info")
def strategy_info(ctx: TickContext, args: dict) -> bool:
    bb = ctx.bb
    view = bb["view"]
    balance_frac = float(args["balance"])
    units_target = _as_int(args["units"])
    building_targets = {
        "farm": _as_int(args["farms"]),
        "barracks": _as_int(args["barracks"]),
        "tower": _as_int(args["towers"]),
    }

    units = view.units  # already sorted by id
    n_def = int(balance_frac * len(units) + 0.5)
    by_castle_distance = sorted(
        units,
        key=lambda u: ((distance(u.pos, _nearest_castle(view, u.pos).pos), u.id)
                       if _nearest_castle(view, u.pos) else (0, u.id)))
    defenders = [u.id for u in by_castle_distance[:n_def]]
    attackers = [u.id for u in by_castle_distance[n_def:]]
    assign = {}
    for uid in defenders:
        unit = next(u for u in units if u.id == uid)
        castle = _nearest_castle(view, unit.pos)
        assign[uid] = castle.pos if castle else unit.pos

    # forced defensive when the castle is threatened or ongoing battles
    # look lost (total attack x quantity on each side)
    playstyle = str(args["style"])
    own_rules = view.rules
    for castle in view.buildings:
        if castle.type != "castle":
            continue
        for eu in view.enemy_units:
            if distance(eu.pos, castle.pos) <= 2:
                playstyle = "defensive"
                break
    own_power = sum(u.quantity * own_rules.units[u.type].attack
                    for u in units if u.state == "battling")
    enemy_power = sum(u.quantity * own_rules.units[u.type].attack
                      for u in view.enemy_units if u.state == "battling")
    if enemy_power > own_power and enemy_power > 0:
        playstyle = "defensive"

    counts = {"farm": 0, "barracks": 0, "tower": 0}
    for b in view.buildings:
        if b.type in counts:
            counts[b.type] += 1
    triggers = set()
    for btype, target in building_targets.items():
        if counts[btype] < target:
            triggers.add(f"settle:{btype}")
    if attackers and playstyle == "offensive":
        triggers.add("attack_units")
        triggers.add("attack_buildings")
    if defenders:
        triggers.add("defence")
        triggers.add("return")
    if units:
        triggers.add("split")
    type_tally: dict[str, int] = {}
    for u in units:
        type_tally[u.type] = type_tally.get(u.type, 0) + 1
    if any(c >= 2 for c in type_tally.values()):
        triggers.add("merge")

    total_quantity = sum(u.quantity for u in units)
    idle_pool = attackers if playstyle == "offensive" else defenders
    idle_ids = [uid for uid in idle_pool
                if next(u for u in units if u.id == uid).state == "idle"]

    bb["playstyle"] = playstyle
    bb["defenders"] = defenders
    bb["attackers"] = attackers
    bb["assign"] = assign
    bb["triggers"] = triggers
    bb["units_wanted"] = max(0, units_target - total_quantity)
    bb["selected_unit"] = idle_ids[0] if idle_ids else None
    return SUCCESS


# -- basic services -------------------------------------------------------------

@register_leaf("upgrade_service")
def upgrade_service(ctx: TickContext, args: dict) -> bool:
    view = ctx.bb["view"]
    btype = str(args["type"])
    rules = view.rules
    for b in view.buildings:
        if b.type != btype or b.level >= rules.max_level:
            continue
        if view.gold < rules.upgrade_cost(b.type, b.level):
            continue
        return _prepare(ctx, Upgrade(b.id))
    return FAILURE


@register_leaf("spawn_service")
def spawn_service(ctx: TickContext, args: dict) -> bool:
    bb = ctx.bb
    view = bb["view"]
    wanted = bb.get("units_wanted", 0)
    if wanted <= 0:
        return FAILURE
    min_units = _as_int(args["min"])
    fraction = float(args["frac"])
    rules = view.rules
    for b in view.buildings:
        if b.type != "barracks" or not b.pool:
            continue
        ready = [(count, SPAWN_TYPE_ORDER.index(t), t)
                 for t, count in b.pool.items() if count >= min_units]
        if not ready:
            continue
        count, _, utype = max(ready, key=lambda x: (x[0], -x[1]))
        qty = max(1, int(count * fraction))
        qty = min(qty, wanted)
        affordable = view.gold // rules.units[utype].cost
        qty = min(qty, affordable)
        if qty < 1:
            continue
        if _prepare(ctx, SpawnUnit(b.id, utype, qty)):
            return SUCCESS
    return FAILURE


@register_leaf("repair_service")
def repair_service(ctx: TickContext, args: dict) -> bool:
    view = ctx.bb["view"]
    rules = view.rules
    for b in view.buildings:
        missing = b.max_hp - b.hp
        if missing <= 0:
            continue
        if view.gold < rules.repair_cost(missing):
            continue
        return _prepare(ctx, Repair(b.id))
    return FAILURE


@register_leaf("free_hex_service")
def free_hex_service(ctx: TickContext, args: dict) -> bool:
    """Moves an idle unit parked on an own building to a nearby free cell."""
    view = ctx.bb["view"]
    building_cells = {b.pos for b in view.buildings}
    for u in view.units:
        if u.state != "idle" or u.pos not in building_cells:
            continue
        target = _free_cell_near(view, u.pos, 3)
        if target is None:
            continue
        if _prepare_move(ctx, u, target):
            return SUCCESS
    return FAILURE


# -- strategy services (triggered by StrategyInfo) -------------------------------

def _triggered(ctx: TickContext, key: str) -> bool:
    return key in ctx.bb.get("triggers", ())


@register_leaf("settle_service")
def settle_service(ctx: TickContext, args: dict) -> bool:
    btype = str(args["type"])
    if not _triggered(ctx, f"settle:{btype}"):
        return FAILURE
    view = ctx.bb["view"]
    rules = view.rules
    if view.gold < rules.building_cost(btype, 1):
        return FAILURE
    castles = [b for b in view.buildings if b.type == "castle"]
    for castle in castles:
        radius = rules.settle_radius(castle.level)
        candidates = [c for c in view.free_cells
                      if distance(c, castle.pos) <= radius]
        candidates.sort(key=lambda c: (distance(c, castle.pos), c))
        for cell in candidates:
            if _prepare(ctx, SettleBuilding(castle.id, btype, cell)):
                return SUCCESS
    return FAILURE


def _idle_attackers(view, bb):
    ids = set(bb.get("attackers", ()))
    return [u for u in view.units if u.id in ids and u.state == "idle"]


@register_leaf("attack_unit_service")
def attack_unit_service(ctx: TickContext, args: dict) -> bool:
    if not _triggered(ctx, "attack_units"):
        return FAILURE
    view = ctx.bb["view"]
    max_count = _as_int(args["max"])
    targets = [u for u in view.enemy_units if u.quantity < max_count]
    if not targets:
        return FAILURE
    attackers = _idle_attackers(view, ctx.bb)
    if not attackers:
        return FAILURE
    attacker = max(attackers, key=lambda u: (u.quantity, -u.id))
    targets.sort(key=lambda t: (distance(t.pos, attacker.pos), t.id))
    for target in targets:
        if _prepare_move(ctx, attacker, target.pos):
            return SUCCESS
    return FAILURE


@register_leaf("attack_building_service")
def attack_building_service(ctx: TickContext, args: dict) -> bool:
    if not _triggered(ctx, "attack_buildings"):
        return FAILURE
    view = ctx.bb["view"]
    min_group = _as_int(args["group"])
    max_hp = _as_int(args["maxhp"])
    targets = [b for b in view.enemy_buildings if b.hp <= max_hp]
    if not targets:
        return FAILURE
    attackers = [u for u in _idle_attackers(view, ctx.bb)
                 if u.quantity >= min_group]
    if not attackers:
        return FAILURE
    attacker = max(attackers, key=lambda u: (u.quantity, -u.id))
    targets.sort(key=lambda b: (distance(b.pos, attacker.pos), b.id))
    for target in targets:
        if _prepare_move(ctx, attacker, target.pos):
            return SUCCESS
    return FAILURE


@register_leaf("defence_service")
def defence_service(ctx: TickContext, args: dict) -> bool:
    if not _triggered(ctx, "defence"):
        return FAILURE
    view = ctx.bb["view"]
    radius = _as_int(args["radius"])
    min_group = _as_int(args["group"])
    castles = [b for b in view.buildings if b.type == "castle"]
    threats = []
    for castle in castles:
        for eu in view.enemy_units:
            d = distance(eu.pos, castle.pos)
            if d <= radius and eu.quantity >= min_group:
                threats.append((d, eu.id, eu))
    if not threats:
        return FAILURE
    threat = min(threats)[2]
    defender_ids = set(ctx.bb.get("defenders", ()))
    ready = [u for u in view.units
             if u.id in defender_ids and u.state == "idle" and u.pos != threat.pos]
    ready.sort(key=lambda u: (distance(u.pos, threat.pos), u.id))
    for defender in ready:
        if _prepare_move(ctx, defender, threat.pos):
            return SUCCESS
    return FAILURE


@register_leaf("return_service")
def return_service(ctx: TickContext, args: dict) -> bool:
    if not _triggered(ctx, "return"):
        return FAILURE
    view = ctx.bb["view"]
    max_dist = _as_int(args["dist"])
    assign = ctx.bb.get("assign", {})
    for u in view.units:
        home = assign.get(u.id)
        if home is None or u.state != "idle":
            continue
        if distance(u.pos, home) <= max_dist:
            continue
        target = _free_cell_near(view, home, 2)
        if target is None:
            continue
        if _prepare_move(ctx, u, target):
            return SUCCESS
    return FAILURE


@register_leaf("split_service")
def split_service(ctx: TickContext, args: dict) -> bool:
    if not _triggered(ctx, "split"):
        return FAILURE
    view = ctx.bb["view"]
    max_qty = _as_int(args["max"])
    proportion = float(args["prop"])
    search = _as_int(args["range"])
    for u in view.units:
        if u.state != "idle" or u.quantity <= max_qty:
            continue
        target = _free_cell_near(view, u.pos, search)
        if target is None:
            continue
        if _prepare_move(ctx, u, target, proportion):
            return SUCCESS
    return FAILURE


@register_leaf("merge_service")
def merge_service(ctx: TickContext, args: dict) -> bool:
    if not _triggered(ctx, "merge"):
        return FAILURE
    view = ctx.bb["view"]
    min_qty = _as_int(args["min"])
    search = _as_int(args["range"])
    target_size = _as_int(args["target"])
    small = [u for u in view.units if u.state == "idle" and u.quantity < min_qty]
    for mover in small:
        partners = [
            u for u in small
            if u.id != mover.id and u.type == mover.type
            and distance(u.pos, mover.pos) <= search
            and u.quantity + mover.quantity <= target_size
        ]
        if not partners:
            continue
        partner = min(partners, key=lambda u: (distance(u.pos, mover.pos), u.id))
        if _prepare_move(ctx, mover, partner.pos):
            return SUCCESS
    return FAILURE
