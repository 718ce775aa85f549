import pytest

from btmimic.hexsim.actions import Move, Query, Repair, SettleBuilding, SpawnUnit, Upgrade
from btmimic.hexsim.balance import ConfigError
from btmimic.hexsim.state import (
    GREEN,
    RED,
    GameStatus,
    check_feasible,
    create_game,
    issue_action,
    world_view,
)

from conftest import fresh_game, open_map, put_building, put_unit


def test_create_game_contract(balance, default_map):
    state = create_game(default_map, balance, seed=42, horizon=10000)
    castles = [b for b in state.buildings.values() if b.type == "castle"]
    assert len(castles) == 2
    assert {c.owner for c in castles} == {RED, GREEN}
    assert state.round == 0
    assert state.status == GameStatus.RUNNING
    assert state.gold[RED] == balance.starting_gold
    assert state.horizon == 10000


def test_create_game_deterministic(balance, default_map):
    a = create_game(default_map, balance, 42, 10000)
    b = create_game(default_map, balance, 42, 10000)
    assert a.features(RED) == b.features(RED)
    assert a.features(GREEN) == b.features(GREEN)
    assert sorted(a.buildings) == sorted(b.buildings)
    assert a.rng.next_u64() == b.rng.next_u64()


def test_create_game_rejects_bad_horizon(balance, default_map):
    with pytest.raises(ConfigError):
        create_game(default_map, balance, 1, 0)


def test_ids_partition_by_player(balance):
    state = fresh_game(balance)
    red_ids = [state.alloc_id(RED) for _ in range(4)]
    green_ids = [state.alloc_id(GREEN) for _ in range(4)]
    assert all(i % 2 == 1 for i in red_ids)
    assert all(i % 2 == 0 for i in green_ids)
    assert len(set(red_ids + green_ids)) == 8


def test_move_of_foreign_unit_infeasible(balance):
    state = fresh_game(balance)
    enemy_unit = put_unit(state, GREEN, "peasant", 3, (5, 5))
    assert not check_feasible(state, RED, Move(enemy_unit.id, (1, 1)))
    assert check_feasible(state, GREEN, Move(enemy_unit.id, (1, 1)))


def test_upgrade_at_max_level_infeasible(balance):
    state = fresh_game(balance)
    b = put_building(state, RED, "farm", (2, 1), level=balance.max_level)
    state.gold[RED] = 10**6
    assert not check_feasible(state, RED, Upgrade(b.id))
    b2 = put_building(state, RED, "farm", (3, 1), level=1)
    assert check_feasible(state, RED, Upgrade(b2.id))


def test_settle_with_exact_gold_feasible(balance):
    state = fresh_game(balance)
    state.gold[RED] = balance.building_cost("farm", 1)  # exactly 100
    castle = state.castles(RED)[0]
    target = (castle.pos[0] + 1, castle.pos[1])
    assert check_feasible(state, RED, SettleBuilding(castle.id, "farm", target))
    state.gold[RED] -= 1
    assert not check_feasible(state, RED, SettleBuilding(castle.id, "farm", target))


def test_settle_outside_radius_infeasible(balance):
    state = fresh_game(balance, open_map(width=20, height=3, red=(1, 1), green=(18, 1)))
    castle = state.castles(RED)[0]
    far = (1 + balance.settle_radius(castle.level) + 1, 1)
    assert not check_feasible(state, RED, SettleBuilding(castle.id, "farm", far))


def test_settle_on_occupied_cell_infeasible(balance):
    state = fresh_game(balance)
    castle = state.castles(RED)[0]
    assert not check_feasible(
        state, RED, SettleBuilding(castle.id, "farm", castle.pos))


def test_spawn_needs_pool_and_gold(balance):
    state = fresh_game(balance)
    b = put_building(state, RED, "barracks", (3, 2))
    action = SpawnUnit(b.id, "peasant", 5)
    assert not check_feasible(state, RED, action)  # empty pool
    b.pool["peasant"] = 5
    assert check_feasible(state, RED, action)
    state.gold[RED] = balance.unit_cost("peasant", 5) - 1
    assert not check_feasible(state, RED, action)


def test_repair_needs_damage(balance):
    state = fresh_game(balance)
    b = put_building(state, RED, "tower", (3, 2))
    assert not check_feasible(state, RED, Repair(b.id))
    b.hp -= 35
    assert check_feasible(state, RED, Repair(b.id))
    state.gold[RED] = balance.repair_cost(35) - 1
    assert not check_feasible(state, RED, Repair(b.id))


def test_query_always_feasible(balance):
    state = fresh_game(balance)
    assert check_feasible(state, RED, Query())


def test_issue_queues_without_mutation(balance):
    state = fresh_game(balance)
    before = state.features(RED)
    issue_action(state, RED, Query())
    issue_action(state, RED, Upgrade(999))  # nonsense is fine at issue time
    assert state.features(RED) == before
    assert len(state.queues[RED]) == 2


def test_world_view_initial(balance):
    state = fresh_game(balance)
    view = world_view(state, RED)
    assert len(view.buildings) == 1
    assert view.buildings[0].type == "castle"
    assert view.units == []
    assert view.gold == balance.starting_gold
    assert view.rules is balance
    castle_pos = view.buildings[0].pos
    assert castle_pos not in view.free_cells
    assert all(abs(c[0]) < 100 for c in view.free_cells)


def test_world_view_sees_enemy_units(balance):
    gm = open_map(disabled=((4, 4),))
    state = fresh_game(balance, gm)
    put_unit(state, GREEN, "knight", 7, (4, 3))  # adjacent to the disabled cell
    view = world_view(state, RED)
    assert [(u.type, u.quantity, u.pos) for u in view.enemy_units] == [
        ("knight", 7, (4, 3))]


def test_world_view_free_cells_respect_radius(balance):
    state = fresh_game(balance)
    castle = state.castles(RED)[0]
    radius = balance.settle_radius(castle.level)
    view = world_view(state, RED)
    from btmimic.hexsim.coords import distance
    assert view.free_cells
    assert all(distance(c, castle.pos) <= radius for c in view.free_cells)
