import pytest

from btmimic.hexsim.balance import parse_balance
from btmimic.hexsim.hexmap import GameMap, parse_map
from btmimic.hexsim.state import GREEN, RED, Building, Unit, create_game
from btmimic.resources import read_ref


@pytest.fixture(scope="session")
def balance():
    return parse_balance(read_ref("builtin:default.balance"))


@pytest.fixture(scope="session")
def default_map():
    return parse_map(read_ref("builtin:default.map"))


def open_map(width=9, height=7, red=(1, 1), green=(7, 5), disabled=()):
    return GameMap(width, height, {RED: red, GREEN: green}, frozenset(disabled))


def fresh_game(balance, game_map=None, seed=7, horizon=1000):
    return create_game(game_map or open_map(), balance, seed, horizon)


def put_unit(state, player, utype, quantity, pos, hp=None):
    per = state.balance.units[utype].hp
    unit = Unit(id=state.alloc_id(player), owner=player, type=utype,
                quantity=quantity, hp_pool=hp if hp is not None else quantity * per,
                pos=pos)
    state.add_unit(unit)
    return unit


def put_building(state, player, btype, pos, level=1, hp=None):
    full = state.balance.building_hp(btype, level)
    b = Building(id=state.alloc_id(player), owner=player, type=btype,
                 level=level, hp=hp if hp is not None else full, pos=pos)
    state.add_building(b)
    return b
