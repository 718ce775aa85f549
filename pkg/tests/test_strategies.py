import pytest

from btmimic.btree import BHTPlayer, BlackBoard, TickContext, tick
from btmimic.btree.nodes import LEAF_REGISTRY, Node
from btmimic.hexsim import ATLPlayer, run_match
from btmimic.hexsim.rng import Xorshift64Star
from btmimic.hexsim.state import GREEN, RED, GameStatus, world_view
from btmimic.strategies import build_strategy

from conftest import fresh_game, put_building, put_unit


class ViewHandle:
    """Handle over a real state for ticking single leaves in isolation."""

    def __init__(self, state, player):
        self.state = state
        self.player = player
        self.issued = []

    @property
    def round(self):
        return self.state.round

    def view(self):
        return world_view(self.state, self.player)

    def check(self, action):
        from btmimic.hexsim.state import check_feasible
        return check_feasible(self.state, self.player, action)

    def path_exists(self, src, dst):
        from btmimic.hexsim.pathfind import find_path
        return find_path(self.state, src, dst, self.player) is not None

    def issue(self, action):
        self.issued.append(action)


def leaf_ctx(state, player=RED):
    handle = ViewHandle(state, player)
    bb = BlackBoard()
    bb["view"] = handle.view()
    bb["gold"] = bb["view"].gold
    bb["rules"] = bb["view"].rules
    return TickContext(handle, bb, {})


def run_leaf(ctx, kind, **args):
    return LEAF_REGISTRY[kind](ctx, args)


def si_args(**over):
    args = dict(units=20, farms=2, barracks=1, towers=1,
                style="offensive", balance=0.5)
    args.update(over)
    return args


# -- strategy_info -------------------------------------------------------------

def test_defensive_split_fraction(balance):
    state = fresh_game(balance)
    for i in range(10):
        put_unit(state, RED, "peasant", 2, (4 + i % 3, 1 + i // 3))
    ctx = leaf_ctx(state)
    run_leaf(ctx, "strategy_info", **si_args(balance=0.8))
    assert len(ctx.bb["defenders"]) == 8
    assert len(ctx.bb["attackers"]) == 2
    # defenders are the units closest to the castle
    assert set(ctx.bb["defenders"]) | set(ctx.bb["attackers"]) == {
        u.id for u in state.player_units(RED)}


def test_split_rounds_half_up(balance):
    state = fresh_game(balance)
    for i in range(3):
        put_unit(state, RED, "peasant", 1, (4 + i, 1))
    ctx = leaf_ctx(state)
    run_leaf(ctx, "strategy_info", **si_args(balance=0.5))
    assert len(ctx.bb["defenders"]) == 2  # round(1.5) -> 2


def test_no_units_no_assignments_still_success(balance):
    state = fresh_game(balance)
    ctx = leaf_ctx(state)
    assert run_leaf(ctx, "strategy_info", **si_args())
    assert ctx.bb["defenders"] == [] and ctx.bb["attackers"] == []
    assert ctx.bb["selected_unit"] is None


def test_threat_forces_defensive_playstyle(balance):
    state = fresh_game(balance)
    castle = state.castles(RED)[0]
    put_unit(state, GREEN, "knight", 5,
             (castle.pos[0] + 1, castle.pos[1]))
    ctx = leaf_ctx(state)
    run_leaf(ctx, "strategy_info", **si_args(style="offensive"))
    assert ctx.bb["playstyle"] == "defensive"


def test_losing_battle_forces_defensive(balance):
    state = fresh_game(balance)
    mine = put_unit(state, RED, "peasant", 2, (6, 4))
    enemy = put_unit(state, GREEN, "knight", 10, (6, 4))
    mine.engaged = True
    enemy.engaged = True
    ctx = leaf_ctx(state)
    run_leaf(ctx, "strategy_info", **si_args(style="offensive"))
    assert ctx.bb["playstyle"] == "defensive"


def test_settle_triggers_follow_targets(balance):
    state = fresh_game(balance)
    put_building(state, RED, "farm", (3, 2))
    ctx = leaf_ctx(state)
    run_leaf(ctx, "strategy_info", **si_args(farms=2, barracks=0, towers=0))
    assert "settle:farm" in ctx.bb["triggers"]
    assert "settle:barracks" not in ctx.bb["triggers"]
    assert "settle:tower" not in ctx.bb["triggers"]


# -- basic services --------------------------------------------------------------

def test_spawn_service_fraction_of_pool(balance):
    state = fresh_game(balance)
    b = put_building(state, RED, "barracks", (3, 2))
    b.pool["peasant"] = 10
    ctx = leaf_ctx(state)
    ctx.bb["units_wanted"] = 50
    assert run_leaf(ctx, "spawn_service", min=5, frac=0.5)
    action = ctx.bb["pending"]
    assert action.kind == "spawn" and action.quantity == 5
    # below the minimum: nothing prepared
    b.pool["peasant"] = 4
    ctx = leaf_ctx(state)
    ctx.bb["units_wanted"] = 50
    assert not run_leaf(ctx, "spawn_service", min=5, frac=0.5)


def test_spawn_service_respects_units_wanted(balance):
    state = fresh_game(balance)
    b = put_building(state, RED, "barracks", (3, 2))
    b.pool["peasant"] = 10
    ctx = leaf_ctx(state)
    ctx.bb["units_wanted"] = 0
    assert not run_leaf(ctx, "spawn_service", min=5, frac=0.5)
    ctx.bb["units_wanted"] = 2
    assert run_leaf(ctx, "spawn_service", min=5, frac=0.5)
    assert ctx.bb["pending"].quantity == 2


def test_repair_service_needs_damage(balance):
    state = fresh_game(balance)
    put_building(state, RED, "tower", (3, 2))
    ctx = leaf_ctx(state)
    assert not run_leaf(ctx, "repair_service")
    state.buildings[state.building_at[(3, 2)]].hp -= 40
    ctx = leaf_ctx(state)
    assert run_leaf(ctx, "repair_service")
    assert ctx.bb["pending"].kind == "repair"


def test_upgrade_service_affordability_gate(balance):
    state = fresh_game(balance)
    put_building(state, RED, "farm", (3, 2))
    state.gold[RED] = balance.upgrade_cost("farm", 1) - 1
    ctx = leaf_ctx(state)
    assert not run_leaf(ctx, "upgrade_service", type="farm")
    state.gold[RED] += 1
    ctx = leaf_ctx(state)
    assert run_leaf(ctx, "upgrade_service", type="farm")
    assert ctx.bb["pending"].kind == "upgrade"


def test_free_hex_service_clears_building_cell(balance):
    state = fresh_game(balance)
    castle = state.castles(RED)[0]
    put_unit(state, RED, "peasant", 2, castle.pos)
    ctx = leaf_ctx(state)
    assert run_leaf(ctx, "free_hex_service")
    action = ctx.bb["pending"]
    assert action.kind == "move" and action.position != castle.pos


# -- strategy services ------------------------------------------------------------

def test_strategy_service_requires_trigger(balance):
    state = fresh_game(balance)
    state.gold[RED] = 10**4
    ctx = leaf_ctx(state)
    ctx.bb["triggers"] = set()
    assert not run_leaf(ctx, "settle_service", type="farm")
    ctx.bb["triggers"] = {"settle:farm"}
    assert run_leaf(ctx, "settle_service", type="farm")
    assert ctx.bb["pending"].kind == "settle"


def test_attack_unit_threshold(balance):
    state = fresh_game(balance)
    mine = put_unit(state, RED, "knight", 8, (4, 4))
    put_unit(state, GREEN, "peasant", 12, (6, 4))
    ctx = leaf_ctx(state)
    ctx.bb["triggers"] = {"attack_units"}
    ctx.bb["attackers"] = [mine.id]
    assert not run_leaf(ctx, "attack_unit_service", max=10)  # 12 is too many
    assert not run_leaf(ctx, "attack_unit_service", max=12)  # strictly smaller
    assert run_leaf(ctx, "attack_unit_service", max=13)
    assert ctx.bb["pending"].position == (6, 4)


def test_attack_building_thresholds(balance):
    state = fresh_game(balance)
    mine = put_unit(state, RED, "knight", 8, (4, 4))
    put_building(state, GREEN, "farm", (6, 4))
    ctx = leaf_ctx(state)
    ctx.bb["triggers"] = {"attack_buildings"}
    ctx.bb["attackers"] = [mine.id]
    assert not run_leaf(ctx, "attack_building_service", group=10, maxhp=500)
    assert not run_leaf(ctx, "attack_building_service", group=5, maxhp=100)
    assert run_leaf(ctx, "attack_building_service", group=5, maxhp=500)
    assert ctx.bb["pending"].position == (6, 4)


def test_defence_service_radius_and_group(balance):
    state = fresh_game(balance)
    castle = state.castles(RED)[0]
    defender = put_unit(state, RED, "peasant", 6, (4, 1))
    threat_pos = (castle.pos[0] + 2, castle.pos[1])
    put_unit(state, GREEN, "knight", 5, threat_pos)
    ctx = leaf_ctx(state)
    ctx.bb["triggers"] = {"defence"}
    ctx.bb["defenders"] = [defender.id]
    assert not run_leaf(ctx, "defence_service", radius=1, group=3)
    assert not run_leaf(ctx, "defence_service", radius=2, group=6)
    assert run_leaf(ctx, "defence_service", radius=2, group=3)
    action = ctx.bb["pending"]
    assert action.id == defender.id and action.position == threat_pos


def test_split_service_proportion_and_range(balance):
    state = fresh_game(balance)
    big = put_unit(state, RED, "knight", 30, (4, 4))
    ctx = leaf_ctx(state)
    ctx.bb["triggers"] = {"split"}
    assert not run_leaf(ctx, "split_service", max=30, prop=0.5, range=2)
    assert run_leaf(ctx, "split_service", max=20, prop=0.5, range=2)
    action = ctx.bb["pending"]
    assert action.id == big.id and action.proportion == 0.5
    from btmimic.hexsim.coords import distance
    assert 1 <= distance(action.position, big.pos) <= 2


def test_merge_service_pairs_small_stacks(balance):
    state = fresh_game(balance)
    a = put_unit(state, RED, "peasant", 3, (4, 4))
    b = put_unit(state, RED, "peasant", 4, (5, 4))
    ctx = leaf_ctx(state)
    ctx.bb["triggers"] = {"merge"}
    assert not run_leaf(ctx, "merge_service", min=3, range=3, target=40)
    assert not run_leaf(ctx, "merge_service", min=5, range=3, target=6)
    assert run_leaf(ctx, "merge_service", min=5, range=3, target=40)
    action = ctx.bb["pending"]
    assert action.id == a.id and action.position == b.pos


def test_return_service_sends_far_defenders_home(balance):
    state = fresh_game(balance)
    castle = state.castles(RED)[0]
    far = put_unit(state, RED, "peasant", 3, (8, 5))
    ctx = leaf_ctx(state)
    ctx.bb["triggers"] = {"return"}
    ctx.bb["assign"] = {far.id: castle.pos}
    assert not run_leaf(ctx, "return_service", dist=9)
    assert run_leaf(ctx, "return_service", dist=3)
    from btmimic.hexsim.coords import distance
    assert distance(ctx.bb["pending"].position, castle.pos) <= 2


# -- the shipped strategies -------------------------------------------------------

def test_build_strategy_contract():
    abt_a = build_strategy("A")
    abt_b = build_strategy("B")
    names = abt_a.domain.names()
    assert names[:3] == ["phase.1", "phase.2", "phase.3"]
    for nm in names[:3]:
        d = abt_a.domain[nm]
        assert d.kind == "continuous" and d.lo == 0.0 and d.hi == 5000.0
    balances = [abt_a.defaults[abt_a.domain.index[f"si{i}.balance"]]
                for i in (1, 2, 3, 4)]
    assert balances == [0.8, 0.6, 0.5, 0.1]
    assert abt_a.template != abt_b.template
    with pytest.raises(ValueError):
        build_strategy("C")


def test_first_action_of_fresh_strategy_a(balance, default_map):
    from btmimic.hexsim.match import GameHandle, GameRecord
    from btmimic.hexsim.state import create_game
    abt = build_strategy("A")
    state = create_game(default_map, balance, 1, 2000)
    record = GameRecord()
    player = BHTPlayer(abt.bind(abt.defaults))
    handle = GameHandle(state, RED, record)
    player.start(handle)
    player.act(handle)
    real = [a for r, p, a in record.red_atl if a.kind != "query"]
    # sub-strategy 1 opens by settling a farm next to the castle
    assert len(real) == 1
    assert real[0].kind == "settle" and real[0].type == "farm"


def test_delay_manager_limits_action_rate(balance, default_map):
    abt = build_strategy("A")
    idle = type("Idle", (), {"start": lambda s, h: None,
                             "act": lambda s, h: None})()
    rec = run_match(BHTPlayer(abt.bind(abt.defaults)), idle,
                    default_map, balance, 3, 300)
    rounds = [r for r, p, a in rec.red_atl if a.kind != "query"]
    assert rounds
    assert all(b - a >= 10 for a, b in zip(rounds, rounds[1:]))


def test_self_play_never_fails_for_random_vectors(balance, default_map):
    # agent feasibility: strict BHT players never issue an infeasible action
    rng = Xorshift64Star(77)
    abt_a = build_strategy("A")
    abt_b = build_strategy("B")
    for trial in range(3):
        pa = abt_a.domain.sample(rng)
        pb = abt_b.domain.sample(rng)
        red = BHTPlayer(abt_a.bind(pa))
        green = BHTPlayer(abt_b.bind(pb))
        red.strict = True
        green.strict = True
        rec = run_match(red, green, default_map, balance, 100 + trial, 800)
        assert rec.status != GameStatus.FAILURE


def test_bht_match_replays_from_atl(balance, default_map):
    abt_a = build_strategy("A")
    abt_b = build_strategy("B")
    original = run_match(BHTPlayer(abt_a.bind(abt_a.defaults)),
                         BHTPlayer(abt_b.bind(abt_b.defaults)),
                         default_map, balance, 11, 600)
    replay = run_match(ATLPlayer(original.red_atl), ATLPlayer(original.green_atl),
                       default_map, balance, 11, 600)
    assert replay.canonical_bytes() == original.canonical_bytes()
