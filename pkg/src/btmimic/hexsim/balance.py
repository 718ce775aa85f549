"""Rule constants: unit and building stats, costs, levels.

The balance table is a flat ``key = value`` text file; every number the
engine uses comes from here so scenarios can rescale the game without
code changes. Levels scale linearly: cost/hp/income/damage multiply by
level, barracks train speed divides by level, castle settle radius is
base + level.
"""

from __future__ import annotations

from dataclasses import dataclass

UNIT_TYPES = ("peasant", "knight", "archer")
BUILDING_TYPES = ("castle", "farm", "barracks", "tower")
SETTLEABLE = ("farm", "barracks", "tower")


class ConfigError(ValueError):
    """Malformed map or balance file."""


@dataclass(frozen=True)
class UnitTypeSpec:
    type: str
    attack: int          # damage per member per round
    hp: int              # health per member
    move_period: int     # rounds per cell
    cost: int            # gold per member
    range: int           # 0 = same cell, 1 = adjacent


@dataclass(frozen=True)
class BuildingTypeSpec:
    type: str
    cost: int            # base gold cost; level L costs cost * L
    hp: int              # base hp; level L has hp * L
    income: int = 0      # farm: gold per round per level
    train_rounds: int = 0  # barracks: rounds per member at level 1
    capacity: int = 0    # barracks: pool cap per level
    radius: int = 0      # tower: attack radius
    damage: int = 0      # tower: damage per round per level
    settle_radius: int = 0  # castle: radius base, actual is base + level


@dataclass(frozen=True)
class BalanceTable:
    units: dict[str, UnitTypeSpec]
    buildings: dict[str, BuildingTypeSpec]
    starting_gold: int
    max_level: int
    repair_hp_per_gold: int

    def unit_cost(self, utype: str, quantity: int) -> int:
        return self.units[utype].cost * quantity

    def building_cost(self, btype: str, level: int) -> int:
        return self.buildings[btype].cost * level

    def building_hp(self, btype: str, level: int) -> int:
        return self.buildings[btype].hp * level

    def upgrade_cost(self, btype: str, current_level: int) -> int:
        # price of the next level, per the repair/upgrade convention
        return self.building_cost(btype, current_level + 1)

    def repair_cost(self, missing_hp: int) -> int:
        per = self.repair_hp_per_gold
        return (missing_hp + per - 1) // per

    def settle_radius(self, level: int) -> int:
        return self.buildings["castle"].settle_radius + level

    def farm_income(self, level: int) -> int:
        return self.buildings["farm"].income * level

    def tower_damage(self, level: int) -> int:
        return self.buildings["tower"].damage * level

    def barracks_capacity(self, level: int) -> int:
        return self.buildings["barracks"].capacity * level

    def trainable_types(self, level: int) -> tuple[str, ...]:
        # higher barracks levels unlock more unit types
        if level >= 3:
            return ("peasant", "archer", "knight")
        if level >= 2:
            return ("peasant", "archer")
        return ("peasant",)


def parse_kv(text: str) -> dict[str, str]:
    """Parse `key = value` lines; '#' starts a comment; blanks ignored."""
    out: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, val = line.split("=", 1)
        out[key.strip()] = val.strip()
    return out


def parse_balance(text: str) -> BalanceTable:
    kv = parse_kv(text)

    def geti(key: str) -> int:
        try:
            return int(kv[key])
        except KeyError:
            raise ConfigError(f"balance table missing key {key!r}") from None
        except ValueError:
            raise ConfigError(f"balance key {key!r} is not an integer: {kv[key]!r}") from None

    units = {}
    for ut in UNIT_TYPES:
        units[ut] = UnitTypeSpec(
            type=ut,
            attack=geti(f"unit.{ut}.attack"),
            hp=geti(f"unit.{ut}.hp"),
            move_period=geti(f"unit.{ut}.move-period"),
            cost=geti(f"unit.{ut}.cost"),
            range=geti(f"unit.{ut}.range"),
        )
    buildings = {
        "castle": BuildingTypeSpec(
            type="castle",
            cost=geti("building.castle.cost"),
            hp=geti("building.castle.hp"),
            settle_radius=geti("building.castle.settle-radius"),
        ),
        "farm": BuildingTypeSpec(
            type="farm",
            cost=geti("building.farm.cost"),
            hp=geti("building.farm.hp"),
            income=geti("building.farm.income"),
        ),
        "barracks": BuildingTypeSpec(
            type="barracks",
            cost=geti("building.barracks.cost"),
            hp=geti("building.barracks.hp"),
            train_rounds=geti("building.barracks.train-rounds"),
            capacity=geti("building.barracks.capacity"),
        ),
        "tower": BuildingTypeSpec(
            type="tower",
            cost=geti("building.tower.cost"),
            hp=geti("building.tower.hp"),
            radius=geti("building.tower.radius"),
            damage=geti("building.tower.damage"),
        ),
    }
    table = BalanceTable(
        units=units,
        buildings=buildings,
        starting_gold=geti("starting-gold"),
        max_level=geti("max-level"),
        repair_hp_per_gold=geti("repair-hp-per-gold"),
    )
    _validate(table)
    return table


def _validate(t: BalanceTable) -> None:
    for ut, spec in t.units.items():
        if spec.attack <= 0 or spec.hp <= 0 or spec.move_period <= 0 or spec.cost <= 0:
            raise ConfigError(f"unit {ut}: stats must be strictly positive")
        expected = 1 if ut == "archer" else 0
        if spec.range != expected:
            raise ConfigError(f"unit {ut}: attack range must be {expected}")
    for bt, spec in t.buildings.items():
        if spec.hp <= 0:
            raise ConfigError(f"building {bt}: hp must be strictly positive")
        if bt != "castle" and spec.cost <= 0:
            raise ConfigError(f"building {bt}: cost must be strictly positive")
    if t.buildings["barracks"].train_rounds <= 0 or t.buildings["barracks"].capacity <= 0:
        raise ConfigError("barracks train-rounds and capacity must be strictly positive")
    if t.starting_gold < 0 or t.max_level < 1 or t.repair_hp_per_gold <= 0:
        raise ConfigError("starting-gold, max-level, repair-hp-per-gold out of range")


def load_balance(path) -> BalanceTable:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_balance(fh.read())
