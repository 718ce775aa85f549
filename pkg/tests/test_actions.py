import pytest

from btmimic.hexsim.actions import (
    Move,
    Query,
    Repair,
    SettleBuilding,
    SpawnUnit,
    Upgrade,
    format_atl,
    parse_atl,
)


def test_proportion_whitelist():
    Move(1, (2, 3), 0.25)
    Move(1, (2, 3), 1.0)
    with pytest.raises(ValueError):
        Move(1, (2, 3), 0.3)


def test_atl_round_trip():
    entries = [
        (0, "red", Query()),
        (0, "red", SettleBuilding(1, "farm", (3, 4))),
        (5, "green", SpawnUnit(8, "peasant", 5)),
        (5, "green", Move(10, (0, 0), 0.75)),
        (12, "red", Upgrade(3)),
        (40, "green", Repair(8)),
    ]
    text = format_atl(entries)
    assert parse_atl(text) == entries
    # stable: formatting the parse gives identical bytes
    assert format_atl(parse_atl(text)) == text


def test_atl_rejects_decreasing_rounds():
    with pytest.raises(ValueError):
        parse_atl("5;red;upgrade;1\n2;red;upgrade;1\n")


def test_atl_rejects_unknown_action():
    with pytest.raises(ValueError):
        parse_atl("0;red;explode;1\n")


def test_atl_rejects_bad_player():
    with pytest.raises(ValueError):
        parse_atl("0;blue;upgrade;1\n")


def test_empty_atl():
    assert parse_atl("") == []
    assert format_atl([]) == ""
