import json

import pytest

from hedonic import fixtures as fx
from hedonic.coalitions import mask_of, subsets_containing
from hedonic.errors import GameError, MissingTableEntry
from hedonic.gamefile import game_to_dict, load_game, load_table, parse_game, parse_rule, table_to_dict
from hedonic.game import TableRule


def test_delta_reconstruction():
    g = parse_game({"n": 2, "u": {"1": 0.5, "2": 1.0}, "delta": {"1,2": 0.25}})
    assert g.u(3) == pytest.approx(1.75)
    assert g.v is None


@pytest.mark.parametrize("data, msg", [
    ({"n": 2, "u": {"1": 0.0}}, "u\\(2\\)"),
    ({"n": 2, "u": {"1": 0, "2": 0, "1,2": 1}, "delta": {"1,2": 1}}, "delta cannot be combined"),
    ({"n": 2, "u": {"1": 0, "2": 0, "2,1": 1}}, "ascending"),
    ({"n": 2, "u": {"1": 0, "2": 0, "1,3": 1}}, "outside"),
    ({"n": 2, "u": {"1": 0, "2": "x"}}, "expected a number"),
    ({"n": 0, "u": {}}, "n must be"),
    ({"n": 2, "u": {"1": 0, "2": 0}, "policy": "lenient"}, "policy"),
    ({"n": 2, "u": {"1": 0, "2": 0}, "extra": 1}, "unknown game file field"),
    ({"n": 3, "u": {"1": 0, "2": 0, "3": 0}, "v": {"1,2": 0.1}}, "missing"),
])
def test_rejections(data, msg):
    with pytest.raises(GameError, match=msg):
        parse_game(data)


def test_strict_vs_default_policy():
    data = {"n": 3, "u": {"1": 1, "2": 2, "3": 3, "1,2": 4}}
    g = parse_game(data)
    with pytest.raises(GameError):
        g.u.require_complete()
    g = parse_game(data, policy="additive-default")
    assert g.u(7) == 6.0


def test_roundtrip(tmp_path, four):
    path = tmp_path / "g.json"
    path.write_text(json.dumps(game_to_dict(four, fx.rounded_pairs(), as_delta=True)))
    g = load_game(path)
    assert all(g.u(m) == pytest.approx(four(m), abs=1e-12) for m in range(1, 16))
    assert list(g.v.vector) == list(fx.REFERENCE_V)


def test_table_file(tmp_path):
    phi = {(i, m): float(i) for i in (1, 2) for m in subsets_containing(2, i)}
    rule = TableRule(2, phi)
    path = tmp_path / "t.json"
    path.write_text(json.dumps(table_to_dict(rule)))
    assert load_table(path, 2).phi == phi
    data = table_to_dict(rule)
    del data["phi"]["1,2"]
    path.write_text(json.dumps(data))
    with pytest.raises(MissingTableEntry):
        load_table(path, 2)


def test_rule_specs(tmp_path, four):
    g = parse_game(game_to_dict(four, fx.rounded_pairs()))
    assert parse_rule("srg", g).kind == "srg"
    assert parse_rule("pairs", g).v.vector.tolist() == list(fx.REFERENCE_V)
    assert parse_rule("pairs-from:relaxed", g).v.vector.sum() == pytest.approx(-0.7225)
    p = tmp_path / "v.json"
    p.write_text(json.dumps({"v": {"1,2": 1, "1,3": 2, "1,4": 3, "2,3": 4, "2,4": 5, "3,4": 6}}))
    assert parse_rule(f"pairs:{p}", g).v(3, 4) == 6
    for bad in ("nash", "table:", "pairs-from:simplex", "srg:1"):
        with pytest.raises(GameError):
            parse_rule(bad, g)
    with pytest.raises(GameError, match="not defined|infeasible"):
        parse_rule("pairs-from:exact", g)
