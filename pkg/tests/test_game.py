"""
Tests for game graph ingestion and horizon unrolling.
"""
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))
from src.errors import GameValidationError
from src.game import load_game, unroll_horizon, zero_cost_cycle
from src.persistence import read_json

SCENARIO_DIR = os.path.join(os.path.dirname(__file__), '..', 'scenarios')


def test_load_game():
    """A valid document loads with its owners, labels and transitions."""
    print("Test: Load game")
    g = load_game(read_json(os.path.join(SCENARIO_DIR, "pennies.json")))
    assert g.ap == ("w",)
    assert g.init == "v0"
    assert g.enabled("v0") == ["a", "b"]
    assert g.successor("ua", "d") == "ad"
    assert g.is_sink("ac") and not g.is_sink("ub")
    assert g.labels["bd"] == frozenset(["w"])
    assert load_game(g.to_document()) == g, "to_document must load back to the same game"
    print("✓ Load game passed")


def test_load_game_collects_all_errors():
    """Every violation is reported at once."""
    print("Test: Load game collects all errors")
    document = {
        "ap": ["p", "p"],
        "states": [{"id": "s", "owner": 1, "label": ["r"]}, {"id": "t", "owner": 3}],
        "actions": [{"id": "a", "owner": 1, "cost": 2}, {"id": "b", "owner": 2}],
        "trans": [["s", "a", "t"], ["s", "a", "s"], ["s", "b", "t"], ["s", "z", "t"], ["s", "a"]],
        "init": "u",
    }
    try:
        load_game(document)
        assert False, "Expected GameValidationError"
    except GameValidationError as e:
        text = "\n".join(e.errors)
        for fragment in ["duplicate atomic propositions", "unknown propositions", "owner 3", "cost 2",
                         "nondeterministic", "uses player 2 action", "unknown action 'z'",
                         "must be [src, action, dst]", "initial state 'u'"]:
            assert fragment in text, f"Missing {fragment!r} in {e.errors}"
    try:
        load_game({"ap": []})
        assert False, "Expected GameValidationError for missing fields"
    except GameValidationError as e:
        assert len(e.errors) == 4, f"Expected 4 missing fields, got {e.errors}"
    print("✓ Load game collects all errors passed")


def test_unroll_horizon():
    """A two-state loop unrolls into a clocked graph that ends at the horizon."""
    print("Test: Unroll horizon")
    g = load_game({
        "ap": ["g"],
        "states": [{"id": "x", "owner": 1}, {"id": "y", "owner": 2, "label": ["g"]}, {"id": "z", "owner": 2}],
        "actions": [{"id": "go", "owner": 1}, {"id": "back", "owner": 2}, {"id": "look", "owner": 1, "cost": 0}],
        "trans": [["x", "go", "y"], ["y", "back", "x"], ["x", "look", "z"]],
        "init": "x",
    })
    u = unroll_horizon(g, 3)
    assert set(u.states) == {("x", 0), ("y", 1), ("x", 2), ("y", 3), ("z", 0), ("z", 2)}, \
        f"Unexpected states {u.states}"
    assert u.successor(("x", 2), "look") == ("z", 2), "cost-0 actions keep the clock"
    assert u.is_sink(("z", 0))
    assert u.is_sink(("y", 3))
    assert u.labels[("y", 1)] == frozenset(["g"])
    assert u.owner[("y", 1)] == 2
    assert unroll_horizon(g, 0).states == [("x", 0)]
    try:
        unroll_horizon(g, -1)
        assert False, "Expected ValueError for a negative horizon"
    except ValueError:
        pass
    print("✓ Unroll horizon passed")


def test_unroll_rejects_zero_cost_cycles():
    """A loop of cost-0 actions would never reach the horizon and is rejected by name."""
    print("Test: Unroll rejects zero cost cycles")
    g = load_game({
        "ap": [],
        "states": [{"id": "x", "owner": 1}, {"id": "y", "owner": 2}],
        "actions": [{"id": "look", "owner": 1, "cost": 0}, {"id": "peek", "owner": 2, "cost": 0},
                    {"id": "wait", "owner": 1}],
        "trans": [["x", "look", "y"], ["y", "peek", "x"], ["x", "wait", "x"]],
        "init": "x",
    })
    assert zero_cost_cycle(g) in (["x", "y", "x"], ["y", "x", "y"]), f"Unexpected cycle {zero_cost_cycle(g)}"
    try:
        unroll_horizon(g, 2)
        assert False, "Expected GameValidationError"
    except GameValidationError as e:
        assert "cost-0 cycle" in e.errors[0] and "x" in e.errors[0] and "y" in e.errors[0], e.errors
    g = load_game({
        "ap": [],
        "states": [{"id": "x", "owner": 1}],
        "actions": [{"id": "look", "owner": 1, "cost": 0}],
        "trans": [["x", "look", "x"]],
        "init": "x",
    })
    try:
        unroll_horizon(g, 1)
        assert False, "Expected GameValidationError for a cost-0 self-loop"
    except GameValidationError as e:
        assert "x -> x" in e.errors[0], e.errors
    print("✓ Unroll rejects zero cost cycles passed")


if __name__ == "__main__":
    test_load_game()
    test_load_game_collects_all_errors()
    test_unroll_horizon()
    test_unroll_rejects_zero_cost_cycles()
    print("\nAll game tests passed!")
