"""
Tests for attractors, maximal sure winning and backward-induction values.
"""
import os
import random
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))
from fixtures import aligned_product, pennies_product
from src.random_instances import random_instance
from src.sure_winning import (Strategy, attractor, is_max_sure_winning, max_sure_winning, swin, target_set,
                              value_map, worst_case_rank)


def test_attractor_needs_every_opponent_move():
    """An opponent state joins only once all of its successors are in the region."""
    print("Test: Attractor needs every opponent move")
    h = pennies_product()
    region, strategy = attractor(h, 1, [3, 6])
    assert region == frozenset([3, 6]), f"P2 can always mismatch, got {sorted(region)}"
    assert strategy.actions == {}
    region, strategy = attractor(h, 2, [4, 5])
    assert region == frozenset([0, 1, 2, 4, 5])
    assert strategy.actions == {1: ("d",), 2: ("c",)}
    assert attractor(h, 1, [1])[0] == frozenset(), "non-sink targets are ignored"
    print("✓ Attractor needs every opponent move passed")


def test_target_set_and_swin():
    """Targets are the sinks within the rank bound."""
    print("Test: Target set and SWin")
    h = pennies_product()
    assert target_set(h, 1, 0) == [3, 6]
    assert target_set(h, 1, 1) == [3, 4, 5, 6]
    assert swin(h, 1, 0) == frozenset([3, 6])
    assert swin(h, 1, 1) == frozenset(range(7))
    assert swin(h, 2, 0) == frozenset([0, 1, 2, 4, 5])
    print("✓ Target set and SWin passed")


def test_max_sure_winning_pennies():
    """P1 can only guarantee losing; P2 can always guarantee winning."""
    print("Test: Maximal sure winning on pennies")
    h = pennies_product()
    k1, pi1 = max_sure_winning(h, 1)
    k2, pi2 = max_sure_winning(h, 2)
    assert (k1, k2) == (1, 0)
    assert pi1.actions == {0: ("a", "b")}, "every P1 choice is equally safe"
    assert not pi1.is_deterministic and pi2.is_deterministic
    assert value_map(h, 1) == [1, 1, 1, 0, 1, 1, 0]
    assert value_map(h, 2) == [0, 0, 0, 1, 0, 0, 1]
    print("✓ Maximal sure winning on pennies passed")


def test_worst_case_rank():
    """A matching P2 strategy forfeits its guarantee."""
    print("Test: Worst case rank")
    h = pennies_product()
    assert worst_case_rank(h, 1, Strategy(1, {0: ("a",)})) == 1
    assert is_max_sure_winning(h, 1, Strategy(1, {0: ("b",)}))
    matching = Strategy(2, {1: ("c",), 2: ("c",)})
    assert worst_case_rank(h, 2, matching) == 1
    assert not is_max_sure_winning(h, 2, matching)
    assert is_max_sure_winning(h, 2, Strategy(2, {1: ("d",), 2: ("c",)}))
    print("✓ Worst case rank passed")


def test_aligned_guarantees():
    """With a shared goal both players guarantee the best rank."""
    print("Test: Aligned guarantees")
    h = aligned_product()
    k1, pi1 = max_sure_winning(h, 1)
    k2, pi2 = max_sure_winning(h, 2)
    assert (k1, k2) == (0, 0)
    assert pi1.actions[0] == ("a",)
    assert pi2.actions[2] == ("c",)
    print("✓ Aligned guarantees passed")


def test_regions_agree_with_values_on_random_games():
    """SWin at k is exactly the set of states whose value is at most k."""
    print("Test: Regions agree with values on random games")
    rng = random.Random(7)
    for trial in range(60):
        alignment = ("aligned", "opposite", "independent")[trial % 3]
        _, _, _, h = random_instance(rng, alignment)
        for player in (1, 2):
            value = value_map(h, player)
            for k in range(h.kmax(player) + 1):
                region = swin(h, player, k)
                assert region == frozenset(v for v in range(h.n_states) if value[v] <= k), \
                    f"trial {trial} player {player} k={k}"
            k_star, strategy = max_sure_winning(h, player)
            assert value[h.init] == k_star
            assert worst_case_rank(h, player, strategy) == k_star
    print("✓ Regions agree with values on random games passed")


if __name__ == "__main__":
    test_attractor_needs_every_opponent_move()
    test_target_set_and_swin()
    test_max_sure_winning_pennies()
    test_worst_case_rank()
    test_aligned_guarantees()
    test_regions_agree_with_values_on_random_games()
    print("\nAll sure winning tests passed!")
