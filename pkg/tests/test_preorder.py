"""
Tests for preorders, maximal/minimal sets and rank maps.
"""
import os
import random
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))
from src.preorder import Comparison, Preorder, maximal, minimal, rank_map
from src.random_instances import random_preorder, random_total_preorder


def test_closure_and_comparisons():
    """from_pairs closes reflexively and transitively."""
    print("Test: Closure and comparisons")
    order = Preorder.from_pairs("abcd", [("a", "b"), ("b", "c"), ("d", "c")])
    assert order.is_preorder(), "closure must be a preorder"
    assert order.weakly("a", "c"), "transitivity"
    assert order.weakly("d", "d"), "reflexivity"
    assert order.compare("a", "c") == Comparison.STRICTLY_PREFERRED
    assert order.compare("c", "a") == Comparison.STRICTLY_DISPREFERRED
    assert order.compare("a", "d") == Comparison.INCOMPARABLE
    assert not order.is_total()

    tied = Preorder.from_pairs("xy", [("x", "y"), ("y", "x")])
    assert tied.compare("x", "y") == Comparison.INDIFFERENT
    assert tied.indifference_classes() == [("x", "y")]
    print("✓ Closure and comparisons passed")


def test_maximal_minimal_and_ranks():
    """Two chains sharing a bottom element peel into two layers."""
    print("Test: Maximal, minimal and ranks")
    order = Preorder.from_pairs([1, 2, 3, 4, 5], [(1, 2), (3, 4), (5, 4)])
    assert maximal([1, 2, 3, 4, 5], order) == [1, 3, 5]
    assert minimal([1, 2, 3, 4, 5], order) == [2, 4]
    ranks = rank_map(order)
    assert [ranks[u] for u in (1, 2, 3, 4, 5)] == [0, 1, 0, 1, 0], f"Unexpected ranks {ranks.ranks}"
    assert ranks.kmax == 1
    assert ranks.layers == ((1, 3, 5), (2, 4))
    assert maximal([], order) == []
    print("✓ Maximal, minimal and ranks passed")


def test_inverse_and_restrict():
    """Inverse reverses every pair; restriction keeps carrier order."""
    print("Test: Inverse and restrict")
    order = Preorder.from_levels([["a"], ["b", "c"], ["d"]])
    assert order.is_total()
    inverse = order.inverse()
    assert inverse.strictly("d", "a")
    assert inverse.indifferent("b", "c")
    small = order.restrict(["d", "a"])
    assert small.carrier == ("a", "d"), f"Unexpected carrier {small.carrier}"
    assert small.strictly("a", "d")
    print("✓ Inverse and restrict passed")


def test_rank_properties_on_random_preorders():
    """Every rank layer is an antichain and each element is dominated by the layer above."""
    print("Test: Rank properties on random preorders")
    rng = random.Random(11)
    for _ in range(100):
        order = random_preorder(rng, rng.randint(1, 8), rng.random())
        assert order.is_preorder()
        ranks = rank_map(order)
        for u in order.carrier:
            for v in order.carrier:
                if order.strictly(u, v):
                    assert ranks[u] < ranks[v], f"{u} strictly above {v} but ranks {ranks[u]} >= {ranks[v]}"
            if ranks[u] > 0:
                above = ranks.layers[ranks[u] - 1]
                assert any(order.strictly(w, u) for w in above), f"{u} not covered by the layer above"
        assert set(ranks.layers[0]) == set(maximal(order.carrier, order))
    print("✓ Rank properties on random preorders passed")


def test_total_inverse_ranks_are_constant_sum():
    """For a total preorder, rank + inverse rank is the top rank."""
    print("Test: Total inverse ranks are constant-sum")
    rng = random.Random(5)
    for _ in range(50):
        order = random_total_preorder(rng, rng.randint(1, 6))
        r1 = rank_map(order)
        r2 = rank_map(order.inverse())
        assert r1.kmax == r2.kmax
        assert all(r1[u] + r2[u] == r1.kmax for u in order.carrier)
    print("✓ Total inverse ranks are constant-sum passed")


if __name__ == "__main__":
    test_closure_and_comparisons()
    test_maximal_minimal_and_ranks()
    test_inverse_and_restrict()
    test_rank_properties_on_random_preorders()
    test_total_inverse_ranks_are_constant_sum()
    print("\nAll preorder tests passed!")
