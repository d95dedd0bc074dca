"""
Tests for PrefSpec parsing, constraint closure and preference automata.
"""
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))
from fixtures import FIVE_OUTCOME_SPEC
from src.errors import PreferenceInconsistencyError, PrefSpecError, SemiAutomatonMismatchError
from src.ltlf import holds
from src.preference import (BOTTOM, build_preference_automata, build_preference_automaton, close_constraints,
                            compare_words, parse_prefspec, preference_graph, class_of)
from src.preorder import Comparison, rank_map

SCENARIO_DIR = os.path.join(os.path.dirname(__file__), '..', 'scenarios')
DRONE_AP = ("d1", "d2", "d3")


def read_spec(name):
    with open(os.path.join(SCENARIO_DIR, name), encoding="utf-8") as f:
        return parse_prefspec(f.read())


def test_parse_prefspec():
    """Header, formulas, comments and constraints."""
    print("Test: Parse PrefSpec")
    spec = parse_prefspec("# delivery\nprefltlf 2\nF a   # first\n\nF b\n> 0 1\n~ 1 1\n")
    assert spec.size == 2
    assert [str(f) for f in spec.alternatives] == ["F a", "F b"]
    assert [str(c) for c in spec.constraints] == ["> 0 1", "~ 1 1"]
    aligned = read_spec("aligned.prefltlf")
    assert aligned.size == 4 and len(aligned.constraints) == 3
    print("✓ Parse PrefSpec passed")


def test_parse_prefspec_errors():
    """Malformed files report the offending line."""
    print("Test: Parse PrefSpec errors")
    cases = {
        "": None,
        "prefltl 1\nF a\n": 1,
        "prefltlf 0\n": 1,
        "prefltlf 2\nF a\n": 2,
        "prefltlf 1\nF (a\n": 2,
        "prefltlf 1\nF a\n>> 0 0\n": 3,
        "prefltlf 2\nF a\nF b\n> 0 2\n": 4,
        "prefltlf 2\nF a\nF b\n> 1 1\n": 4,
        "prefltlf 2\nF a\nF b\n> x 1\n": 4,
    }
    for text, line in cases.items():
        try:
            parse_prefspec(text)
            assert False, f"Expected PrefSpecError for {text!r}"
        except PrefSpecError as e:
            assert e.line == line, f"{text!r}: expected line {line}, got {e.line}"
    print("✓ Parse PrefSpec errors passed")


def test_close_constraints_policies():
    """The empty outcome sits below, above or beside every alternative."""
    print("Test: Close constraints policies")
    spec = parse_prefspec("prefltlf 2\nF a\nF b\n>= 0 1\n")
    bottom = close_constraints(spec, "bottom")
    assert bottom.strictly(0, BOTTOM) and bottom.strictly(1, BOTTOM)
    top = close_constraints(spec, "top")
    assert top.strictly(BOTTOM, 0) and top.strictly(BOTTOM, 1)
    beside = close_constraints(spec, "incomparable")
    assert beside.incomparable(0, BOTTOM)
    assert beside.weakly(0, 1) and not beside.weakly(1, 0)
    try:
        close_constraints(spec, "middle")
        assert False, "Expected ValueError for unknown policy"
    except ValueError:
        pass
    print("✓ Close constraints policies passed")


def test_inconsistent_constraints():
    """A strict or incomparability constraint contradicted by the closure is rejected."""
    print("Test: Inconsistent constraints")
    for text in ["prefltlf 2\nF a\nF b\n> 0 1\n>= 1 0\n",
                 "prefltlf 3\nF a\nF b\nF c\n> 0 1\n> 1 2\n> 2 0\n",
                 "prefltlf 2\nF a\nF b\n<> 0 1\n~ 0 1\n"]:
        try:
            close_constraints(parse_prefspec(text))
            assert False, f"Expected PreferenceInconsistencyError for {text!r}"
        except PreferenceInconsistencyError as e:
            assert e.constraint is not None
    print("✓ Inconsistent constraints passed")


def test_automaton_sat_sets():
    """sat[q] is exactly the set of alternatives satisfied by words ending in q."""
    print("Test: Automaton sat sets")
    spec = read_spec("aligned.prefltlf")
    p = build_preference_automaton(spec, DRONE_AP)
    words = [[], [{"d1"}], [set(), {"d2"}], [{"d3"}, {"d1", "d3"}], [{"d2"}, {"d1", "d2"}, {"d1", "d2", "d3"}]]
    for word in words:
        q = p.run(word)
        expected = {i for i, f in enumerate(spec.alternatives) if holds(f, word)}
        assert p.sat[q] == frozenset(expected), f"word {word}: sat {set(p.sat[q])} != {expected}"
    assert p.order.is_preorder()
    print("✓ Automaton sat sets passed")


def test_delivery_word_comparison():
    """Delivering 2 then 1 beats delivering 3 then 2 under the aligned drone preference."""
    print("Test: Delivery word comparison")
    p = build_preference_automaton(read_spec("aligned.prefltlf"), DRONE_AP)
    two_then_one = [set(), {"d2"}, {"d1", "d2"}]
    three_then_two = [set(), {"d3"}, {"d2", "d3"}]
    assert compare_words(p, two_then_one, three_then_two) == Comparison.STRICTLY_PREFERRED
    assert compare_words(p, [{"d1"}], [{"d2"}]) == Comparison.INCOMPARABLE
    assert compare_words(p, [{"d2"}], []) == Comparison.STRICTLY_PREFERRED, "one delivery beats none"
    print("✓ Delivery word comparison passed")


def test_empty_policy_changes_order():
    """With a single goal the policy decides how success compares to failure."""
    print("Test: Empty policy changes order")
    spec = parse_prefspec("prefltlf 1\nF a\n")
    expected = {"bottom": Comparison.STRICTLY_PREFERRED, "top": Comparison.STRICTLY_DISPREFERRED,
                "incomparable": Comparison.INCOMPARABLE}
    for policy, comparison in expected.items():
        p = build_preference_automaton(spec, ("a",), policy)
        assert compare_words(p, [{"a"}], [set()]) == comparison, f"policy {policy}"
    print("✓ Empty policy changes order passed")


def test_preference_graph():
    """Nodes are indifference classes; edges point to strictly preferred classes."""
    print("Test: Preference graph")
    p = build_preference_automaton(parse_prefspec("prefltlf 1\nF a\n"), ("a",), "bottom")
    graph = preference_graph(p)
    assert graph.number_of_nodes() == 2
    low = class_of(graph, p.run([]))
    high = class_of(graph, p.run([{"a"}]))
    assert list(graph.edges()) == [(low, high)]

    beside = build_preference_automaton(parse_prefspec("prefltlf 1\nF a\n"), ("a",), "incomparable")
    assert preference_graph(beside).number_of_edges() == 0, "no constraints gives an antichain"
    print("✓ Preference graph passed")


def test_shared_semi_automaton():
    """Two players over the same alternatives share one semi-automaton."""
    print("Test: Shared semi-automaton")
    p1, p2 = build_preference_automata(read_spec("opposite_a.prefltlf"), read_spec("opposite_b.prefltlf"),
                                       DRONE_AP, "bottom", "top")
    assert p1.same_semi_automaton(p2)
    q = p1.run([{"d2"}])
    r = p1.run([{"d1"}])
    assert p1.order.strictly(r, q) and p2.order.strictly(q, r)
    try:
        build_preference_automata(read_spec("aligned.prefltlf"), read_spec("opposite_a.prefltlf"), DRONE_AP)
        assert False, "Expected SemiAutomatonMismatchError"
    except SemiAutomatonMismatchError:
        pass
    print("✓ Shared semi-automaton passed")


def test_incomparable_alternatives_and_ranks():
    """Ranks follow strict preference only: incomparable alternatives may share a rank or not."""
    print("Test: Incomparable alternatives and ranks")
    spec = parse_prefspec(FIVE_OUTCOME_SPEC)
    closed = close_constraints(spec, "bottom").restrict(range(5))
    ranks = rank_map(closed)
    assert [ranks[i] for i in range(5)] == [0, 1, 0, 1, 0], f"Unexpected ranks {ranks.ranks}"
    assert ranks.layers == ((0, 2, 4), (1, 3))
    assert closed.incomparable(1, 2) and ranks[2] < ranks[1] and not closed.strictly(2, 1)
    assert closed.incomparable(2, 4) and ranks[2] == ranks[4]
    assert not closed.weakly(2, 4) and ranks[2] == ranks[4], "not weakly preferred yet not ranked below"

    p = build_preference_automaton(spec, ("a", "b", "c", "d", "e"))
    assert compare_words(p, [{"a"}], [{"b"}]) == Comparison.STRICTLY_PREFERRED
    assert compare_words(p, [{"b"}], [{"c"}]) == Comparison.INCOMPARABLE
    assert compare_words(p, [{"c"}], [{"e"}]) == Comparison.INCOMPARABLE
    assert compare_words(p, [{"e"}], [{"d"}]) == Comparison.STRICTLY_PREFERRED
    print("✓ Incomparable alternatives and ranks passed")


if __name__ == "__main__":
    test_parse_prefspec()
    test_parse_prefspec_errors()
    test_close_constraints_policies()
    test_inconsistent_constraints()
    test_automaton_sat_sets()
    test_delivery_word_comparison()
    test_empty_policy_changes_order()
    test_preference_graph()
    test_shared_semi_automaton()
    test_incomparable_alternatives_and_ranks()
    print("\nAll preference tests passed!")
