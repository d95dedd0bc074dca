"""
Small hand-traced games shared by the test modules.
"""
import os
import shutil
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))
from src.game import GameGraph
from src.ltlf import parse_ltlf
from src.preference import (PrefSpec, PreferenceAutomaton, build_preference_automata, build_preference_automaton,
                            parse_prefspec)
from src.preorder import Preorder
from src.product import build_product

# {} stays in 0; {p} -> 1, {q} -> 2, {p, q} -> 3; 1..3 absorbing
PQ_DELTA = ((0, 1, 2, 3), (1, 1, 1, 1), (2, 2, 2, 2), (3, 3, 3, 3))


def cleanup_data_dir(data_dir: str):
    """Remove data directory."""
    if os.path.exists(data_dir):
        shutil.rmtree(data_dir)


def make_game(ap, states, trans, init="v0"):
    """
    Game from {id: (owner, labels)} and [(src, action, dst)].

    Action ids are owned by the owner of their source state, cost 1.
    """
    owner = {s: o for s, (o, _) in states.items()}
    labels = {s: frozenset(l) for s, (_, l) in states.items()}
    rows = {}
    actions = {}
    for src, action, dst in trans:
        rows.setdefault(src, {})[action] = dst
        actions[action] = (owner[src], 1)
    return GameGraph(ap=tuple(ap), owner=owner, labels=labels, actions=actions, trans=rows, init=init)


def win_automata(policy2="top"):
    """'F w' for both players; P2 ranks the empty outcome by `policy2`."""
    spec = PrefSpec((parse_ltlf("F w"),), ())
    return build_preference_automaton(spec, ("w",), "bottom"), build_preference_automaton(spec, ("w",), policy2)


def pennies_game() -> GameGraph:
    """P1 picks a/b, P2 then picks c/d; P1 wins (w) on a match."""
    states = {
        "v0": (1, ()), "ua": (2, ()), "ub": (2, ()),
        "ac": (1, ("w",)), "ad": (1, ()), "bc": (1, ()), "bd": (1, ("w",)),
    }
    trans = [("v0", "a", "ua"), ("v0", "b", "ub"),
             ("ua", "c", "ac"), ("ua", "d", "ad"), ("ub", "c", "bc"), ("ub", "d", "bd")]
    return make_game(("w",), states, trans)


def pennies_product():
    """Completely opposite: indices v0=0, ua=1, ub=2, ac=3, ad=4, bc=5, bd=6."""
    p1, p2 = win_automata("top")
    return build_product(pennies_game(), p1, p2)


def aligned_product():
    """
    P1 ends at s1 (w) with a, or hands over with b; P2 then ends at s3 (w)
    with c or at s4 with d. Indices v0=0, s1=1, s2=2, s3=3, s4=4.
    """
    states = {"v0": (1, ()), "s1": (1, ("w",)), "s2": (2, ()), "s3": (1, ("w",)), "s4": (1, ())}
    trans = [("v0", "a", "s1"), ("v0", "b", "s2"), ("s2", "c", "s3"), ("s2", "d", "s4")]
    p1, p2 = win_automata("bottom")
    return build_product(make_game(("w",), states, trans), p1, p2)


def pq_automata(e1: Preorder, e2: Preorder):
    def automaton(order):
        return PreferenceAutomaton(ap=("p", "q"), n_states=4, initial=0, delta=PQ_DELTA, order=order)
    return automaton(e1), automaton(e2)


def choice_product(e1: Preorder, e2: Preorder):
    """P1 alone chooses: a -> x (p), b -> y (q). Indices v0=0, x=1, y=2."""
    states = {"v0": (1, ()), "x": (1, ("p",)), "y": (1, ("q",))}
    trans = [("v0", "a", "x"), ("v0", "b", "y")]
    p1, p2 = pq_automata(e1, e2)
    return build_product(make_game(("p", "q"), states, trans), p1, p2)


def no_cooperation_product():
    """Both prefer x; P2 does not care between y and the rest."""
    e1 = Preorder.from_levels([[1], [2], [0], [3]])
    e2 = Preorder.from_pairs(range(4), [(1, 0)])
    return choice_product(e1, e2)


def helper_product():
    """P1 is indifferent-incomparable between x and y; P2 prefers x."""
    e1 = Preorder.from_pairs(range(4), [(1, 0), (2, 0)])
    e2 = Preorder.from_levels([[1], [2], [0], [3]])
    return choice_product(e1, e2)


def pareto_product():
    """
    P1 chooses a -> u or b -> z (p, q); P2 at u chooses c -> x (p) or d -> y (q).
    Both rank x first; P1 ranks z over y, P2 ranks y over z.
    Indices v0=0, u=1, z=2, x=3, y=4.
    """
    states = {"v0": (1, ()), "u": (2, ()), "z": (1, ("p", "q")), "x": (1, ("p",)), "y": (1, ("q",))}
    trans = [("v0", "a", "u"), ("v0", "b", "z"), ("u", "c", "x"), ("u", "d", "y")]
    e1 = Preorder.from_levels([[1], [3], [2], [0]])
    e2 = Preorder.from_levels([[1], [2], [3], [0]])
    p1, p2 = pq_automata(e1, e2)
    return build_product(make_game(("p", "q"), states, trans), p1, p2)


# v1 > v2, v3 > v4, v5 > v4 and nothing else
FIVE_OUTCOME_SPEC = "prefltlf 5\nF a\nF b\nF c\nF d\nF e\n> 0 1\n> 2 3\n> 4 3\n"


def five_outcome_product():
    """P1 alone picks one of v1..v5, labeled a..e; both players share FIVE_OUTCOME_SPEC."""
    ap = ("a", "b", "c", "d", "e")
    states = {"v0": (1, ())}
    trans = []
    for k, p in enumerate(ap, start=1):
        states[f"v{k}"] = (1, (p,))
        trans.append(("v0", f"c{k}", f"v{k}"))
    spec = parse_prefspec(FIVE_OUTCOME_SPEC)
    p1, p2 = build_preference_automata(spec, spec, ap)
    return build_product(make_game(ap, states, trans), p1, p2)
