"""
Seeded generators of preorders, games and preference automata for the
property suites and benchmarks.
"""
import random
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import NonTerminatingProductError
from .game import GameGraph, unroll_horizon
from .ltlf import parse_ltlf
from .preference import PrefSpec, PreferenceAutomaton, build_preference_automaton
from .preorder import Preorder
from .product import ProductGame, build_product

ALIGNMENTS = ("aligned", "opposite", "independent")


def random_preorder(rng: random.Random, n: int, density: float = 0.3) -> Preorder:
    """Closure of a random relation over range(n)."""
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < density]
    return Preorder.from_pairs(range(n), pairs)


def random_total_preorder(rng: random.Random, n: int) -> Preorder:
    elements = list(range(n))
    rng.shuffle(elements)
    levels: List[List[int]] = []
    for u in elements:
        if levels and rng.random() < 0.3:
            levels[-1].append(u)
        else:
            levels.append([u])
    return Preorder(tuple(range(n)), Preorder.from_levels(levels).relation)


def random_dag_game(rng: random.Random, n_states: int = 6, max_actions: int = 2,
                    ap: Sequence[str] = ("p", "q")) -> GameGraph:
    """
    Game whose transitions only go to higher-numbered states, so every play
    ends in a sink. The last state is always a sink.
    """
    states = [f"s{i}" for i in range(n_states)]
    owner = {s: rng.choice((1, 2)) for s in states}
    labels = {s: frozenset(p for p in ap if rng.random() < 0.4) for s in states}
    actions = {}
    for k in range(max_actions):
        actions[f"a{k}"] = (1, 1)
        actions[f"b{k}"] = (2, 1)
    trans: Dict[str, Dict[str, str]] = {}
    for i, s in enumerate(states[:-1]):
        if i > 0 and rng.random() < 0.25:
            continue
        prefix = "a" if owner[s] == 1 else "b"
        row = {}
        for k in range(rng.randint(1, max_actions)):
            row[f"{prefix}{k}"] = states[rng.randint(i + 1, n_states - 1)]
        trans[s] = row
    return GameGraph(ap=tuple(ap), owner=owner, labels=labels, actions=actions, trans=trans, init=states[0])


def random_delta(rng: random.Random, n_q: int, n_letters: int) -> Tuple[Tuple[int, ...], ...]:
    return tuple(tuple(rng.randrange(n_q) for _ in range(n_letters)) for _ in range(n_q))


def random_automata(rng: random.Random, alignment: str, ap: Sequence[str] = ("p", "q"),
                    n_q: Optional[int] = None) -> Tuple[PreferenceAutomaton, PreferenceAutomaton]:
    """
    Two preference automata over one random semi-automaton.

    aligned: equal preorders; opposite: a total preorder and its inverse;
    independent: two unrelated random preorders.
    """
    if alignment not in ALIGNMENTS:
        raise ValueError(f"unknown alignment {alignment!r}")
    n_q = n_q or rng.randint(2, 4)
    delta = random_delta(rng, n_q, 1 << len(ap))
    if alignment == "aligned":
        e1 = random_preorder(rng, n_q)
        e2 = e1
    elif alignment == "opposite":
        e1 = random_total_preorder(rng, n_q)
        e2 = e1.inverse()
    else:
        e1 = random_preorder(rng, n_q)
        e2 = random_preorder(rng, n_q)

    def automaton(order: Preorder) -> PreferenceAutomaton:
        return PreferenceAutomaton(ap=tuple(ap), n_states=n_q, initial=0, delta=delta, order=order)

    return automaton(e1), automaton(e2)


def random_instance(rng: random.Random, alignment: str, max_product_states: int = 12,
                    n_states: int = 6, max_actions: int = 2
                    ) -> Tuple[GameGraph, PreferenceAutomaton, PreferenceAutomaton, ProductGame]:
    """Regenerate until the product has at most `max_product_states` states."""
    while True:
        g = random_dag_game(rng, rng.randint(2, n_states), max_actions)
        p1, p2 = random_automata(rng, alignment, g.ap)
        try:
            h = build_product(g, p1, p2)
        except NonTerminatingProductError:
            continue
        if h.n_states <= max_product_states:
            return g, p1, p2, h


def random_formula_text(rng: random.Random, depth: int, ap: Sequence[str]) -> str:
    """Formula text of nesting depth at most `depth`."""
    if depth == 0 or rng.random() < 0.2:
        return rng.choice(list(ap) + ["true", "false"] if rng.random() < 0.1 else list(ap))
    kind = rng.choice(["!", "X", "F", "G", "&", "|", "U"])
    if kind in ("!", "X", "F", "G"):
        return f"{kind} ({random_formula_text(rng, depth - 1, ap)})"
    left = random_formula_text(rng, depth - 1, ap)
    right = random_formula_text(rng, depth - 1, ap)
    return f"({left}) {kind} ({right})"


def reach_goal_chain(length: int, horizon: int) -> ProductGame:
    """
    Scaling family: a ring of `length` states alternating between players,
    each able to step or stay, unrolled to `horizon`. Reaching the labeled
    state is preferred to not reaching it.
    """
    states = [f"c{i}" for i in range(length)]
    owner = {s: 1 if i % 2 == 0 else 2 for i, s in enumerate(states)}
    labels = {s: frozenset(["g"]) if i == length - 1 else frozenset() for i, s in enumerate(states)}
    actions = {"step1": (1, 1), "stay1": (1, 1), "step2": (2, 1), "stay2": (2, 1)}
    trans = {}
    for i, s in enumerate(states):
        suffix = str(owner[s])
        trans[s] = {f"step{suffix}": states[(i + 1) % length], f"stay{suffix}": s}
    ring = GameGraph(ap=("g",), owner=owner, labels=labels, actions=actions, trans=trans, init=states[0])
    spec = PrefSpec((parse_ltlf("F g"),), ())
    p = build_preference_automaton(spec, ("g",), "bottom")
    return build_product(unroll_horizon(ring, horizon), p, p)
