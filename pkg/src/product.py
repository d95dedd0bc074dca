"""
Product of a game graph with the players' shared semi-automaton.
Each product state pairs a game state with the automaton state reached on
the labels seen so far; both players' preorders are read off the automaton
component.
"""
import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Hashable, List, Optional, Sequence, Tuple

import networkx as nx

from .config import DEFAULT_CONFIG, SolverConfig
from .errors import (CapacityError, InvalidPathError, NonTerminatingProductError,
                     SemiAutomatonMismatchError)
from .game import GameGraph
from .preference import PreferenceAutomaton
from .preorder import Preorder, rank_map

logger = logging.getLogger(__name__)

ProductState = Tuple[Hashable, int]
Edge = Tuple[str, int]


@dataclass
class ProductGame:
    """
    Materialized reachable product game.

    States are indexed 0..n-1 with the initial state at 0. succ[v] lists
    (action, successor) pairs sorted by action; a state without successors
    is a sink. Ranks are per player and per state; rank 0 is best.
    """
    game: GameGraph
    p1: PreferenceAutomaton
    p2: PreferenceAutomaton
    states: Tuple[ProductState, ...]
    owner: Tuple[int, ...]
    succ: Tuple[Tuple[Edge, ...], ...]
    rank1: Tuple[int, ...]
    rank2: Tuple[int, ...]
    kmax1: int
    kmax2: int
    index: Dict[ProductState, int] = field(init=False, repr=False)
    pred: Tuple[Tuple[int, ...], ...] = field(init=False, repr=False)
    sinks: Tuple[int, ...] = field(init=False, repr=False)
    topological: Tuple[int, ...] = field(init=False, repr=False)

    def __post_init__(self):
        self.index = {s: v for v, s in enumerate(self.states)}
        pred: List[List[int]] = [[] for _ in self.states]
        graph = nx.DiGraph()
        graph.add_nodes_from(range(len(self.states)))
        for v, edges in enumerate(self.succ):
            for _, w in edges:
                pred[w].append(v)
                graph.add_edge(v, w)
        self.pred = tuple(tuple(sorted(set(p))) for p in pred)
        self.sinks = tuple(v for v, edges in enumerate(self.succ) if not edges)
        if not nx.is_directed_acyclic_graph(graph):
            cycle = nx.find_cycle(graph, source=0)
            raise NonTerminatingProductError([self.state_name(u) for u, _ in cycle] + [self.state_name(cycle[0][0])])
        self.topological = tuple(nx.lexicographical_topological_sort(graph))

    @property
    def init(self) -> int:
        return 0

    @property
    def n_states(self) -> int:
        return len(self.states)

    def rank(self, player: int, v: int) -> int:
        return self.rank1[v] if player == 1 else self.rank2[v]

    def ranks(self, player: int) -> Tuple[int, ...]:
        return self.rank1 if player == 1 else self.rank2

    def kmax(self, player: int) -> int:
        return self.kmax1 if player == 1 else self.kmax2

    def automaton(self, player: int) -> PreferenceAutomaton:
        return self.p1 if player == 1 else self.p2

    def q(self, v: int) -> int:
        return self.states[v][1]

    def is_sink(self, v: int) -> bool:
        return not self.succ[v]

    def successor(self, v: int, action: str) -> Optional[int]:
        for a, w in self.succ[v]:
            if a == action:
                return w
        return None

    def enabled(self, v: int) -> List[str]:
        return [a for a, _ in self.succ[v]]

    def state_name(self, v: int) -> str:
        s, q = self.states[v]
        return f"{s}|q{q}"

    def q_present(self) -> List[int]:
        return sorted({q for _, q in self.states})

    def weakly(self, player: int, v: int, w: int) -> bool:
        """Lifted preorder: compares automaton components only."""
        return self.automaton(player).order.weakly(self.q(v), self.q(w))

    def strictly(self, player: int, v: int, w: int) -> bool:
        return self.automaton(player).order.strictly(self.q(v), self.q(w))

    def lifted_preorder(self, player: int) -> Preorder:
        """Explicit preorder on product states; quadratic, for small games."""
        order = self.automaton(player).order
        states = range(self.n_states)
        relation = frozenset((v, w) for v in states for w in states if order.weakly(self.q(v), self.q(w)))
        return Preorder(tuple(states), relation)

    def reachable(self, source: int = 0, allowed=None) -> List[int]:
        """States reachable from source, optionally through allowed (v, action) edges only."""
        seen = {source}
        queue = deque([source])
        while queue:
            v = queue.popleft()
            for a, w in self.succ[v]:
                if allowed is not None and not allowed(v, a):
                    continue
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        return sorted(seen)


def _ranks(p: PreferenceAutomaton, present: Sequence[int]):
    return rank_map(p.order.restrict(present))


def build_product(g: GameGraph, p1: PreferenceAutomaton, p2: PreferenceAutomaton,
                  config: SolverConfig = DEFAULT_CONFIG) -> ProductGame:
    """
    Materialize the reachable product game.

    The initial state is (s0, delta(q0, L(s0))); a move to s' updates the
    automaton with L(s'). Ranks are computed on the automaton states that
    occur in the materialized product.

    Args:
        g: Game graph
        p1: Player 1 preference automaton
        p2: Player 2 preference automaton over the same semi-automaton
        config: Capacity bounds

    Returns:
        The product game

    Raises:
        SemiAutomatonMismatchError: if the automata or AP sets differ
        NonTerminatingProductError: if a reachable cycle avoids all sinks
    """
    if not p1.same_semi_automaton(p2):
        raise SemiAutomatonMismatchError("players' preference automata do not share a semi-automaton")
    if set(g.ap) != set(p1.ap):
        raise SemiAutomatonMismatchError(
            f"game propositions {sorted(g.ap)} differ from automaton propositions {sorted(p1.ap)}")

    def label(s) -> FrozenSet[str]:
        return g.labels.get(s, frozenset())

    start = (g.init, p1.step(p1.initial, label(g.init)))
    index: Dict[ProductState, int] = {start: 0}
    states: List[ProductState] = [start]
    succ: List[Tuple[Edge, ...]] = []
    queue = deque([start])
    while queue:
        s, q = queue.popleft()
        edges = []
        for action in g.enabled(s):
            t = g.trans[s][action]
            target = (t, p1.step(q, label(t)))
            if target not in index:
                if len(states) >= config.max_product_states:
                    raise CapacityError("product game", config.max_product_states)
                index[target] = len(states)
                states.append(target)
                queue.append(target)
            edges.append((action, index[target]))
        succ.append(tuple(edges))

    present = sorted({q for _, q in states})
    r1 = _ranks(p1, present)
    r2 = _ranks(p2, present)
    h = ProductGame(
        game=g,
        p1=p1,
        p2=p2,
        states=tuple(states),
        owner=tuple(g.owner[s] for s, _ in states),
        succ=tuple(succ),
        rank1=tuple(r1[q] for _, q in states),
        rank2=tuple(r2[q] for _, q in states),
        kmax1=r1.kmax,
        kmax2=r2.kmax,
    )
    logger.info("product game has %d states, %d sinks, kmax=(%d, %d)",
                h.n_states, len(h.sinks), h.kmax1, h.kmax2)
    return h


def subgame(h: ProductGame, keep) -> ProductGame:
    """
    Restrict h to the (v, action) edges accepted by `keep` and to the states
    reachable from the initial state through them. Ranks carry over.
    """
    reachable = h.reachable(0, keep)
    renumber = {v: k for k, v in enumerate(reachable)}
    succ = tuple(
        tuple((a, renumber[w]) for a, w in h.succ[v] if keep(v, a))
        for v in reachable
    )
    return ProductGame(
        game=h.game,
        p1=h.p1,
        p2=h.p2,
        states=tuple(h.states[v] for v in reachable),
        owner=tuple(h.owner[v] for v in reachable),
        succ=succ,
        rank1=tuple(h.rank1[v] for v in reachable),
        rank2=tuple(h.rank2[v] for v in reachable),
        kmax1=h.kmax1,
        kmax2=h.kmax2,
    )


def trace_lift(h: ProductGame, path: Sequence[Hashable]) -> List[int]:
    """
    Lift a game path to its product trace.

    Args:
        h: Product game
        path: Game states s0, s1, ... following the transition relation

    Returns:
        Product state indices, one per game state
    """
    g = h.game
    if not path:
        raise InvalidPathError("empty path")
    if path[0] != g.init:
        raise InvalidPathError(f"path starts at {path[0]!r}, not at the initial state {g.init!r}")
    trace = [0]
    for k in range(1, len(path)):
        v = trace[-1]
        target = next((w for _, w in h.succ[v] if h.states[w][0] == path[k]), None)
        if target is None:
            raise InvalidPathError(f"no transition from {path[k - 1]!r} to {path[k]!r} at step {k}")
        trace.append(target)
    return trace


def path_word(h: ProductGame, path: Sequence[Hashable]) -> List[FrozenSet[str]]:
    """The label word of a game path."""
    return [h.game.labels.get(s, frozenset()) for s in path]


def reachable_sinks(h: ProductGame) -> List[int]:
    """Sinks reachable from the initial state, which are the possible play outcomes."""
    return [v for v in h.reachable(0) if h.is_sink(v)]
