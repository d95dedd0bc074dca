"""
PrefLTLf specifications and preference automata.
A specification orders LTLf alternatives; the automaton tracks which
alternatives a word satisfies and orders its states accordingly.
"""
import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import networkx as nx

from .config import DEFAULT_CONFIG, EMPTY_POLICIES, SolverConfig
from .errors import (CapacityError, LtlfSyntaxError, PreferenceInconsistencyError,
                     PrefSpecError, SemiAutomatonMismatchError)
from .ltlf import Dfa, Formula, Letter, letter_mask, ltlf_to_dfa, parse_ltlf
from .preorder import Comparison, Preorder, maximal

logger = logging.getLogger(__name__)

BOTTOM = -1
OPERATORS = (">=", ">", "~", "<>")


@dataclass(frozen=True)
class Constraint:
    op: str
    i: int
    j: int

    def __str__(self):
        return f"{self.op} {self.i} {self.j}"


@dataclass(frozen=True)
class PrefSpec:
    alternatives: Tuple[Formula, ...]
    constraints: Tuple[Constraint, ...] = ()

    @property
    def size(self) -> int:
        return len(self.alternatives)


def parse_prefspec(text: str) -> PrefSpec:
    """
    Parse the PrefSpec text format.

    Line 1 is `prefltlf N`, the next N lines are formulas indexed from 0, and
    every remaining line is `<op> <i> <j>` with op one of >=, >, ~, <>.
    `#` starts a comment; blank lines are skipped.

    Args:
        text: File contents

    Returns:
        The parsed specification
    """
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0].strip()
        if content:
            lines.append((number, content))
    if not lines:
        raise PrefSpecError("empty specification")

    number, header = lines[0]
    parts = header.split()
    if len(parts) != 2 or parts[0] != "prefltlf":
        raise PrefSpecError("expected header 'prefltlf <N>'", number)
    try:
        n = int(parts[1])
    except ValueError:
        raise PrefSpecError(f"invalid alternative count {parts[1]!r}", number) from None
    if n < 1:
        raise PrefSpecError("a specification needs at least one alternative", number)
    if len(lines) < n + 1:
        raise PrefSpecError(f"expected {n} formulas, found {len(lines) - 1}", lines[-1][0])

    alternatives = []
    for number, content in lines[1:n + 1]:
        try:
            alternatives.append(parse_ltlf(content))
        except LtlfSyntaxError as e:
            raise PrefSpecError(str(e), number) from e

    constraints = []
    for number, content in lines[n + 1:]:
        parts = content.split()
        if len(parts) != 3 or parts[0] not in OPERATORS:
            raise PrefSpecError(f"expected '<op> <i> <j>' with op in {OPERATORS}, got {content!r}", number)
        try:
            i, j = int(parts[1]), int(parts[2])
        except ValueError:
            raise PrefSpecError(f"constraint indices must be integers: {content!r}", number) from None
        for index in (i, j):
            if not 0 <= index < n:
                raise PrefSpecError(f"index {index} out of range for {n} alternatives", number)
        if i == j and parts[0] in (">", "<>"):
            raise PrefSpecError(f"constraint {content!r} relates an alternative to itself", number)
        constraints.append(Constraint(parts[0], i, j))
    return PrefSpec(tuple(alternatives), tuple(constraints))


def close_constraints(spec: PrefSpec, empty_policy: str = "bottom") -> Preorder:
    """
    Close the declared constraints into a preorder over alternative indices
    plus the synthetic BOTTOM element standing for "nothing satisfied".

    Args:
        spec: The specification
        empty_policy: Position of BOTTOM: bottom, top or incomparable

    Returns:
        Preorder over (0, ..., N-1, BOTTOM)

    Raises:
        PreferenceInconsistencyError: if the closure contradicts a strict or
            incomparability constraint
    """
    if empty_policy not in EMPTY_POLICIES:
        raise ValueError(f"unknown empty policy {empty_policy!r}")
    n = spec.size
    members = []
    exclusions = []
    for c in spec.constraints:
        if c.op == ">=":
            members.append((c.i, c.j))
        elif c.op == ">":
            members.append((c.i, c.j))
            exclusions.append(((c.j, c.i), c))
        elif c.op == "~":
            members.extend([(c.i, c.j), (c.j, c.i)])
        else:
            exclusions.extend([((c.i, c.j), c), ((c.j, c.i), c)])
    if empty_policy == "bottom":
        members.extend((i, BOTTOM) for i in range(n))
    elif empty_policy == "top":
        members.extend((BOTTOM, i) for i in range(n))

    closed = Preorder.from_pairs(list(range(n)) + [BOTTOM], members)
    for pair, constraint in exclusions:
        if pair in closed.relation:
            raise PreferenceInconsistencyError(
                constraint, f"closure forces alternative {pair[0]} to be weakly preferred to {pair[1]}")
    assert closed.is_preorder(), "constraint closure is not a preorder"
    return closed


@dataclass(frozen=True)
class PreferenceAutomaton:
    """
    Deterministic semi-automaton with a preorder on its states.

    delta[q][mask] is the successor on the letter with bitmask `mask` over
    `ap`; sat[q] holds the alternatives satisfied by words ending in q.
    """
    ap: Tuple[str, ...]
    n_states: int
    initial: int
    delta: Tuple[Tuple[int, ...], ...]
    order: Preorder
    sat: Tuple[FrozenSet[int], ...] = ()
    components: Tuple[Tuple[int, ...], ...] = ()
    alternatives: Tuple[str, ...] = ()
    empty_policy: str = "bottom"
    closed: Optional[Preorder] = field(default=None, compare=False)

    def step(self, state: int, letter: Letter) -> int:
        return self.delta[state][letter_mask(letter, self.ap)]

    def run(self, word: Sequence[Letter], state: Optional[int] = None) -> int:
        q = self.initial if state is None else state
        for letter in word:
            q = self.step(q, letter)
        return q

    def same_semi_automaton(self, other: "PreferenceAutomaton") -> bool:
        return (self.ap, self.n_states, self.initial, self.delta) == \
            (other.ap, other.n_states, other.initial, other.delta)


@dataclass(frozen=True)
class _SemiAutomaton:
    ap: Tuple[str, ...]
    delta: Tuple[Tuple[int, ...], ...]
    components: Tuple[Tuple[int, ...], ...]
    sat: Tuple[FrozenSet[int], ...]


def _semi_automaton(alternatives: Sequence[Formula], ap: Sequence[str],
                    config: SolverConfig) -> _SemiAutomaton:
    """Reachable synchronous product of the alternatives' DFAs."""
    ap = tuple(ap)
    dfas: List[Dfa] = [ltlf_to_dfa(f, ap, max_states=config.max_dfa_states) for f in alternatives]
    start = tuple(d.initial for d in dfas)
    index = {start: 0}
    order = [start]
    rows = []
    queue = deque([start])
    while queue:
        current = queue.popleft()
        row = []
        for mask in range(1 << len(ap)):
            target = tuple(d.delta[c][mask] for d, c in zip(dfas, current))
            if target not in index:
                if len(order) >= config.max_automaton_states:
                    raise CapacityError("preference automaton", config.max_automaton_states)
                index[target] = len(order)
                order.append(target)
                queue.append(target)
            row.append(index[target])
        rows.append(tuple(row))
    sat = tuple(frozenset(i for i, (d, c) in enumerate(zip(dfas, comp)) if c in d.accepting)
                for comp in order)
    logger.info("semi-automaton over %d alternatives has %d states", len(dfas), len(order))
    return _SemiAutomaton(ap=ap, delta=tuple(rows), components=tuple(order), sat=sat)


def induced_order(sat: Sequence[FrozenSet[int]], closed: Preorder) -> Preorder:
    """
    Order automaton states by their maximal satisfied alternatives.

    q is weakly preferred to q' iff every maximal alternative satisfied at q'
    is weakly dominated by some maximal alternative satisfied at q; an empty
    satisfied set counts as {BOTTOM}.
    """
    tops: Dict[FrozenSet[int], List[int]] = {}
    for s in set(sat):
        tops[s] = maximal(s if s else {BOTTOM}, closed)
    dominates: Dict[Tuple[FrozenSet[int], FrozenSet[int]], bool] = {}
    for s in tops:
        for t in tops:
            dominates[(s, t)] = all(any(closed.weakly(i, j) for i in tops[s]) for j in tops[t])
    states = range(len(sat))
    relation = frozenset((q, r) for q in states for r in states if dominates[(sat[q], sat[r])])
    order = Preorder(tuple(states), relation)
    assert order.is_preorder(), "induced state order is not a preorder"
    return order


def _assemble(semi: _SemiAutomaton, spec: PrefSpec, empty_policy: str) -> PreferenceAutomaton:
    closed = close_constraints(spec, empty_policy)
    return PreferenceAutomaton(
        ap=semi.ap,
        n_states=len(semi.components),
        initial=0,
        delta=semi.delta,
        order=induced_order(semi.sat, closed),
        sat=semi.sat,
        components=semi.components,
        alternatives=tuple(str(f) for f in spec.alternatives),
        empty_policy=empty_policy,
        closed=closed,
    )


def build_preference_automaton(spec: PrefSpec, ap: Sequence[str], empty_policy: str = "bottom",
                               config: SolverConfig = DEFAULT_CONFIG) -> PreferenceAutomaton:
    """
    Compile a specification into its preference automaton.

    Args:
        spec: Consistent specification
        ap: Ordered atomic propositions
        empty_policy: Position of "nothing satisfied"
        config: Capacity bounds

    Returns:
        The preference automaton, states numbered breadth-first
    """
    close_constraints(spec, empty_policy)
    return _assemble(_semi_automaton(spec.alternatives, ap, config), spec, empty_policy)


def build_preference_automata(spec1: PrefSpec, spec2: PrefSpec, ap: Sequence[str],
                              empty_policy1: str = "bottom", empty_policy2: str = "bottom",
                              config: SolverConfig = DEFAULT_CONFIG
                              ) -> Tuple[PreferenceAutomaton, PreferenceAutomaton]:
    """Both players' automata over one shared semi-automaton."""
    if [str(f) for f in spec1.alternatives] != [str(f) for f in spec2.alternatives]:
        raise SemiAutomatonMismatchError("the two specifications do not share their alternatives")
    close_constraints(spec1, empty_policy1)
    close_constraints(spec2, empty_policy2)
    semi = _semi_automaton(spec1.alternatives, ap, config)
    return _assemble(semi, spec1, empty_policy1), _assemble(semi, spec2, empty_policy2)


def compare_words(p: PreferenceAutomaton, w: Sequence[Letter], w_prime: Sequence[Letter]) -> Comparison:
    """
    Compare two words by the states they drive the automaton to.

    Args:
        p: Preference automaton
        w: First word
        w_prime: Second word

    Returns:
        How w compares to w_prime
    """
    return p.order.compare(p.run(w), p.run(w_prime))


def preference_graph(p: PreferenceAutomaton, reduce: bool = True) -> nx.DiGraph:
    """
    Condensation of the state order.

    Nodes are indifference classes numbered by their smallest member; an edge
    X -> Y means the states of Y are strictly preferred to those of X.
    """
    classes = p.order.indifference_classes()
    graph = nx.DiGraph()
    for k, members in enumerate(classes):
        graph.add_node(k, members=members)
    for x, low in enumerate(classes):
        for y, high in enumerate(classes):
            if x != y and p.order.strictly(high[0], low[0]):
                graph.add_edge(x, y)
    if reduce and graph.number_of_edges():
        reduced = nx.transitive_reduction(graph)
        reduced.add_nodes_from(graph.nodes(data=True))
        graph = reduced
    return graph


def class_of(graph: nx.DiGraph, state: int) -> int:
    for node, members in graph.nodes(data="members"):
        if state in members:
            return node
    raise KeyError(state)
