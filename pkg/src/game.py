"""
Deterministic two-player turn-based game graphs.
Includes JSON ingestion with full validation and horizon unrolling.
"""
import logging
from dataclasses import dataclass
from typing import Any, Dict, FrozenSet, Hashable, List, Mapping, Optional, Tuple

import networkx as nx

from .errors import GameValidationError

logger = logging.getLogger(__name__)

State = Hashable
Action = str


@dataclass(frozen=True)
class GameGraph:
    """
    Turn-based labeled transition system.

    Args:
        ap: Ordered atomic propositions
        owner: Player (1 or 2) controlling each state
        labels: Propositions true at each state
        actions: Action id -> (owner, cost)
        trans: State -> {action: successor}; absent or empty means sink
        init: Initial state
    """
    ap: Tuple[str, ...]
    owner: Mapping[State, int]
    labels: Mapping[State, FrozenSet[str]]
    actions: Mapping[Action, Tuple[int, int]]
    trans: Mapping[State, Mapping[Action, State]]
    init: State

    @property
    def states(self) -> List[State]:
        return list(self.owner)

    def enabled(self, state: State) -> List[Action]:
        return sorted(self.trans.get(state, {}))

    def successor(self, state: State, action: Action) -> Optional[State]:
        return self.trans.get(state, {}).get(action)

    def is_sink(self, state: State) -> bool:
        return not self.trans.get(state)

    def cost(self, action: Action) -> int:
        return self.actions[action][1]

    def to_document(self) -> Dict[str, Any]:
        """Inverse of load_game, with state ids rendered as strings."""
        return {
            "ap": list(self.ap),
            "states": [{"id": str(s), "owner": self.owner[s], "label": sorted(self.labels.get(s, ()))}
                       for s in self.owner],
            "actions": [{"id": a, "owner": o, "cost": c} for a, (o, c) in sorted(self.actions.items())],
            "trans": [[str(s), a, str(t)] for s in self.owner for a, t in sorted(self.trans.get(s, {}).items())],
            "init": str(self.init),
        }


def load_game(document: Mapping[str, Any]) -> GameGraph:
    """
    Validate and ingest a game document.

    Args:
        document: {ap, states: [{id, owner, label}], actions: [{id, owner, cost}],
            trans: [[src, action, dst]], init}

    Returns:
        The validated game graph

    Raises:
        GameValidationError: listing every violation found
    """
    errors: List[str] = []
    for key in ("ap", "states", "actions", "trans", "init"):
        if key not in document:
            errors.append(f"missing field '{key}'")
    if errors:
        raise GameValidationError(errors)

    ap = tuple(str(p) for p in document["ap"])
    if len(set(ap)) != len(ap):
        errors.append("duplicate atomic propositions")

    owner: Dict[State, int] = {}
    labels: Dict[State, FrozenSet[str]] = {}
    for k, entry in enumerate(document["states"]):
        if not isinstance(entry, Mapping) or "id" not in entry or "owner" not in entry:
            errors.append(f"state entry {k} needs 'id' and 'owner'")
            continue
        sid = str(entry["id"])
        if sid in owner:
            errors.append(f"duplicate state '{sid}'")
            continue
        if entry["owner"] not in (1, 2):
            errors.append(f"state '{sid}' has owner {entry['owner']!r}, expected 1 or 2")
        owner[sid] = entry["owner"]
        label = frozenset(str(p) for p in entry.get("label", []))
        unknown = label - set(ap)
        if unknown:
            errors.append(f"state '{sid}' is labeled with unknown propositions {sorted(unknown)}")
        labels[sid] = label

    actions: Dict[Action, Tuple[int, int]] = {}
    for k, entry in enumerate(document["actions"]):
        if not isinstance(entry, Mapping) or "id" not in entry or "owner" not in entry:
            errors.append(f"action entry {k} needs 'id' and 'owner'")
            continue
        aid = str(entry["id"])
        if aid in actions:
            errors.append(f"duplicate action '{aid}'")
            continue
        cost = entry.get("cost", 1)
        if entry["owner"] not in (1, 2):
            errors.append(f"action '{aid}' has owner {entry['owner']!r}, expected 1 or 2")
        if cost not in (0, 1):
            errors.append(f"action '{aid}' has cost {cost!r}, expected 0 or 1")
        actions[aid] = (entry["owner"], cost)

    trans: Dict[State, Dict[Action, State]] = {}
    for k, entry in enumerate(document["trans"]):
        if not isinstance(entry, (list, tuple)) or len(entry) != 3:
            errors.append(f"transition {k} must be [src, action, dst]")
            continue
        src, aid, dst = str(entry[0]), str(entry[1]), str(entry[2])
        bad = False
        for ref in (src, dst):
            if ref not in owner:
                errors.append(f"transition {k} references unknown state '{ref}'")
                bad = True
        if aid not in actions:
            errors.append(f"transition {k} uses unknown action '{aid}'")
            bad = True
        if bad:
            continue
        if actions[aid][0] != owner[src]:
            errors.append(f"transition {k}: player {owner[src]} state '{src}' "
                          f"uses player {actions[aid][0]} action '{aid}'")
        row = trans.setdefault(src, {})
        if aid in row and row[aid] != dst:
            errors.append(f"nondeterministic transition from '{src}' on '{aid}' "
                          f"to both '{row[aid]}' and '{dst}'")
            continue
        row[aid] = dst

    init = str(document["init"])
    if init not in owner:
        errors.append(f"initial state '{init}' is not declared")

    if errors:
        raise GameValidationError(errors)
    logger.info("loaded game with %d states and %d actions", len(owner), len(actions))
    return GameGraph(ap=ap, owner=owner, labels=labels, actions=actions, trans=trans, init=init)


def unroll_horizon(g: GameGraph, horizon: int) -> GameGraph:
    """
    Pair every state with a time counter.

    The counter advances by the cost of each action and states whose counter
    reaches the horizon have no outgoing transitions. Only the part reachable
    from (init, 0) is built.

    Args:
        g: Game graph whose actions carry costs 0 or 1
        horizon: Time budget, at least 0

    Returns:
        The unrolled game with states (state, t)

    Raises:
        GameValidationError: if some cycle uses only cost-0 actions
    """
    if horizon < 0:
        raise ValueError("horizon must be non-negative")
    cycle = zero_cost_cycle(g)
    if cycle:
        path = " -> ".join(str(s) for s in cycle)
        raise GameValidationError([f"cost-0 cycle {path} never reaches the horizon"])
    init = (g.init, 0)
    owner: Dict[State, int] = {init: g.owner[g.init]}
    labels: Dict[State, FrozenSet[str]] = {init: g.labels.get(g.init, frozenset())}
    trans: Dict[State, Dict[Action, State]] = {}
    stack = [init]
    while stack:
        current = stack.pop()
        state, t = current
        if t >= horizon:
            continue
        row = {}
        for action, dst in g.trans.get(state, {}).items():
            target = (dst, t + g.cost(action))
            row[action] = target
            if target not in owner:
                owner[target] = g.owner[dst]
                labels[target] = g.labels.get(dst, frozenset())
                stack.append(target)
        if row:
            trans[current] = row
    return GameGraph(ap=g.ap, owner=owner, labels=labels, actions=dict(g.actions), trans=trans, init=init)


def zero_cost_cycle(g: GameGraph) -> List[State]:
    """A cycle of cost-0 transitions as a closed state list, or [] if there is none."""
    graph = nx.DiGraph()
    for state, row in g.trans.items():
        for action, dst in row.items():
            if g.cost(action) == 0:
                graph.add_edge(state, dst)
    try:
        edges = nx.find_cycle(graph)
    except nx.NetworkXNoCycle:
        return []
    return [u for u, _ in edges] + [edges[0][0]]
