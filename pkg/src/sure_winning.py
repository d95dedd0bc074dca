"""
Sure-winning regions, maximal sure winning and backward-induction values
on sink-terminating product games.
"""
import logging
from collections import deque
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Tuple

from .product import ProductGame

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Strategy:
    """
    Memoryless strategy of one player over product state indices.

    A permissive strategy maps a state to several actions; a deterministic
    one maps to exactly one.
    """
    player: int
    actions: Dict[int, Tuple[str, ...]]

    def allows(self, v: int, action: str) -> bool:
        return v not in self.actions or action in self.actions[v]

    def choose(self, v: int) -> str:
        return self.actions[v][0]

    @property
    def is_deterministic(self) -> bool:
        return all(len(a) == 1 for a in self.actions.values())

    def to_document(self, h: ProductGame) -> Dict:
        return {
            "player": self.player,
            "actions": {h.state_name(v): list(a) for v, a in sorted(self.actions.items())},
        }


def attractor(h: ProductGame, player: int, target: Iterable[int]) -> Tuple[FrozenSet[int], Strategy]:
    """
    States from which `player` can force the play to end in the target.

    Args:
        h: Product game
        player: 1 or 2
        target: Sink states

    Returns:
        The region and the permissive strategy keeping exactly the actions
        that stay inside it
    """
    region = set()
    queue = deque()
    for v in target:
        if h.is_sink(v) and v not in region:
            region.add(v)
            queue.append(v)
    # opponent states join once every distinct successor is in the region
    pending = [len({w for _, w in edges}) for edges in h.succ]
    while queue:
        w = queue.popleft()
        for v in h.pred[w]:
            if v in region:
                continue
            if h.owner[v] == player:
                region.add(v)
                queue.append(v)
            else:
                pending[v] -= 1
                if pending[v] == 0:
                    region.add(v)
                    queue.append(v)
    actions = {}
    for v in sorted(region):
        if h.owner[v] == player and h.succ[v]:
            actions[v] = tuple(a for a, w in h.succ[v] if w in region)
    return frozenset(region), Strategy(player, actions)


def target_set(h: ProductGame, player: int, k: int) -> List[int]:
    ranks = h.ranks(player)
    return [v for v in h.sinks if ranks[v] <= k]


def swin(h: ProductGame, player: int, k: int) -> FrozenSet[int]:
    """Sure-winning region for ending in a sink of rank at most k."""
    return attractor(h, player, target_set(h, player, k))[0]


def max_sure_winning(h: ProductGame, player: int) -> Tuple[int, Strategy]:
    """
    Smallest k such that the initial state is sure winning for rank at most k.

    Args:
        h: Product game
        player: 1 or 2

    Returns:
        (k*, permissive strategy of all actions usable by some maximal sure
        winning strategy)
    """
    for k in range(h.kmax(player) + 1):
        region, strategy = attractor(h, player, target_set(h, player, k))
        logger.debug("player %d: |SWin(rank <= %d)| = %d", player, k, len(region))
        if h.init in region:
            return k, strategy
    raise AssertionError(f"initial state not sure winning for player {player} at kmax")


def value_map(h: ProductGame, player: int) -> List[int]:
    """
    Backward induction: the best rank `player` can guarantee from each state.

    Sinks take their rank, the player's states the minimum over successors,
    the opponent's states the maximum.
    """
    ranks = h.ranks(player)
    value = [0] * h.n_states
    for v in reversed(h.topological):
        if not h.succ[v]:
            value[v] = ranks[v]
        elif h.owner[v] == player:
            value[v] = min(value[w] for _, w in h.succ[v])
        else:
            value[v] = max(value[w] for _, w in h.succ[v])
    return value


def worst_case_rank(h: ProductGame, player: int, strategy: Strategy) -> int:
    """Largest rank of a sink reachable while `player` follows the strategy."""
    def allowed(v: int, a: str) -> bool:
        return h.owner[v] != player or strategy.allows(v, a)

    ranks = h.ranks(player)
    return max(ranks[v] for v in h.reachable(h.init, allowed) if h.is_sink(v))


def is_max_sure_winning(h: ProductGame, player: int, strategy: Strategy) -> bool:
    k_star, _ = max_sure_winning(h, player)
    return worst_case_rank(h, player, strategy) == k_star
