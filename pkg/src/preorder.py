"""
Finite preorders: comparisons, maximal and minimal elements, and rank maps.
A pair (u, v) in the relation reads "u is weakly preferred to v".
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, Hashable, Iterable, List, Sequence, Tuple

import networkx as nx


class Comparison(str, Enum):
    STRICTLY_PREFERRED = "strictly_preferred"
    STRICTLY_DISPREFERRED = "strictly_dispreferred"
    INDIFFERENT = "indifferent"
    INCOMPARABLE = "incomparable"


@dataclass(frozen=True)
class Preorder:
    """
    Reflexive and transitive relation over an ordered carrier.

    Args:
        carrier: Elements in their canonical order; returned sets follow it
        relation: Pairs (u, v) with u weakly preferred to v
    """
    carrier: Tuple[Hashable, ...]
    relation: FrozenSet[Tuple[Hashable, Hashable]]
    _index: Dict[Hashable, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {u: i for i, u in enumerate(self.carrier)})

    @classmethod
    def from_pairs(cls, carrier: Iterable[Hashable], pairs: Iterable[Tuple[Hashable, Hashable]]) -> "Preorder":
        """Reflexive-transitive closure of the given pairs."""
        carrier = tuple(carrier)
        graph = nx.DiGraph()
        graph.add_nodes_from(carrier)
        graph.add_edges_from(pairs)
        closure = nx.transitive_closure(graph, reflexive=True)
        relation = set(closure.edges())
        relation.update((u, u) for u in carrier)
        return cls(carrier, frozenset(relation))

    @classmethod
    def from_levels(cls, levels: Sequence[Iterable[Hashable]]) -> "Preorder":
        """Total preorder; levels[0] holds the most preferred elements."""
        levels = [list(level) for level in levels]
        carrier = tuple(u for level in levels for u in level)
        relation = set()
        for i, upper in enumerate(levels):
            for lower in levels[i:]:
                relation.update((u, v) for u in upper for v in lower)
        return cls(carrier, frozenset(relation))

    def index(self, u: Hashable) -> int:
        return self._index[u]

    def sort(self, elements: Iterable[Hashable]) -> List[Hashable]:
        return sorted(elements, key=self._index.__getitem__)

    def weakly(self, u: Hashable, v: Hashable) -> bool:
        return (u, v) in self.relation

    def strictly(self, u: Hashable, v: Hashable) -> bool:
        return (u, v) in self.relation and (v, u) not in self.relation

    def indifferent(self, u: Hashable, v: Hashable) -> bool:
        return (u, v) in self.relation and (v, u) in self.relation

    def incomparable(self, u: Hashable, v: Hashable) -> bool:
        return (u, v) not in self.relation and (v, u) not in self.relation

    def compare(self, u: Hashable, v: Hashable) -> Comparison:
        forward = (u, v) in self.relation
        backward = (v, u) in self.relation
        if forward and backward:
            return Comparison.INDIFFERENT
        if forward:
            return Comparison.STRICTLY_PREFERRED
        if backward:
            return Comparison.STRICTLY_DISPREFERRED
        return Comparison.INCOMPARABLE

    def inverse(self) -> "Preorder":
        return Preorder(self.carrier, frozenset((v, u) for u, v in self.relation))

    def restrict(self, subset: Iterable[Hashable]) -> "Preorder":
        keep = set(subset)
        carrier = tuple(u for u in self.carrier if u in keep)
        return Preorder(carrier, frozenset((u, v) for u, v in self.relation if u in keep and v in keep))

    def graph(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(self.carrier)
        g.add_edges_from(self.relation)
        return g

    def indifference_classes(self) -> List[Tuple[Hashable, ...]]:
        """Mutually related groups, each sorted, ordered by first member."""
        classes = [tuple(self.sort(c)) for c in nx.strongly_connected_components(self.graph())]
        classes.sort(key=lambda c: self._index[c[0]])
        return classes

    def is_total(self) -> bool:
        return all(not self.incomparable(u, v) for u in self.carrier for v in self.carrier)

    def is_preorder(self) -> bool:
        members = set(self.carrier)
        if any(u not in members or v not in members for u, v in self.relation):
            return False
        if any((u, u) not in self.relation for u in self.carrier):
            return False
        successors: Dict[Hashable, set] = {u: set() for u in self.carrier}
        for u, v in self.relation:
            successors[u].add(v)
        return all(successors[v] <= successors[u] for u, v in self.relation)


def maximal(subset: Iterable[Hashable], order: Preorder) -> List[Hashable]:
    """
    Elements of the subset that no other element of it strictly dominates.

    Args:
        subset: Elements of the carrier
        order: The preorder

    Returns:
        The maximal elements in carrier order
    """
    elements = order.sort(set(subset))
    return [u for u in elements if not any(order.strictly(w, u) for w in elements)]


def minimal(subset: Iterable[Hashable], order: Preorder) -> List[Hashable]:
    elements = order.sort(set(subset))
    return [u for u in elements if not any(order.strictly(u, w) for w in elements)]


@dataclass(frozen=True)
class RankMap:
    """Layer index of every element; layer 0 is the maximal set."""
    ranks: Dict[Hashable, int]
    kmax: int
    layers: Tuple[Tuple[Hashable, ...], ...]

    def __getitem__(self, u: Hashable) -> int:
        return self.ranks[u]


def rank_map(order: Preorder) -> RankMap:
    """
    Peel maximal sets until the carrier is exhausted.

    Args:
        order: Preorder with a nonempty carrier

    Returns:
        The rank of every carrier element and the largest rank
    """
    remaining = list(order.carrier)
    ranks: Dict[Hashable, int] = {}
    layers = []
    while remaining:
        layer = maximal(remaining, order)
        for u in layer:
            ranks[u] = len(layers)
        layers.append(tuple(layer))
        taken = set(layer)
        remaining = [u for u in remaining if u not in taken]
    return RankMap(ranks=ranks, kmax=len(layers) - 1, layers=tuple(layers))
