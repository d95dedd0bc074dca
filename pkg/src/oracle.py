"""
Brute-force Nash equilibria on small product games.
Enumerates deterministic memoryless profiles and tests unilateral
deviations directly.
"""
import itertools
import logging
import random
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .config import DEFAULT_CONFIG, SolverConfig
from .errors import ProfileSchemaError, SizeGuardError
from .product import ProductGame
from .solve import NashReport, Profile, play_outcome, validate_profile
from .sure_winning import Strategy

logger = logging.getLogger(__name__)


class ProfileEnumeration:
    """
    All deterministic memoryless profiles of a product game, in a fixed order.

    Each player's strategies assign one enabled action to every non-sink
    state the player owns; profiles are the cartesian product of both lists.
    """

    def __init__(self, h: ProductGame, config: SolverConfig = DEFAULT_CONFIG):
        if h.n_states > config.oracle_max_states:
            raise SizeGuardError(f"product has {h.n_states} states, oracle limit is {config.oracle_max_states}")
        self.h = h
        self.choice_states = {
            player: [v for v in range(h.n_states) if h.succ[v] and h.owner[v] == player]
            for player in (1, 2)
        }
        self.counts = {}
        for player, states in self.choice_states.items():
            count = 1
            for v in states:
                count *= len(h.succ[v])
            self.counts[player] = count
        if self.size > config.oracle_max_profiles:
            raise SizeGuardError(f"{self.size} profiles exceed the oracle limit of {config.oracle_max_profiles}")

    @property
    def size(self) -> int:
        return self.counts[1] * self.counts[2]

    def strategies(self, player: int) -> Iterator[Strategy]:
        states = self.choice_states[player]
        options = [[(a,) for a, _ in self.h.succ[v]] for v in states]
        for choice in itertools.product(*options):
            yield Strategy(player, dict(zip(states, choice)))

    def __iter__(self) -> Iterator[Profile]:
        second = list(self.strategies(2))
        for pi1 in self.strategies(1):
            for pi2 in second:
                yield pi1, pi2

    def __len__(self) -> int:
        return self.size


def play(h: ProductGame, profile: Profile) -> Tuple[List[int], int]:
    """
    The unique play of a profile.

    Returns:
        (path of product states from the initial state, final sink)
    """
    validate_profile(h, profile)
    return play_outcome(h, profile)


def _sinks_from(h: ProductGame, start: int, player: int, opponent: Strategy) -> List[int]:
    def allowed(v: int, a: str) -> bool:
        return h.owner[v] == player or opponent.allows(v, a)
    return [v for v in h.reachable(start, allowed) if h.is_sink(v)]


def deviations(h: ProductGame, profile: Profile, player: int, weak: bool = False) -> List[int]:
    """
    Outcomes by which `player` profitably deviates from the profile.

    With weak=False a deviation is profitable when its outcome is strictly
    preferred; with weak=True any different strategy whose outcome is weakly
    preferred counts.
    """
    path, outcome = play_outcome(h, profile)
    own = profile[player - 1]
    opponent = profile[2 - player]
    better = h.weakly if weak else h.strictly
    found = set()
    on_path = set(path)
    for v in path:
        if h.owner[v] != player or not h.succ[v]:
            continue
        for a, w in h.succ[v]:
            if a == own.choose(v):
                continue
            for sink in _sinks_from(h, w, player, opponent):
                if better(player, sink, outcome):
                    found.add(sink)
    if weak and any(h.owner[v] == player and len(h.succ[v]) > 1 and v not in on_path
                    for v in range(h.n_states)):
        found.add(outcome)
    return sorted(found)


def is_nash_direct(h: ProductGame, profile: Profile, weak: bool = False) -> bool:
    """No unilateral deviation of either player is profitable."""
    validate_profile(h, profile)
    return not deviations(h, profile, 1, weak) and not deviations(h, profile, 2, weak)


def brute_force_nash(h: ProductGame, weak: bool = False,
                     config: SolverConfig = DEFAULT_CONFIG) -> List[Profile]:
    """
    Every Nash profile among the deterministic memoryless profiles.

    Raises:
        SizeGuardError: if the game or its profile count exceeds the guards
    """
    enumeration = ProfileEnumeration(h, config)
    result = [p for p in enumeration if is_nash_direct(h, p, weak)]
    logger.info("oracle: %d of %d profiles are Nash", len(result), enumeration.size)
    return result


def nash_outcomes(h: ProductGame, profiles: Sequence[Profile]) -> List[int]:
    return sorted({play_outcome(h, p)[1] for p in profiles})


def diff_report(h: ProductGame, report: NashReport, oracle_outcomes: Sequence[int],
                weak_outcomes: Optional[Sequence[int]] = None) -> Dict:
    """
    Compare the report with the oracle.

    `agree` and the two `_only` lists concern the characterized outcomes;
    `exact_agree` the full equilibrium set computed without enumeration.
    """
    solver = set(report.outcomes)
    oracle = set(oracle_outcomes)
    document = {
        "case": report.case,
        "agree": solver == oracle,
        "solver_only": [h.state_name(v) for v in sorted(solver - oracle)],
        "oracle_only": [h.state_name(v) for v in sorted(oracle - solver)],
        "exact_agree": set(report.equilibria) == oracle,
        "witnesses_nash": [is_nash_direct(h, w) for w in report.witnesses],
        "nash_witness_nash": is_nash_direct(h, report.nash_witness) if report.nash_witness else None,
    }
    if weak_outcomes is not None:
        document["weak_reading_outcomes"] = [h.state_name(v) for v in sorted(weak_outcomes)]
    return document


def profile_to_document(h: ProductGame, profile: Profile) -> List[Dict]:
    return [s.to_document(h) for s in profile]


def profile_from_document(h: ProductGame, document) -> Profile:
    """
    Read a witness-schema profile: [{player, actions: {state name: [action]}}, ...].
    """
    if isinstance(document, dict) and "witnesses" in document:
        document = document["witnesses"][0]
    if not isinstance(document, list) or len(document) != 2:
        raise ProfileSchemaError("profile must be a list of two strategies")
    names = {h.state_name(v): v for v in range(h.n_states)}
    strategies = []
    for expected, entry in zip((1, 2), document):
        if not isinstance(entry, dict) or entry.get("player") != expected or not isinstance(entry.get("actions"), dict):
            raise ProfileSchemaError(f"strategy {expected} needs 'player': {expected} and an 'actions' object")
        actions = {}
        for name, chosen in entry["actions"].items():
            if name not in names:
                raise ProfileSchemaError(f"unknown state {name!r}")
            chosen = [chosen] if isinstance(chosen, str) else chosen
            if not isinstance(chosen, list) or not all(isinstance(a, str) for a in chosen):
                raise ProfileSchemaError(f"actions at {name!r} must be a string or list of strings")
            actions[names[name]] = tuple(chosen)
        strategies.append(Strategy(expected, actions))
    return strategies[0], strategies[1]


def random_profile(h: ProductGame, rng: random.Random) -> Profile:
    """A uniformly chosen deterministic profile."""
    choices: Dict[int, Dict[int, Tuple[str, ...]]] = {1: {}, 2: {}}
    for v, edges in enumerate(h.succ):
        if edges:
            choices[h.owner[v]][v] = (rng.choice(edges)[0],)
    return Strategy(1, choices[1]), Strategy(2, choices[2])
