"""
Nash equilibria of product games with incomplete preferences.
Classifies how the players' preferences align and dispatches to the
matching characterization: maximal outcomes, maximal sure winning pairs,
cooperation analysis with a helper, or Pareto outcomes.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

from .config import DEFAULT_CONFIG, SolverConfig
from .errors import EmptyEquilibriumError, EmptyParetoError, InvalidProfileError, WrongAlignmentError
from .preorder import maximal
from .product import ProductGame, reachable_sinks, subgame
from .sure_winning import Strategy, attractor, max_sure_winning, value_map, worst_case_rank

logger = logging.getLogger(__name__)

Profile = Tuple[Strategy, Strategy]


class Alignment(str, Enum):
    FULLY_ALIGNED = "fully_aligned"
    COMPLETELY_OPPOSITE = "completely_opposite"
    PARTIALLY_ALIGNED = "partially_aligned"


class Attitude(str, Enum):
    COOPERATIVE = "cooperative"
    AGNOSTIC = "agnostic"


ALIGNED_MAXIMAL = "aligned-maximal"
OPPOSITE_SURE_WINNING = "opposite-sure-winning"
NO_COOPERATION = "partial-no-cooperation"
COOPERATIVE_HELPER = "partial-cooperative-helper"
AGNOSTIC_HELPER = "partial-agnostic-helper"
PARETO = "partial-pareto"

CASE_DESCRIPTIONS = {
    ALIGNED_MAXIMAL: "preferences fully aligned; equilibria end in maximal reachable outcomes",
    OPPOSITE_SURE_WINNING: "preferences completely opposite; equilibria are pairs of maximal sure winning strategies",
    NO_COOPERATION: "neither player needs cooperation; equilibria end in outcomes best for both",
    COOPERATIVE_HELPER: "one player needs cooperation and the cooperative helper plays maximal sure winning "
                        "while steering to the other's best outcome",
    AGNOSTIC_HELPER: "one player needs cooperation and the agnostic helper is restricted to its maximal "
                     "sure winning actions; the other plays maximal sure winning in the restricted game",
    PARETO: "both players need cooperation and both have an incentive; equilibria end in Pareto outcomes",
}


@dataclass
class NashReport:
    alignment: Alignment
    case: str
    k_star: Tuple[int, int]
    m: Tuple[int, int]
    needs: Tuple[bool, bool]
    outcomes: List[int]
    witnesses: List[Profile]
    incentives: Optional[Tuple[bool, bool]] = None
    pareto: List[int] = field(default_factory=list)
    helper: Optional[int] = None
    attitudes: Tuple[str, str] = ("agnostic", "agnostic")
    constant_sum: Optional[bool] = None
    permissive: Dict[int, Strategy] = field(default_factory=dict)
    diagnostics: List[str] = field(default_factory=list)
    equilibria: List[int] = field(default_factory=list)
    nash_witness: Optional[Profile] = None

    @property
    def description(self) -> str:
        return CASE_DESCRIPTIONS[self.case]

    def to_document(self, h: ProductGame) -> Dict:
        return {
            "alignment": self.alignment.value,
            "case": self.case,
            "k_star": list(self.k_star),
            "m": list(self.m),
            "needs": list(self.needs),
            "incentives": list(self.incentives) if self.incentives is not None else None,
            "helper": self.helper,
            "attitudes": list(self.attitudes),
            "constant_sum": self.constant_sum,
            "outcomes": [{"state": h.state_name(v), "rank1": h.rank1[v], "rank2": h.rank2[v]}
                         for v in self.outcomes],
            "pareto": [{"state": h.state_name(v), "rank1": h.rank1[v], "rank2": h.rank2[v]}
                       for v in self.pareto],
            "equilibria": [{"state": h.state_name(v), "rank1": h.rank1[v], "rank2": h.rank2[v]}
                           for v in self.equilibria],
            "witnesses": [[s.to_document(h) for s in profile] for profile in self.witnesses],
            "nash_witness": [s.to_document(h) for s in self.nash_witness] if self.nash_witness else None,
            "diagnostics": list(self.diagnostics),
        }

    def summary(self, h: ProductGame) -> str:
        lines = [
            f"alignment: {self.alignment.value}",
            f"characterization: {self.case} ({self.description})",
            f"guaranteed ranks k*: P1={self.k_star[0]} P2={self.k_star[1]}",
            f"best reachable ranks m: P1={self.m[0]} P2={self.m[1]}",
            f"needs cooperation: P1={self.needs[0]} P2={self.needs[1]}",
        ]
        if self.incentives is not None:
            lines.append(f"incentive to cooperate: P1={self.incentives[0]} P2={self.incentives[1]}")
        if self.helper is not None:
            lines.append(f"helper: P{self.helper} ({self.attitudes[self.helper - 1]})")
        if self.constant_sum is not None:
            lines.append(f"constant-sum ranks: {self.constant_sum}")
        lines.append(f"equilibrium outcomes ({len(self.outcomes)}):")
        for v in self.outcomes:
            lines.append(f"  {h.state_name(v)}  rank1={h.rank1[v]} rank2={h.rank2[v]}")
        lines.append(f"all Nash outcomes ({len(self.equilibria)}): "
                     + ", ".join(h.state_name(v) for v in self.equilibria))
        for note in self.diagnostics:
            lines.append(f"note: {note}")
        return "\n".join(lines) + "\n"


def classify_alignment(h: ProductGame, strict: bool = False, present_only: bool = False) -> Alignment:
    """
    Compare the players' preorders on the automaton states.

    Fully aligned means equal relations. Completely opposite means every
    weak preference of P1 is reversed for P2; with strict=True P2's relation
    must equal the inverse of P1's. The comparison runs over every automaton
    state unless present_only restricts it to those occurring in h.
    """
    e1, e2 = h.p1.order, h.p2.order
    states = h.q_present() if present_only else range(h.p1.n_states)
    pairs = [(q, r) for q in states for r in states]
    if all(e1.weakly(q, r) == e2.weakly(q, r) for q, r in pairs):
        return Alignment.FULLY_ALIGNED
    if strict:
        opposite = all(e1.weakly(q, r) == e2.weakly(r, q) for q, r in pairs)
    else:
        opposite = all(e2.weakly(r, q) for q, r in pairs if e1.weakly(q, r))
    return Alignment.COMPLETELY_OPPOSITE if opposite else Alignment.PARTIALLY_ALIGNED


def _classify(h: ProductGame, config: SolverConfig) -> Alignment:
    return classify_alignment(h, config.strict_opposite, config.present_states_only)


def best_reachable_rank(h: ProductGame, player: int) -> int:
    ranks = h.ranks(player)
    return min(ranks[v] for v in reachable_sinks(h))


def needs_cooperation(h: ProductGame, player: int) -> bool:
    """Whether the player's guarantee is worse than its best reachable outcome."""
    k_star, _ = max_sure_winning(h, player)
    return k_star > best_reachable_rank(h, player)


def restricted_game(h: ProductGame, player: int = 2) -> ProductGame:
    """
    Keep only `player`'s actions usable by some maximal sure winning strategy.

    An action survives iff its successor still guarantees rank at most k*;
    states no longer reachable are dropped. Ranks carry over.
    """
    k_star, _ = max_sure_winning(h, player)
    value = value_map(h, player)

    def keep(v: int, action: str) -> bool:
        return h.owner[v] != player or value[h.successor(v, action)] <= k_star

    return subgame(h, keep)


def pareto_states(h: ProductGame) -> List[int]:
    """Reachable sinks that no reachable sink beats in either player's rank."""
    sinks = reachable_sinks(h)
    # beaten in neither coordinate means attaining both minima
    m1 = min(h.rank1[v] for v in sinks)
    m2 = min(h.rank2[v] for v in sinks)
    return [v for v in sinks if h.rank1[v] == m1 and h.rank2[v] == m2]


def incentive_to_cooperate(h: ProductGame, k_stars: Optional[Sequence[int]] = None) -> Tuple[bool, bool]:
    """
    Per player, whether a Pareto outcome is at least as good as its guarantee.

    Raises:
        EmptyParetoError: if there is no Pareto outcome
    """
    pareto = pareto_states(h)
    if not pareto:
        raise EmptyParetoError("no reachable outcome is best for both players")
    if k_stars is None:
        k_stars = (max_sure_winning(h, 1)[0], max_sure_winning(h, 2)[0])
    p = pareto[0]
    return (not k_stars[0] < h.rank1[p], not k_stars[1] < h.rank2[p])


# ---------------------------------------------------------------------------
# Witness extraction
# ---------------------------------------------------------------------------

Allowed = Callable[[int, str], bool]


def _can_reach(h: ProductGame, targets: Sequence[int], allowed: Allowed) -> set:
    region = set(targets)
    for v in reversed(h.topological):
        if v in region:
            continue
        if any(w in region and allowed(v, a) for a, w in h.succ[v]):
            region.add(v)
    return region


def guided_profile(h: ProductGame, targets: Sequence[int], allowed: Optional[Allowed] = None) -> Profile:
    """
    Deterministic profile whose play ends in `targets`.

    On the way it takes the smallest allowed action that keeps a target
    reachable; elsewhere the smallest allowed action, else the smallest
    enabled one.
    """
    if allowed is None:
        def allowed(v: int, a: str) -> bool:
            return True
    region = _can_reach(h, targets, allowed)
    choices: Dict[int, Dict[int, Tuple[str, ...]]] = {1: {}, 2: {}}
    for v, edges in enumerate(h.succ):
        if not edges:
            continue
        permitted = [(a, w) for a, w in edges if allowed(v, a)]
        steering = [a for a, w in permitted if w in region]
        if v in region and steering:
            action = steering[0]
        elif permitted:
            action = permitted[0][0]
        else:
            action = edges[0][0]
        choices[h.owner[v]][v] = (action,)
    return Strategy(1, choices[1]), Strategy(2, choices[2])


def minimax_profile(h: ProductGame, player: int) -> Profile:
    """
    `player` moves to a successor of least guaranteed rank, the opponent to
    one of greatest; ties go to the smallest action.
    """
    value = value_map(h, player)
    choices: Dict[int, Dict[int, Tuple[str, ...]]] = {1: {}, 2: {}}
    for v, edges in enumerate(h.succ):
        if not edges:
            continue
        if h.owner[v] == player:
            action = min(edges, key=lambda e: value[e[1]])[0]
        else:
            action = max(edges, key=lambda e: value[e[1]])[0]
        choices[h.owner[v]][v] = (action,)
    return Strategy(1, choices[1]), Strategy(2, choices[2])


def play_outcome(h: ProductGame, profile: Profile) -> Tuple[List[int], int]:
    """Path of a profile from the initial state and its final sink."""
    path = [h.init]
    v = h.init
    while h.succ[v]:
        strategy = profile[h.owner[v] - 1]
        if v not in strategy.actions:
            raise InvalidProfileError(f"player {h.owner[v]} strategy undefined at {h.state_name(v)}")
        v_next = h.successor(v, strategy.choose(v))
        if v_next is None:
            raise InvalidProfileError(f"action {strategy.choose(v)!r} not enabled at {h.state_name(v)}")
        v = v_next
        path.append(v)
    return path, v


# ---------------------------------------------------------------------------
# Exact equilibrium set
# ---------------------------------------------------------------------------

def deviation_regions(h: ProductGame, q: int) -> Tuple[FrozenSet[int], FrozenSet[int]]:
    """
    Per player, the states from which it can force a sink whose automaton
    state it strictly prefers to q.
    """
    regions = []
    for player in (1, 2):
        order = h.automaton(player).order
        better = [t for t in h.sinks if order.strictly(h.q(t), q)]
        regions.append(attractor(h, player, better)[0])
    return regions[0], regions[1]


def _stable_region(h: ProductGame, targets: Sequence[int],
                   bad: Tuple[FrozenSet[int], FrozenSet[int]]) -> Set[int]:
    """
    States that can reach `targets` through states none of whose successors
    lets their owner force a strictly better sink.
    """
    region = set(targets)
    for v in reversed(h.topological):
        if v in region or not h.succ[v]:
            continue
        own_bad = bad[h.owner[v] - 1]
        if all(w not in own_bad for _, w in h.succ[v]) and any(w in region for _, w in h.succ[v]):
            region.add(v)
    return region


def equilibrium_outcomes(h: ProductGame) -> List[int]:
    """
    Every sink some deterministic Nash profile ends in.

    A sink s qualifies iff a path leads from the initial state to s such that
    at each state on it no successor lets the owner force a sink strictly
    better than s. Sinks sharing an automaton state share their deviation
    regions, so the work is one pair of attractors per automaton state.
    """
    classes: Dict[int, List[int]] = {}
    for v in reachable_sinks(h):
        classes.setdefault(h.q(v), []).append(v)
    outcomes = []
    for q, members in sorted(classes.items()):
        region = _stable_region(h, members, deviation_regions(h, q))
        if h.init not in region:
            continue
        inside = h.reachable(h.init, lambda v, a: h.successor(v, a) in region)
        outcomes.extend(v for v in inside if h.is_sink(v))
    logger.debug("%d of %d reachable sinks are Nash outcomes", len(outcomes), len(reachable_sinks(h)))
    return sorted(outcomes)


def equilibrium_witness(h: ProductGame, outcome: int) -> Profile:
    """
    Deterministic Nash profile ending in `outcome`.

    States that can still reach the outcome steer towards it; every other
    state keeps the opponent out of its deviation region when it can.

    Raises:
        ValueError: if no Nash profile ends in `outcome`
    """
    bad = deviation_regions(h, h.q(outcome))
    region = _stable_region(h, [outcome], bad)
    if h.init not in region:
        raise ValueError(f"no Nash profile ends in {h.state_name(outcome)}")
    choices: Dict[int, Dict[int, Tuple[str, ...]]] = {1: {}, 2: {}}
    for v, edges in enumerate(h.succ):
        if not edges:
            continue
        if v in region:
            action = next(a for a, w in edges if w in region)
        else:
            opponent_bad = bad[2 - h.owner[v]]
            action = next((a for a, w in edges if w not in opponent_bad), edges[0][0])
        choices[h.owner[v]][v] = (action,)
    return Strategy(1, choices[1]), Strategy(2, choices[2])


# ---------------------------------------------------------------------------
# Characterizations
# ---------------------------------------------------------------------------

@dataclass
class _Analysis:
    k_star: Tuple[int, int]
    permissive: Dict[int, Strategy]
    m: Tuple[int, int]
    needs: Tuple[bool, bool]


def _analyse(h: ProductGame) -> _Analysis:
    k1, pi1 = max_sure_winning(h, 1)
    k2, pi2 = max_sure_winning(h, 2)
    assert value_map(h, 1)[h.init] == k1, "value map disagrees with sure-winning level for P1"
    assert value_map(h, 2)[h.init] == k2, "value map disagrees with sure-winning level for P2"
    m = (best_reachable_rank(h, 1), best_reachable_rank(h, 2))
    return _Analysis(k_star=(k1, k2), permissive={1: pi1, 2: pi2}, m=m, needs=(k1 > m[0], k2 > m[1]))


def _permits(h: ProductGame, strategies: Sequence[Strategy]) -> Allowed:
    by_player = {s.player: s for s in strategies}

    def allowed(v: int, a: str) -> bool:
        s = by_player.get(h.owner[v])
        return s is None or s.allows(v, a)
    return allowed


def _report(h: ProductGame, alignment: Alignment, case: str, info: _Analysis, outcomes: List[int],
            witnesses: List[Profile], attitudes: Tuple[str, str], **extra) -> NashReport:
    if not outcomes:
        raise EmptyEquilibriumError(f"characterization {case} produced no equilibrium outcome")
    report = NashReport(alignment=alignment, case=case, k_star=info.k_star, m=info.m, needs=info.needs,
                        outcomes=sorted(outcomes), witnesses=witnesses, attitudes=attitudes,
                        permissive=dict(info.permissive), **extra)
    report.equilibria = equilibrium_outcomes(h)
    if report.equilibria:
        report.nash_witness = equilibrium_witness(h, report.equilibria[0])
    missing = sorted(set(report.equilibria) - set(report.outcomes))
    if missing:
        report.diagnostics.append(f"{len(missing)} Nash outcomes lie outside the characterization")
    unsound = sorted(set(report.outcomes) - set(report.equilibria))
    if unsound:
        report.diagnostics.append(f"{len(unsound)} characterized outcomes admit a profitable deviation")
    logger.info("case %s with %d equilibrium outcomes", case, len(report.outcomes))
    return report


def nash_aligned(h: ProductGame, config: SolverConfig = DEFAULT_CONFIG) -> NashReport:
    """Equilibrium outcomes of a fully aligned game: the maximal reachable sinks."""
    alignment = _classify(h, config)
    if alignment != Alignment.FULLY_ALIGNED:
        raise WrongAlignmentError(Alignment.FULLY_ALIGNED.value, alignment.value)
    info = _analyse(h)
    top = maximal_reachable_sinks(h, 1)
    return _report(h, alignment, ALIGNED_MAXIMAL, info, top, [guided_profile(h, top[:1])],
                   ("agnostic", "agnostic"))


def maximal_reachable_sinks(h: ProductGame, player: int) -> List[int]:
    """Reachable sinks whose automaton state is maximal among those of all reachable sinks."""
    sinks = reachable_sinks(h)
    top = set(maximal({h.q(v) for v in sinks}, h.automaton(player).order))
    return [v for v in sinks if h.q(v) in top]


def _constant_sum(h: ProductGame) -> bool:
    return h.kmax1 == h.kmax2 and all(r1 + r2 == h.kmax1 for r1, r2 in zip(h.rank1, h.rank2))


def nash_opposite(h: ProductGame, config: SolverConfig = DEFAULT_CONFIG) -> NashReport:
    """Equilibria of a completely opposite game: maximal sure winning pairs."""
    alignment = _classify(h, config)
    if alignment != Alignment.COMPLETELY_OPPOSITE:
        raise WrongAlignmentError(Alignment.COMPLETELY_OPPOSITE.value, alignment.value)
    info = _analyse(h)
    both = _permits(h, [info.permissive[1], info.permissive[2]])
    outcomes = [v for v in h.reachable(h.init, both) if h.is_sink(v)]
    witness = guided_profile(h, outcomes[:1], both)
    constant_sum = _constant_sum(h)
    diagnostics = []
    if not constant_sum:
        diagnostics.append("ranks are not constant-sum on this product")
    return _report(h, alignment, OPPOSITE_SURE_WINNING, info, outcomes, [witness], ("agnostic", "agnostic"),
                   constant_sum=constant_sum, diagnostics=diagnostics)


def _choose_helper(info: _Analysis, incentives: Optional[Tuple[bool, bool]]) -> int:
    if incentives is not None and incentives[0] != incentives[1]:
        return 1 if not incentives[0] else 2
    gap1 = info.k_star[0] - info.m[0]
    gap2 = info.k_star[1] - info.m[1]
    return 1 if gap1 < gap2 else 2


def _helped(h: ProductGame, alignment: Alignment, info: _Analysis, helper: int,
            attitudes: Tuple[str, str], **extra) -> NashReport:
    beneficiary = 3 - helper
    if attitudes[helper - 1] == Attitude.COOPERATIVE.value:
        allowed = _permits(h, [info.permissive[helper]])
        candidates = [v for v in h.reachable(h.init, allowed) if h.is_sink(v)]
        ranks = h.ranks(beneficiary)
        best = min(ranks[v] for v in candidates)
        outcomes = [v for v in candidates if ranks[v] == best]
        witness = guided_profile(h, outcomes[:1], allowed)
        return _report(h, alignment, COOPERATIVE_HELPER, info, outcomes, [witness], attitudes,
                       helper=helper, **extra)

    restricted = restricted_game(h, helper)
    k_b, pi_b = max_sure_winning(restricted, beneficiary)
    allowed = _permits(restricted, [pi_b])
    reached = [v for v in restricted.reachable(restricted.init, allowed) if restricted.is_sink(v)]
    outcomes = [h.index[restricted.states[v]] for v in reached]
    witness = _lift_profile(h, restricted, minimax_profile(restricted, beneficiary))
    diagnostics = list(extra.pop("diagnostics", []))
    diagnostics.append(f"P{beneficiary} guarantees rank {k_b} in the game restricted to P{helper}'s "
                       f"maximal sure winning actions")
    return _report(h, alignment, AGNOSTIC_HELPER, info, outcomes, [witness], attitudes,
                   helper=helper, diagnostics=diagnostics, **extra)


def _lift_profile(h: ProductGame, restricted: ProductGame, profile: Profile) -> Profile:
    """Map a restricted-game profile to h, taking the smallest action elsewhere."""
    lifted = []
    for strategy in profile:
        actions = {}
        for v, edges in enumerate(h.succ):
            if edges and h.owner[v] == strategy.player:
                inner = restricted.index.get(h.states[v])
                if inner is not None and inner in strategy.actions:
                    actions[v] = strategy.actions[inner]
                else:
                    actions[v] = (edges[0][0],)
        lifted.append(Strategy(strategy.player, actions))
    return lifted[0], lifted[1]


def nash_partial(h: ProductGame, attitude1: str = "agnostic", attitude2: str = "agnostic",
                 config: SolverConfig = DEFAULT_CONFIG) -> NashReport:
    """
    Equilibria of a partially aligned game, dispatched on who needs cooperation.

    Args:
        h: Product game
        attitude1: Attitude of P1 when it acts as helper
        attitude2: Attitude of P2 when it acts as helper
        config: Solver switches

    Returns:
        The report of the case that applies
    """
    alignment = _classify(h, config)
    if alignment != Alignment.PARTIALLY_ALIGNED:
        raise WrongAlignmentError(Alignment.PARTIALLY_ALIGNED.value, alignment.value)
    attitudes = (Attitude(attitude1).value, Attitude(attitude2).value)
    info = _analyse(h)
    sinks = reachable_sinks(h)

    if not any(info.needs):
        best = [v for v in sinks if h.rank1[v] == info.m[0] and h.rank2[v] == info.m[1]]
        if not best:
            raise EmptyEquilibriumError(
                f"no reachable outcome attains both best ranks {info.m} although neither player "
                f"needs cooperation")
        return _report(h, alignment, NO_COOPERATION, info, best, [guided_profile(h, best[:1])], attitudes)

    if info.needs[0] != info.needs[1]:
        helper = 2 if info.needs[0] else 1
        return _helped(h, alignment, info, helper, attitudes)

    pareto = pareto_states(h)
    incentives = None
    diagnostics = []
    if pareto:
        incentives = incentive_to_cooperate(h, info.k_star)
        if all(incentives):
            return _report(h, alignment, PARETO, info, pareto, [guided_profile(h, pareto[:1])], attitudes,
                           incentives=incentives, pareto=pareto)
        diagnostics.append("a player lacks incentive to reach the Pareto outcomes")
    else:
        diagnostics.append("no Pareto outcome; falling back to a helper")
    helper = _choose_helper(info, incentives)
    return _helped(h, alignment, info, helper, attitudes, incentives=incentives, pareto=pareto,
                   diagnostics=diagnostics)


def solve(h: ProductGame, attitudes: Tuple[str, str] = ("agnostic", "agnostic"),
          config: SolverConfig = DEFAULT_CONFIG) -> NashReport:
    """
    Classify the preferences and characterize the Nash equilibria.

    Args:
        h: Sink-terminating product game
        attitudes: Per player, cooperative or agnostic
        config: Solver switches

    Returns:
        The equilibrium report
    """
    alignment = _classify(h, config)
    logger.info("preferences are %s", alignment.value)
    if alignment == Alignment.FULLY_ALIGNED:
        return nash_aligned(h, config)
    if alignment == Alignment.COMPLETELY_OPPOSITE:
        return nash_opposite(h, config)
    return nash_partial(h, attitudes[0], attitudes[1], config)


def validate_profile(h: ProductGame, profile: Profile):
    for expected, strategy in zip((1, 2), profile):
        if strategy.player != expected:
            raise InvalidProfileError(f"strategy for player {expected} is tagged player {strategy.player}")
        for v, actions in strategy.actions.items():
            if not 0 <= v < h.n_states:
                raise InvalidProfileError(f"unknown state index {v}")
            if h.owner[v] != expected:
                raise InvalidProfileError(f"player {expected} strategy assigns {h.state_name(v)}, "
                                          f"owned by player {h.owner[v]}")
            if len(actions) != 1:
                raise InvalidProfileError(f"strategy is not deterministic at {h.state_name(v)}")
            if h.successor(v, actions[0]) is None:
                raise InvalidProfileError(f"action {actions[0]!r} is not enabled at {h.state_name(v)}")


def check_nash(h: ProductGame, profile: Profile, report: Optional[NashReport] = None,
               attitudes: Tuple[str, str] = ("agnostic", "agnostic"),
               config: SolverConfig = DEFAULT_CONFIG) -> Tuple[bool, str]:
    """
    Test a deterministic profile against the characterized equilibrium set.

    Args:
        h: Product game
        profile: (P1 strategy, P2 strategy)
        report: Result of solve(h); computed with `attitudes` when omitted
        attitudes: Per player, cooperative or agnostic
        config: Solver switches

    Returns:
        (verdict, explanation)
    """
    validate_profile(h, profile)
    if report is None:
        report = solve(h, attitudes, config)
    path, outcome = play_outcome(h, profile)
    name = h.state_name(outcome)

    if report.case == ALIGNED_MAXIMAL:
        if outcome in report.outcomes:
            return True, f"play ends in maximal reachable outcome {name}"
        return False, f"not maximal reachable: play ends in {name}, which a reachable outcome strictly beats"

    if report.case == OPPOSITE_SURE_WINNING:
        for player in (1, 2):
            worst = worst_case_rank(h, player, profile[player - 1])
            if worst != report.k_star[player - 1]:
                return False, (f"P{player} strategy is not maximal sure winning: it guarantees rank {worst}, "
                               f"best guarantee is {report.k_star[player - 1]}")
        return True, "both strategies are maximal sure winning"

    if report.case in (NO_COOPERATION, PARETO):
        if outcome in report.outcomes:
            return True, f"play ends in {name}, best for both players"
        return False, f"play ends in {name}, which does not attain ranks {report.m}"

    helper = report.helper
    beneficiary = 3 - helper
    worst = worst_case_rank(h, helper, profile[helper - 1])
    if worst != report.k_star[helper - 1]:
        return False, (f"helper P{helper} strategy is not maximal sure winning: it guarantees rank {worst}, "
                       f"best guarantee is {report.k_star[helper - 1]}")
    if report.case == COOPERATIVE_HELPER:
        if outcome in report.outcomes:
            return True, f"helper P{helper} steers to P{beneficiary}'s best outcome {name}"
        return False, f"play ends in {name}, not P{beneficiary}'s best outcome under the helper's guarantee"

    restricted = restricted_game(h, helper)
    if any(h.states[v] not in restricted.index for v in path):
        return False, f"play leaves the game restricted to P{helper}'s maximal sure winning actions"
    inner = profile[beneficiary - 1]
    mapped = Strategy(beneficiary, {restricted.index[h.states[v]]: a for v, a in inner.actions.items()
                                    if h.states[v] in restricted.index})
    k_b, _ = max_sure_winning(restricted, beneficiary)
    worst_b = worst_case_rank(restricted, beneficiary, mapped)
    if worst_b != k_b:
        return False, (f"P{beneficiary} strategy guarantees rank {worst_b} in the restricted game, "
                       f"best guarantee is {k_b}")
    return True, f"P{beneficiary} plays maximal sure winning in the restricted game; play ends in {name}"
