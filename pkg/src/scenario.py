"""
Two-drone package delivery on a gridworld, built as a clocked game graph.
Drone A is player 1 and moves first; drone B is player 2.
"""
import logging
from collections import deque
from dataclasses import dataclass, replace
from typing import Any, Dict, List, Mapping, NamedTuple, Optional, Tuple

from .errors import ScenarioConfigError
from .game import GameGraph

logger = logging.getLogger(__name__)

Cell = Tuple[int, int]

MOVES = {"N": (0, 1), "E": (1, 0), "S": (0, -1), "W": (-1, 0)}
WAITING = "-"
DELIVERED = "D"
DRONES = ("A", "B")
OWNER = {"A": 1, "B": 2}


def _cell(value) -> Cell:
    return (int(value[0]), int(value[1]))


@dataclass(frozen=True)
class DroneScenarioConfig:
    """
    Gridworld layout and time budget.

    Cells are (x, y) with N increasing y. A wall is a pair of adjacent cells
    that cannot be crossed between; obstacles cannot be entered. Package i
    waits at pickups[i] and counts as delivered at destinations[i].
    """
    width: int
    height: int
    pickups: Tuple[Cell, ...]
    destinations: Tuple[Cell, ...]
    a_start: Cell
    b_start: Cell
    tmax: int
    walls: Tuple[Tuple[Cell, Cell], ...] = ()
    obstacles: Tuple[Cell, ...] = ()
    forbidden_starts: Tuple[Cell, ...] = ()
    name: str = "scenario"

    @classmethod
    def from_document(cls, document: Mapping[str, Any]) -> "DroneScenarioConfig":
        errors = [f"missing field '{key}'" for key in
                  ("width", "height", "pickups", "destinations", "a_start", "b_start", "tmax")
                  if key not in document]
        if errors:
            raise ScenarioConfigError(errors)
        try:
            config = cls(
                width=int(document["width"]),
                height=int(document["height"]),
                pickups=tuple(_cell(c) for c in document["pickups"]),
                destinations=tuple(_cell(c) for c in document["destinations"]),
                a_start=_cell(document["a_start"]),
                b_start=_cell(document["b_start"]),
                tmax=int(document["tmax"]),
                walls=tuple((_cell(a), _cell(b)) for a, b in document.get("walls", [])),
                obstacles=tuple(_cell(c) for c in document.get("obstacles", [])),
                forbidden_starts=tuple(_cell(c) for c in document.get("forbidden_starts", [])),
                name=str(document.get("name", "scenario")),
            )
        except (TypeError, ValueError, IndexError) as e:
            raise ScenarioConfigError([f"malformed field: {e}"]) from e
        config.validate()
        return config

    def to_document(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "width": self.width,
            "height": self.height,
            "pickups": [list(c) for c in self.pickups],
            "destinations": [list(c) for c in self.destinations],
            "a_start": list(self.a_start),
            "b_start": list(self.b_start),
            "tmax": self.tmax,
            "walls": [[list(a), list(b)] for a, b in self.walls],
            "obstacles": [list(c) for c in self.obstacles],
            "forbidden_starts": [list(c) for c in self.forbidden_starts],
        }

    def with_b_start(self, cell: Cell) -> "DroneScenarioConfig":
        return replace(self, b_start=tuple(cell))

    def with_tmax(self, tmax: int) -> "DroneScenarioConfig":
        return replace(self, tmax=tmax)

    def in_bounds(self, cell: Cell) -> bool:
        return 0 <= cell[0] < self.width and 0 <= cell[1] < self.height

    def validate(self):
        errors: List[str] = []
        if self.width < 1 or self.height < 1:
            errors.append("grid must be at least 1x1")
        if self.tmax < 0:
            errors.append("tmax must be non-negative")
        if not self.pickups:
            errors.append("at least one package is required")
        if len(self.pickups) != len(self.destinations):
            errors.append("pickups and destinations must have the same length")
        obstacles = set(self.obstacles)
        named = [("pickup", c) for c in self.pickups] + [("destination", c) for c in self.destinations]
        named += [("drone A start", self.a_start), ("drone B start", self.b_start)]
        for what, c in named:
            if not self.in_bounds(c):
                errors.append(f"{what} {c} is outside the {self.width}x{self.height} grid")
            elif c in obstacles:
                errors.append(f"{what} {c} is on an obstacle")
        for c in self.obstacles:
            if not self.in_bounds(c):
                errors.append(f"obstacle {c} is outside the grid")
        for a, b in self.walls:
            if abs(a[0] - b[0]) + abs(a[1] - b[1]) != 1:
                errors.append(f"wall {a}-{b} does not separate adjacent cells")
        if errors:
            raise ScenarioConfigError(errors)

    def eligible_b_starts(self) -> List[Cell]:
        """Cells drone B may start from, in row-major order from the top row."""
        blocked = set(self.obstacles) | set(self.forbidden_starts) | {self.a_start}
        return [(x, y) for y in reversed(range(self.height)) for x in range(self.width)
                if (x, y) not in blocked]


class DroneState(NamedTuple):
    pos_a: Cell
    pos_b: Cell
    turn: str
    acted: bool
    carriers: Tuple[str, ...]
    alive_a: bool
    alive_b: bool
    clock: int

    def pos(self, drone: str) -> Cell:
        return self.pos_a if drone == "A" else self.pos_b

    def alive(self, drone: str) -> bool:
        return self.alive_a if drone == "A" else self.alive_b

    def __str__(self):
        alive = ("A" if self.alive_a else "a") + ("B" if self.alive_b else "b")
        return (f"A{self.pos_a[0]}.{self.pos_a[1]}B{self.pos_b[0]}.{self.pos_b[1]}"
                f"|{self.turn}{'*' if self.acted else ''}|{''.join(self.carriers)}|{alive}|t{self.clock}")


def _other(drone: str) -> str:
    return "B" if drone == "A" else "A"


class _Dynamics:
    def __init__(self, config: DroneScenarioConfig):
        self.config = config
        self.obstacles = frozenset(config.obstacles)
        self.walls = frozenset(frozenset(w) for w in config.walls)

    def move(self, cell: Cell, direction: str) -> Cell:
        dx, dy = MOVES[direction]
        target = (cell[0] + dx, cell[1] + dy)
        if (not self.config.in_bounds(target) or target in self.obstacles
                or frozenset((cell, target)) in self.walls):
            return cell
        return target

    def deliver(self, state: DroneState) -> DroneState:
        carriers = list(state.carriers)
        for i, holder in enumerate(carriers):
            if holder in DRONES and state.pos(holder) == self.config.destinations[i]:
                carriers[i] = DELIVERED
        return state._replace(carriers=tuple(carriers))

    def instant_actions(self, state: DroneState) -> Dict[str, DroneState]:
        drone = state.turn
        other = _other(drone)
        here = state.pos(drone)
        result = {}
        if any(holder == WAITING and self.config.pickups[i] == here for i, holder in enumerate(state.carriers)):
            carriers = tuple(drone if holder == WAITING and self.config.pickups[i] == here else holder
                             for i, holder in enumerate(state.carriers))
            result["pick"] = state._replace(carriers=carriers, acted=True)
        if state.alive(other):
            there = state.pos(other)
            if max(abs(here[0] - there[0]), abs(here[1] - there[1])) <= 1:
                for i, holder in enumerate(state.carriers):
                    if holder == drone:
                        carriers = state.carriers[:i] + (other,) + state.carriers[i + 1:]
                        result[f"give{i + 1}"] = state._replace(carriers=carriers, acted=True)
            if here == there:
                killed = {"alive_b": False} if drone == "A" else {"alive_a": False}
                result["attack"] = state._replace(acted=True, **killed)
        return {name: self.deliver(s) for name, s in result.items()}

    def timed_actions(self, state: DroneState) -> Dict[str, DroneState]:
        drone = state.turn
        after = {"turn": _other(drone), "acted": False, "clock": state.clock + 1}
        result = {"pass": state._replace(**after)}
        if state.alive(drone):
            for direction in MOVES:
                cell = self.move(state.pos(drone), direction)
                moved = {"pos_a": cell} if drone == "A" else {"pos_b": cell}
                result[direction] = state._replace(**moved, **after)
        return {name: self.deliver(s) for name, s in result.items()}

    def successors(self, state: DroneState) -> Dict[str, DroneState]:
        if state.clock >= self.config.tmax:
            return {}
        result = {}
        if not state.acted and state.alive(state.turn):
            result.update(self.instant_actions(state))
        result.update(self.timed_actions(state))
        return {f"{state.turn}:{name}": s for name, s in result.items()}


def initial_state(config: DroneScenarioConfig) -> DroneState:
    state = DroneState(
        pos_a=tuple(config.a_start),
        pos_b=tuple(config.b_start),
        turn="A",
        acted=False,
        carriers=tuple(WAITING for _ in config.pickups),
        alive_a=True,
        alive_b=True,
        clock=0,
    )
    return _Dynamics(config).deliver(state)


def scenario_ap(config: DroneScenarioConfig) -> Tuple[str, ...]:
    return tuple(f"d{i + 1}" for i in range(len(config.destinations)))


def scenario_actions(config: DroneScenarioConfig) -> Dict[str, Tuple[int, int]]:
    actions = {}
    for drone in DRONES:
        for name in list(MOVES) + ["pass"]:
            actions[f"{drone}:{name}"] = (OWNER[drone], 1)
        for name in ["pick", "attack"] + [f"give{i + 1}" for i in range(len(config.pickups))]:
            actions[f"{drone}:{name}"] = (OWNER[drone], 0)
    return actions


def build_drone_scenario(config: DroneScenarioConfig) -> GameGraph:
    """
    Build the reachable clocked game graph of a delivery scenario.

    In each turn the drone to move may take one instantaneous action (pick,
    give_i or attack, cost 0) and then must take a timed action (a compass
    move or pass, cost 1) that hands the turn over. Blocked moves leave the
    drone in place. States with clock equal to tmax are sinks.

    Args:
        config: Valid scenario configuration

    Returns:
        Game graph over DroneState states with labels d_i for delivered packages
    """
    config.validate()
    dynamics = _Dynamics(config)
    init = initial_state(config)
    owner: Dict[DroneState, int] = {init: OWNER[init.turn]}
    trans: Dict[DroneState, Dict[str, DroneState]] = {}
    queue = deque([init])
    while queue:
        state = queue.popleft()
        row = dynamics.successors(state)
        if row:
            trans[state] = row
        for target in row.values():
            if target not in owner:
                owner[target] = OWNER[target.turn]
                queue.append(target)
    ap = scenario_ap(config)
    labels = {s: frozenset(ap[i] for i, holder in enumerate(s.carriers) if holder == DELIVERED) for s in owner}
    logger.info("scenario %s with B at %s has %d game states", config.name, config.b_start, len(owner))
    return GameGraph(ap=ap, owner=owner, labels=labels, actions=scenario_actions(config), trans=trans, init=init)


def load_scenario(document: Mapping[str, Any], tmax: Optional[int] = None,
                  b_start: Optional[Cell] = None) -> DroneScenarioConfig:
    """Scenario config from JSON with optional overrides."""
    config = DroneScenarioConfig.from_document(document)
    if tmax is not None:
        config = config.with_tmax(tmax)
    if b_start is not None:
        config = config.with_b_start(b_start)
    config.validate()
    return config
