"""
Sweep of drone B start cells for a delivery scenario.
Each cell is solved independently; worker threads share the immutable
preference automata.
"""
import logging
import threading
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .config import DEFAULT_CONFIG, SolverConfig
from .errors import PrefGameError
from .preference import PreferenceAutomaton
from .product import build_product
from .scenario import Cell, DroneScenarioConfig, build_drone_scenario
from .solve import best_reachable_rank, solve
from .sure_winning import max_sure_winning

logger = logging.getLogger(__name__)

INELIGIBLE = -1


@dataclass
class CellResult:
    """Solver summary for one B start cell."""
    cell: Cell
    m: Tuple[int, int]
    k_star: Tuple[int, int]
    needs: Tuple[bool, bool]
    case: Optional[str] = None
    outcome_ranks: List[Tuple[int, int]] = field(default_factory=list)
    product_states: int = 0
    error: Optional[str] = None

    @property
    def needs_text(self) -> str:
        return "(" + ", ".join("T" if n else "F" for n in self.needs) + ")"

    def to_document(self) -> Dict:
        return {
            "cell": list(self.cell),
            "m": list(self.m),
            "k_star": list(self.k_star),
            "needs": list(self.needs),
            "case": self.case,
            "outcome_ranks": [list(r) for r in self.outcome_ranks],
            "product_states": self.product_states,
            "error": self.error,
        }


def solve_cell(config: DroneScenarioConfig, cell: Cell, p1: PreferenceAutomaton, p2: PreferenceAutomaton,
               attitudes: Tuple[str, str] = ("agnostic", "agnostic"),
               solver: SolverConfig = DEFAULT_CONFIG) -> CellResult:
    h = build_product(build_drone_scenario(config.with_b_start(cell)), p1, p2, solver)
    try:
        report = solve(h, attitudes, solver)
    except PrefGameError as e:
        # k*, m and needs stay meaningful when no characterization applies
        k_star = (max_sure_winning(h, 1)[0], max_sure_winning(h, 2)[0])
        m = (best_reachable_rank(h, 1), best_reachable_rank(h, 2))
        needs = (k_star[0] > m[0], k_star[1] > m[1])
        return CellResult(cell, m, k_star, needs, product_states=h.n_states, error=str(e))
    return CellResult(
        cell=cell,
        m=report.m,
        k_star=report.k_star,
        needs=report.needs,
        case=report.case,
        outcome_ranks=sorted({(h.rank1[v], h.rank2[v]) for v in report.outcomes}),
        product_states=h.n_states,
    )


class ScenarioSweep:
    """
    Solve a scenario for every eligible B start cell.

    Cells are handed to `workers` threads from a shared list; results are
    collected under a lock and returned in the grid order of
    DroneScenarioConfig.eligible_b_starts.
    """

    def __init__(self, config: DroneScenarioConfig, p1: PreferenceAutomaton, p2: PreferenceAutomaton,
                 attitudes: Tuple[str, str] = ("agnostic", "agnostic"), workers: int = 1,
                 solver: SolverConfig = DEFAULT_CONFIG):
        self.config = config
        self.p1 = p1
        self.p2 = p2
        self.attitudes = attitudes
        self.workers = max(1, workers)
        self.solver = solver
        self.cells = config.eligible_b_starts()
        self._lock = threading.RLock()
        self._pending: List[Cell] = []
        self._results: Dict[Cell, CellResult] = {}
        self._failures: List[BaseException] = []

    def _next_cell(self) -> Optional[Cell]:
        with self._lock:
            return self._pending.pop() if self._pending else None

    def _worker(self):
        while True:
            cell = self._next_cell()
            if cell is None:
                return
            try:
                result = solve_cell(self.config, cell, self.p1, self.p2, self.attitudes, self.solver)
            except BaseException as e:
                with self._lock:
                    self._failures.append(e)
                return
            logger.info("cell %s: m=%s k*=%s needs=%s", cell, result.m, result.k_star, result.needs)
            with self._lock:
                self._results[cell] = result

    def run(self) -> List[CellResult]:
        self._pending = list(reversed(self.cells))
        self._results = {}
        self._failures = []
        if self.workers == 1:
            self._worker()
        else:
            threads = [threading.Thread(target=self._worker, daemon=True) for _ in range(self.workers)]
            for t in threads:
                t.start()
            for t in threads:
                t.join()
        if self._failures:
            raise self._failures[0]
        return [self._results[c] for c in self.cells]


def grid_rows(config: DroneScenarioConfig, results: List[CellResult], value) -> List[List]:
    """
    Cell map with the top row first; cells without a result hold -1.

    Args:
        config: Scenario whose grid is rendered
        results: Sweep results
        value: CellResult -> cell content
    """
    by_cell = {r.cell: r for r in results}
    rows = []
    for y in reversed(range(config.height)):
        row = []
        for x in range(config.width):
            result = by_cell.get((x, y))
            row.append(value(result) if result is not None else INELIGIBLE)
        rows.append(row)
    return rows
