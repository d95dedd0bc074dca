"""
Benchmarks for the preference-game solver.
Measures maximal-sure-winning scaling, the LTLf compilation oracle and the
threaded scenario sweep.
"""
import itertools
import os
import random
import sys
import time

import numpy as np

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))
from src.ltlf import dfa_accepts, holds, ltlf_to_dfa, mask_letter, parse_ltlf
from src.persistence import read_json, read_text
from src.preference import build_preference_automata, parse_prefspec
from src.random_instances import random_formula_text, reach_goal_chain
from src.scenario import load_scenario, scenario_ap
from src.sure_winning import max_sure_winning
from src.sweep import ScenarioSweep

SCENARIO_DIR = os.path.join(os.path.dirname(__file__), '..', 'scenarios')


def r_squared(x, y) -> float:
    """Coefficient of determination of the least-squares line through (x, y)."""
    slope, intercept = np.polyfit(x, y, 1)
    predicted = slope * np.asarray(x) + intercept
    residual = np.sum((np.asarray(y) - predicted) ** 2)
    total = np.sum((np.asarray(y) - np.mean(y)) ** 2)
    return 1.0 - residual / total if total > 0 else 1.0


def benchmark_max_sure_winning_scaling():
    """Wall time of max_sure_winning on unrolled chains of growing size."""
    print("Benchmark: Maximal sure winning scaling")
    print("=" * 50)

    sizes = []
    times = []
    for horizon in (20, 50, 100, 200, 400, 800, 1600):
        h = reach_goal_chain(length=50, horizon=horizon)
        start_time = time.perf_counter()
        for player in (1, 2):
            max_sure_winning(h, player)
        elapsed = time.perf_counter() - start_time
        sizes.append(h.n_states)
        times.append(elapsed)
        print(f"Horizon: {horizon:>5}  states: {h.n_states:>7}  kmax: {h.kmax1}  time: {elapsed:.3f}s")

    fit = r_squared(sizes, times)
    print(f"Linear fit R^2: {fit:.4f} ({'ok' if fit >= 0.95 else 'below 0.95'})")
    print("-" * 50)
    return fit


def benchmark_ltlf_oracle(formulas: int = 500, max_length: int = 5):
    """DFA acceptance against direct LTLf evaluation on every short word."""
    print("\nBenchmark: LTLf semantic oracle")
    print("=" * 50)

    rng = random.Random(2024)
    mismatches = 0
    words_checked = 0
    start_time = time.perf_counter()
    for _ in range(formulas):
        ap = ("a", "b", "c")[:rng.randint(1, 3)]
        f = parse_ltlf(random_formula_text(rng, 4, ap))
        d = ltlf_to_dfa(f, ap)
        letters = [mask_letter(mask, ap) for mask in range(1 << len(ap))]
        for n in range(max_length + 1):
            for word in itertools.product(letters, repeat=n):
                words_checked += 1
                if dfa_accepts(d, word) != holds(f, word):
                    mismatches += 1
                    print(f"Mismatch: {f} on {[sorted(letter) for letter in word]}")
    elapsed = time.perf_counter() - start_time

    print(f"Formulas: {formulas}")
    print(f"Words checked: {words_checked}")
    print(f"Mismatches: {mismatches}")
    print(f"Time: {elapsed:.2f}s")
    print("-" * 50)
    return mismatches


def benchmark_scenario_sweep(tmax: int = 6):
    """Start-cell sweep of scenario 1 with one and with four worker threads."""
    print("\nBenchmark: Scenario sweep")
    print("=" * 50)

    scenario = load_scenario(read_json(os.path.join(SCENARIO_DIR, "scenario1.json")), tmax)
    spec = parse_prefspec(read_text(os.path.join(SCENARIO_DIR, "aligned.prefltlf")))
    p1, p2 = build_preference_automata(spec, spec, scenario_ap(scenario))
    for workers in (1, 4):
        start_time = time.perf_counter()
        results = ScenarioSweep(scenario, p1, p2, workers=workers).run()
        elapsed = time.perf_counter() - start_time
        print(f"Workers: {workers}  cells: {len(results)}  time: {elapsed:.2f}s")
    print("-" * 50)


if __name__ == "__main__":
    benchmark_max_sure_winning_scaling()
    benchmark_ltlf_oracle()
    benchmark_scenario_sweep()

    print("\nBenchmarks completed!")
