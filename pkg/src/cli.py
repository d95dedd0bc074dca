"""
Command-line front end: compile, solve, scenario, check and oracle.
"""
import argparse
import logging
import os
import random
import sys
from typing import List, Optional, Tuple

from .config import ATTITUDES, EMPTY_POLICIES, RunConfig
from .errors import PrefGameError
from .export import automaton_to_dot, automaton_to_json, dfa_to_dot, dfa_to_json, product_to_dot, product_to_json
from .game import GameGraph, load_game
from .ltlf import atoms, ltlf_to_dfa
from .oracle import (brute_force_nash, diff_report, is_nash_direct, nash_outcomes, profile_from_document,
                     profile_to_document, random_profile)
from .persistence import read_json, read_text, write_csv, write_json, write_text
from .preference import PrefSpec, build_preference_automata, build_preference_automaton, parse_prefspec
from .product import ProductGame, build_product
from .scenario import build_drone_scenario, load_scenario, scenario_ap
from .solve import check_nash, solve
from .sweep import ScenarioSweep, grid_rows

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NOT_NASH = 1
EXIT_USAGE = 2


def _add_preference_flags(parser: argparse.ArgumentParser):
    parser.add_argument("--spec", help="PrefSpec file used for both players unless overridden")
    parser.add_argument("--spec1", help="PrefSpec file of player 1")
    parser.add_argument("--spec2", help="PrefSpec file of player 2")
    parser.add_argument("--empty-policy", choices=EMPTY_POLICIES, help="empty-outcome policy for both players")
    parser.add_argument("--empty-policy1", choices=EMPTY_POLICIES)
    parser.add_argument("--empty-policy2", choices=EMPTY_POLICIES)
    parser.add_argument("--attitude1", choices=ATTITUDES, default="agnostic")
    parser.add_argument("--attitude2", choices=ATTITUDES, default="agnostic")
    parser.add_argument("--strict-opposite", action="store_true",
                        help="completely opposite only when E2 is exactly the inverse of E1")
    parser.add_argument("--present-states-only", action="store_true",
                        help="classify alignment on the automaton states occurring in the product")
    parser.add_argument("--max-states", type=int, help="bound on product game states")


def _add_game_flags(parser: argparse.ArgumentParser):
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--game", help="game JSON file")
    source.add_argument("--scenario", help="drone scenario JSON file")
    parser.add_argument("--tmax", type=int, help="override the scenario time budget")
    parser.add_argument("--b-start", help="drone B start cell as x,y")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="run_solver.py",
        description="Nash equilibria of turn-based games with incomplete LTLf preferences")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG")
    common.add_argument("--out", default="out", help="output directory")
    common.add_argument("--export", default="dot,json,csv", help="comma-separated subset of dot,json,csv")
    common.add_argument("--seed", type=int, default=0)
    commands = parser.add_subparsers(dest="command", required=True)

    compile_cmd = commands.add_parser("compile", parents=[common], help="compile a PrefSpec into a preference automaton")
    compile_cmd.add_argument("spec", help="PrefSpec file")
    compile_cmd.add_argument("--ap", help="comma-separated propositions (default: atoms of the formulas)")
    compile_cmd.add_argument("--empty-policy", choices=EMPTY_POLICIES, default="bottom")

    solve_cmd = commands.add_parser("solve", parents=[common], help="characterize the Nash equilibria of a game")
    _add_game_flags(solve_cmd)
    _add_preference_flags(solve_cmd)
    solve_cmd.add_argument("--oracle", action="store_true", help="also compare against the brute-force oracle")

    scenario_cmd = commands.add_parser("scenario", parents=[common], help="sweep drone B start cells of a scenario")
    scenario_cmd.add_argument("--scenario", required=True, help="drone scenario JSON file")
    scenario_cmd.add_argument("--tmax", type=int, help="override the scenario time budget")
    scenario_cmd.add_argument("--workers", type=int, default=1, help="worker threads")
    _add_preference_flags(scenario_cmd)

    check_cmd = commands.add_parser("check", parents=[common], help="test whether a profile is a Nash equilibrium")
    _add_game_flags(check_cmd)
    _add_preference_flags(check_cmd)
    check_cmd.add_argument("--profile", help="profile JSON (a random profile from --seed when omitted)")
    check_cmd.add_argument("--oracle", action="store_true", help="also report the direct deviation test")

    oracle_cmd = commands.add_parser("oracle", parents=[common], help="enumerate Nash profiles by brute force")
    _add_game_flags(oracle_cmd)
    _add_preference_flags(oracle_cmd)
    oracle_cmd.add_argument("--weak-deviation", action="store_true",
                            help="also run the reading where weakly preferred deviations count")
    return parser


def configure_logging(verbosity: int):
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")


# ---------------------------------------------------------------------------
# Loading
# ---------------------------------------------------------------------------

def _load_specs(config: RunConfig) -> Tuple[PrefSpec, PrefSpec]:
    path1 = config.spec1 or config.spec
    path2 = config.spec2 or path1
    if path1 is None:
        raise FileNotFoundError("a preference specification is required (--spec or --spec1/--spec2)")
    return parse_prefspec(read_text(path1)), parse_prefspec(read_text(path2))


def _load_game(config: RunConfig) -> GameGraph:
    if config.game is not None:
        return load_game(read_json(config.game))
    b_start = tuple(config.b_start) if config.b_start else None
    return build_drone_scenario(load_scenario(read_json(config.scenario), config.tmax, b_start))


def _load_product(config: RunConfig) -> ProductGame:
    g = _load_game(config)
    spec1, spec2 = _load_specs(config)
    p1, p2 = build_preference_automata(spec1, spec2, g.ap, config.empty_policy1, config.empty_policy2,
                                       config.solver)
    return build_product(g, p1, p2, config.solver)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_compile(config: RunConfig) -> int:
    spec = parse_prefspec(read_text(config.spec))
    ap = config.ap or sorted(set().union(*(atoms(f) for f in spec.alternatives)))
    p = build_preference_automaton(spec, ap, config.empty_policy1, config.solver)
    written = []
    if "dot" in config.export:
        written.append(write_text(os.path.join(config.out, "automaton.dot"), automaton_to_dot(p)))
    if "json" in config.export:
        written.append(write_json(os.path.join(config.out, "automaton.json"), automaton_to_json(p)))
    for i, f in enumerate(spec.alternatives):
        d = ltlf_to_dfa(f, ap, max_states=config.solver.max_dfa_states)
        if "dot" in config.export:
            written.append(write_text(os.path.join(config.out, f"alternative_{i}.dot"), dfa_to_dot(d, f"phi{i}")))
        if "json" in config.export:
            written.append(write_json(os.path.join(config.out, f"alternative_{i}.json"), dfa_to_json(d)))
    print(f"Compiled {spec.size} alternatives over {list(ap)} into {p.n_states} automaton states")
    for path in written:
        print(f"Wrote {path}")
    return EXIT_OK


def cmd_solve(config: RunConfig) -> int:
    h = _load_product(config)
    report = solve(h, (config.attitude1, config.attitude2), config.solver)
    summary = report.summary(h)
    print(summary, end="")
    write_text(os.path.join(config.out, "summary.txt"), summary)
    if "json" in config.export:
        write_json(os.path.join(config.out, "report.json"), report.to_document(h))
        write_json(os.path.join(config.out, "product.json"), product_to_json(h))
    if "dot" in config.export:
        write_text(os.path.join(config.out, "product.dot"), product_to_dot(h, report))
    if config.oracle:
        oracle_outcomes = nash_outcomes(h, brute_force_nash(h, config=config.solver))
        diff = diff_report(h, report, oracle_outcomes)
        write_json(os.path.join(config.out, "oracle_diff.json"), diff)
        print(f"oracle agrees: {diff['agree']} (all Nash outcomes: {diff['exact_agree']})")
    print(f"Wrote report to {config.out}")
    return EXIT_OK


def cmd_scenario(config: RunConfig) -> int:
    scenario = load_scenario(read_json(config.scenario), config.tmax)
    spec1, spec2 = _load_specs(config)
    p1, p2 = build_preference_automata(spec1, spec2, scenario_ap(scenario), config.empty_policy1,
                                       config.empty_policy2, config.solver)
    sweep = ScenarioSweep(scenario, p1, p2, (config.attitude1, config.attitude2), config.workers, config.solver)
    results = sweep.run()
    if "csv" in config.export:
        write_csv(os.path.join(config.out, "rank_map.csv"), grid_rows(scenario, results, lambda r: r.m[0]))
        write_csv(os.path.join(config.out, "guarantee_map.csv"),
                  grid_rows(scenario, results, lambda r: r.k_star[0]))
        write_csv(os.path.join(config.out, "cooperation_map.csv"),
                  grid_rows(scenario, results, lambda r: r.needs_text))
    if "json" in config.export:
        write_json(os.path.join(config.out, "sweep.json"),
                   {"scenario": scenario.to_document(), "cells": [r.to_document() for r in results]})
    for row in grid_rows(scenario, results, lambda r: r.m[0]):
        print(" ".join(f"{v:>2}" for v in row))
    print(f"Swept {len(results)} start cells of {scenario.name}; wrote maps to {config.out}")
    return EXIT_OK


def cmd_check(config: RunConfig) -> int:
    h = _load_product(config)
    if config.profile is not None:
        profile = profile_from_document(h, read_json(config.profile))
    else:
        profile = random_profile(h, random.Random(config.seed))
    verdict, explanation = check_nash(h, profile, attitudes=(config.attitude1, config.attitude2),
                                      config=config.solver)
    print(f"{'Nash equilibrium' if verdict else 'not a Nash equilibrium'}: {explanation}")
    if config.oracle:
        print(f"direct deviation test: {'Nash' if is_nash_direct(h, profile) else 'not Nash'}")
    return EXIT_OK if verdict else EXIT_NOT_NASH


def cmd_oracle(config: RunConfig) -> int:
    h = _load_product(config)
    report = solve(h, (config.attitude1, config.attitude2), config.solver)
    profiles = brute_force_nash(h, config=config.solver)
    weak = None
    if config.weak_deviation:
        weak = nash_outcomes(h, brute_force_nash(h, weak=True, config=config.solver))
    diff = diff_report(h, report, nash_outcomes(h, profiles), weak)
    write_json(os.path.join(config.out, "nash_profiles.json"), [profile_to_document(h, p) for p in profiles])
    write_json(os.path.join(config.out, "oracle_diff.json"), diff)
    print(f"{len(profiles)} Nash profiles; characterization agrees: {diff['agree']}; "
          f"all Nash outcomes agree: {diff['exact_agree']}")
    if diff["solver_only"]:
        print(f"  characterized only: {', '.join(diff['solver_only'])}")
    if diff["oracle_only"]:
        print(f"  oracle only: {', '.join(diff['oracle_only'])}")
    return EXIT_OK


COMMANDS = {
    "compile": cmd_compile,
    "solve": cmd_solve,
    "scenario": cmd_scenario,
    "check": cmd_check,
    "oracle": cmd_oracle,
}


def main(argv: Optional[List[str]] = None) -> int:
    """
    Run one subcommand.

    Returns:
        0 on success, 1 when check rejects a profile, otherwise the exit
        code of the domain error raised
    """
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)
    try:
        config = RunConfig.from_args(args)
        return COMMANDS[config.command](config)
    except PrefGameError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    except (FileNotFoundError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
