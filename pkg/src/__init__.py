"""
Nash equilibria of turn-based games with incomplete LTLf preferences.
"""
from .errors import PrefGameError
from .ltlf import parse_ltlf, ltlf_to_dfa
from .preorder import Preorder, maximal, minimal, rank_map
from .preference import parse_prefspec, build_preference_automaton, build_preference_automata
from .game import GameGraph, load_game, unroll_horizon
from .scenario import DroneScenarioConfig, build_drone_scenario
from .product import ProductGame, build_product
from .sure_winning import max_sure_winning
from .solve import NashReport, solve, check_nash
from .oracle import brute_force_nash

__all__ = [
    'PrefGameError', 'parse_ltlf', 'ltlf_to_dfa', 'Preorder', 'maximal', 'minimal', 'rank_map',
    'parse_prefspec', 'build_preference_automaton', 'build_preference_automata',
    'GameGraph', 'load_game', 'unroll_horizon', 'DroneScenarioConfig', 'build_drone_scenario',
    'ProductGame', 'build_product', 'max_sure_winning', 'NashReport', 'solve', 'check_nash',
    'brute_force_nash',
]
