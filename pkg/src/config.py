"""
Configuration for the solver and the command-line front end.
"""
import os
from dataclasses import dataclass, field
from typing import List, Optional


@dataclass(frozen=True)
class SolverConfig:
    """Size bounds and solver switches.

    Args:
        max_dfa_states: bound on states of a single compiled DFA
        max_automaton_states: bound on the synchronous product of all DFAs
        max_product_states: bound on the materialized product game
        oracle_max_states: largest product the brute-force oracle accepts
        oracle_max_profiles: largest number of profiles the oracle enumerates
        strict_opposite: classify as completely opposite only if E2 equals
            the inverse of E1
        present_states_only: compare the preorders only on automaton states
            that occur in the product instead of on every automaton state
    """
    max_dfa_states: int = 10_000
    max_automaton_states: int = 50_000
    max_product_states: int = 2_000_000
    oracle_max_states: int = 16
    oracle_max_profiles: int = 250_000
    strict_opposite: bool = False
    present_states_only: bool = False


DEFAULT_CONFIG = SolverConfig()

EMPTY_POLICIES = ("bottom", "top", "incomparable")
ATTITUDES = ("cooperative", "agnostic")


@dataclass
class RunConfig:
    """Everything one CLI invocation needs."""
    command: str
    game: Optional[str] = None
    scenario: Optional[str] = None
    spec: Optional[str] = None
    spec1: Optional[str] = None
    spec2: Optional[str] = None
    profile: Optional[str] = None
    ap: Optional[List[str]] = None
    empty_policy1: str = "bottom"
    empty_policy2: str = "bottom"
    attitude1: str = "agnostic"
    attitude2: str = "agnostic"
    b_start: Optional[List[int]] = None
    tmax: Optional[int] = None
    out: str = "out"
    seed: int = 0
    workers: int = 1
    weak_deviation: bool = False
    oracle: bool = False
    export: List[str] = field(default_factory=lambda: ["dot", "json", "csv"])
    solver: SolverConfig = DEFAULT_CONFIG

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        """Build from an argparse namespace and validate referenced files."""
        solver = SolverConfig(
            max_product_states=getattr(args, "max_states", None) or DEFAULT_CONFIG.max_product_states,
            strict_opposite=getattr(args, "strict_opposite", False),
            present_states_only=getattr(args, "present_states_only", False),
        )
        ap = getattr(args, "ap", None)
        b_start = getattr(args, "b_start", None)
        config = cls(
            command=args.command,
            game=getattr(args, "game", None),
            scenario=getattr(args, "scenario", None),
            spec=getattr(args, "spec", None),
            spec1=getattr(args, "spec1", None),
            spec2=getattr(args, "spec2", None),
            profile=getattr(args, "profile", None),
            ap=[name.strip() for name in ap.split(",") if name.strip()] if ap else None,
            empty_policy1=getattr(args, "empty_policy1", None) or getattr(args, "empty_policy", None) or "bottom",
            empty_policy2=getattr(args, "empty_policy2", None) or getattr(args, "empty_policy", None) or "bottom",
            attitude1=getattr(args, "attitude1", "agnostic"),
            attitude2=getattr(args, "attitude2", "agnostic"),
            b_start=[int(c) for c in b_start.split(",")] if b_start else None,
            tmax=getattr(args, "tmax", None),
            out=getattr(args, "out", "out"),
            seed=getattr(args, "seed", 0),
            workers=getattr(args, "workers", 1),
            weak_deviation=getattr(args, "weak_deviation", False),
            oracle=getattr(args, "oracle", False),
            export=[e.strip() for e in getattr(args, "export", "dot,json,csv").split(",")],
            solver=solver,
        )
        config.validate()
        return config

    def validate(self):
        missing = [path for path in (self.game, self.scenario, self.spec, self.spec1, self.spec2, self.profile)
                   if path is not None and not os.path.exists(path)]
        if missing:
            raise FileNotFoundError("referenced files do not exist: " + ", ".join(missing))
        if self.b_start is not None and len(self.b_start) != 2:
            raise ValueError("--b-start expects two comma-separated integers")
