"""
Exception hierarchy for the preference-game solver.
Every error carries the process exit code the CLI reports for it.
"""
from typing import List, Optional, Sequence


class PrefGameError(Exception):
    """Base class of all domain errors."""
    exit_code = 2


class LtlfSyntaxError(PrefGameError):
    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")


class CapacityError(PrefGameError):
    exit_code = 5

    def __init__(self, what: str, bound: int):
        self.what = what
        self.bound = bound
        super().__init__(f"{what} exceeds the configured bound of {bound} states")


class PrefSpecError(PrefGameError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class PreferenceInconsistencyError(PrefGameError):
    """The closure of the declared constraints contradicts one of them."""

    def __init__(self, constraint, message: str):
        self.constraint = constraint
        super().__init__(f"inconsistent constraint {constraint}: {message}")


class GameValidationError(PrefGameError):
    """All invariant violations found while ingesting a game document."""

    def __init__(self, errors: Sequence[str]):
        self.errors: List[str] = list(errors)
        super().__init__("invalid game: " + "; ".join(self.errors))


class ScenarioConfigError(PrefGameError):
    def __init__(self, errors: Sequence[str]):
        self.errors: List[str] = list(errors)
        super().__init__("invalid scenario config: " + "; ".join(self.errors))


class NonTerminatingProductError(PrefGameError):
    exit_code = 3

    def __init__(self, cycle):
        self.cycle = list(cycle)
        shown = " -> ".join(str(v) for v in self.cycle[:8])
        if len(self.cycle) > 8:
            shown += " -> ..."
        super().__init__(f"product game has a reachable cycle avoiding sinks: {shown}")


class SemiAutomatonMismatchError(PrefGameError):
    exit_code = 4


class InvalidPathError(PrefGameError):
    pass


class InvalidProfileError(PrefGameError):
    pass


class ProfileSchemaError(PrefGameError):
    pass


class SizeGuardError(PrefGameError):
    exit_code = 5


class WrongAlignmentError(PrefGameError):
    exit_code = 6

    def __init__(self, expected: str, actual: str):
        self.expected = expected
        self.actual = actual
        super().__init__(f"expected {expected} preferences, game is {actual}")


class EmptyEquilibriumError(PrefGameError):
    exit_code = 6


class EmptyParetoError(PrefGameError):
    exit_code = 6
