"""Exception types shared across the package."""


class TamlabError(Exception):
    """Base class for all tamlab errors."""


class OccupiedPosition(TamlabError):
    """A tile placement targeted a position that already holds a tile."""


class UnknownTileType(TamlabError):
    """A tile type was used that does not belong to the system's tile set."""


class IllegalAttachment(TamlabError):
    """An attachment was requested that the binding rules do not permit."""


class SeedOutsideWindow(TamlabError):
    """The seed assembly does not fit inside the requested window."""


class BudgetExceeded(TamlabError):
    """A bounded search outgrew its configured budget."""


class WrongTemperature(TamlabError):
    """An operation that requires temperature 1 was given another system."""


class InvalidRepetition(TamlabError):
    """The given index pair is not a same-tile-type repetition of the path."""


class DegenerateRange(TamlabError):
    """Forward generation of a periodic part overflowed its cap."""


class ProbeTooNarrow(TamlabError):
    """No eventually-periodic row description fits inside the probe."""


class SearchSpaceExceeded(TamlabError):
    """The fit search space is larger than the configured cap."""


class WindowNotNested(TamlabError):
    """The prediction window does not contain the fit window."""


class NegativeWindow(TamlabError):
    """A window with negative coordinates was given where only the first
    quadrant is meaningful."""


class TrivialFractal(TamlabError):
    """The fractal spec fails the non-triviality test."""


class ParseError(TamlabError):
    """A line-numbered syntax or validation error in an input file."""

    def __init__(self, line: int, message: str):
        self.line = line
        self.message = message
        super().__init__(f"line {line}: {message}")
