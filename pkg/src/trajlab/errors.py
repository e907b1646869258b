"""Exception hierarchy shared across the package."""


class TrajlabError(Exception):
    """Base class for all trajlab errors."""


class InvariantViolation(TrajlabError):
    """A trajectory violates a hard structural invariant."""


class BadMagic(TrajlabError):
    """Byte stream does not start with the TRJL magic."""


class UnsupportedVersion(TrajlabError):
    """Container version not supported by this reader."""


class TruncatedFile(TrajlabError):
    """Byte stream ends before the declared record region."""


class HeaderParseError(TrajlabError):
    """Header JSON is malformed or missing required fields."""


class ParseError(TrajlabError):
    """Text interchange line failed to parse."""

    def __init__(self, message, line_no=None):
        super().__init__(message if line_no is None else f"line {line_no}: {message}")
        self.line_no = line_no


class RequiredFieldNaN(TrajlabError):
    """A predicate needed a field that is NaN for this subtask kind."""


class MissingArticulation(TrajlabError):
    """Articulation predicate called on a header without an articulation."""


class TooShort(TrajlabError):
    """Trajectory has fewer than 2 records, no edges can exist."""


class UnknownMode(TrajlabError):
    """Grouping scheme does not cover a mode id."""


class ModeCoverageError(TrajlabError):
    """No mode rule matched an event list; categorization is not exhaustive."""


class InfeasibleScript(TrajlabError):
    """Event script violates a feasibility rule and cannot be realized."""


class EmptyAllowList(TrajlabError):
    """Filter spec allows no modes."""


class EmptyInput(TrajlabError):
    """Aggregation called on an empty label set."""


class BothZero(TrajlabError):
    """Ratio requested between two zero counts."""


class MissingRate(TrajlabError):
    """A chain plan slot has no success-rate entry."""
