"""Exception types shared across the package."""


class ScorecardError(Exception):
    """Base class for every error raised by this package."""


class RubricParseError(ScorecardError):
    """A rubric definition document is not well-formed."""


class RubricIntegrityError(ScorecardError):
    """A rubric definition violates a catalog invariant."""


class IntakeParseError(ScorecardError):
    """An intake document is not syntactically valid JSON."""

    def __init__(self, message, line=None, column=None, position=None):
        detail = message
        if line is not None:
            detail = f"{message} (line {line}, column {column})"
        super().__init__(detail)
        self.line = line
        self.column = column
        self.position = position


class EvaluationError(ScorecardError):
    """Scoring was attempted on inputs that break a scoring precondition."""


class RenderError(ScorecardError):
    """A scorecard could not be rendered or parsed back."""


class RecommendationKeyError(ScorecardError):
    """A rubric references a recommendation key the catalog does not define."""

    def __init__(self, key):
        super().__init__(f"no recommendation text for key {key!r}")
        self.key = key
