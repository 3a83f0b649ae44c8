"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain where a model is defined."""


class RangeError(ValueError):
    """A command (usually a pressure) lies outside the supported range."""


class NoSolutionError(ValueError):
    """An inverse problem has no admissible solution."""


class ValidationError(ValueError):
    """A scenario, configuration or problem failed validation.

    ``problems`` holds one message per violated field so callers can
    report everything at once instead of failing on the first issue.
    """

    def __init__(self, problems):
        if isinstance(problems, str):
            problems = [problems]
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


class NumericError(ArithmeticError):
    """A numerical procedure produced non-finite values."""
