"""Exception taxonomy shared across the package.

The CLI maps these onto exit codes: config problems exit 2, domain errors
exit 3, infeasible estimation budgets exit 4.
"""


class GaussmaxError(Exception):
    """Base class for all library errors."""


class ValidationError(GaussmaxError, ValueError):
    """A model or configuration violates its declared constraints.

    ``problems`` lists every failed constraint, not just the first one.
    """

    def __init__(self, problems):
        if isinstance(problems, str):
            problems = [problems]
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


class DomainError(GaussmaxError, ValueError):
    """An argument is outside the mathematical domain of an operation."""


class ScenarioError(DomainError):
    """A normalizing sequence was requested under the wrong horizon regime."""


class ClassificationError(GaussmaxError, ValueError):
    """A horizon family could not be classified into a scenario."""


class BudgetError(GaussmaxError, RuntimeError):
    """A Monte Carlo estimation budget is infeasible (too large or empty)."""
