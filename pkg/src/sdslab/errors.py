"""Exception types shared across the package."""


class SdslabError(Exception):
    """Base class for all sdslab errors."""


class ProfileFormatError(SdslabError, ValueError):
    """Raised when profile text cannot be parsed."""


class RuleError(SdslabError, ValueError):
    """Raised when a rule specification is invalid."""


class DimensionError(RuleError):
    """Raised when a rule is evaluated on a profile it is not dimensioned for."""


class ScopeError(SdslabError, ValueError):
    """Raised when an operation is requested outside its supported (m, n) scope."""


class BudgetExceededError(SdslabError):
    """Raised when an exhaustive operation would exceed the evaluation budget.

    Carries the number of rule evaluations the operation would need so
    callers can report it and, if appropriate, re-run with a larger budget.
    """

    def __init__(self, required, budget):
        self.required = required
        self.budget = budget
        super().__init__(
            f"operation requires {required} rule evaluations, "
            f"budget is {budget} (set SDSLAB_BUDGET or pass budget=...)"
        )


class NotStrategyproofError(SdslabError):
    """Raised when an operation requires a strategyproof rule but got a manipulable one.

    The offending manipulation is attached as ``witness``.
    """

    def __init__(self, witness):
        self.witness = witness
        super().__init__("rule is manipulable in the requested scope; "
                         "the dictatorship-share metric is undefined for it")


class InfeasibleDecompositionError(SdslabError):
    """Raised when a tabulated rule has no point-voting / supporting-size representation.

    ``certificate`` describes the conflict: either two profile equations that
    demand different values for the same score pattern, or an inequality that
    rules out every solution of the equation system.
    """

    def __init__(self, certificate):
        self.certificate = certificate
        super().__init__(f"no feasible decomposition: {certificate}")
