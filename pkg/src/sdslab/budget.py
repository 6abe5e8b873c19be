"""Evaluation budget guard for exhaustive operations.

Every exhaustive operation (enumeration, tabulation, audits, metric sweeps)
computes the number of rule evaluations it needs up front and refuses to
start if that count exceeds the budget.  The default budget is 10^7
evaluations and can be overridden globally with the ``SDSLAB_BUDGET``
environment variable or per call with a ``budget=`` argument.
"""

import os

DEFAULT_BUDGET = 10_000_000
_ENV_VAR = "SDSLAB_BUDGET"


def current_budget(override=None):
    """Return the effective budget: explicit override, else env var, else default."""
    if override is not None:
        budget = int(override)
    else:
        raw = os.environ.get(_ENV_VAR)
        budget = int(raw) if raw else DEFAULT_BUDGET
    if budget <= 0:
        raise ValueError("budget must be positive")
    return budget


def check_budget(required, budget=None):
    """Raise ``BudgetExceededError`` if ``required`` evaluations exceed the budget."""
    from .errors import BudgetExceededError

    limit = current_budget(budget)
    if required > limit:
        raise BudgetExceededError(required, limit)
    return limit
