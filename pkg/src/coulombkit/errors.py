import os


class TheoryError(ValueError):
    """Invalid theory document or violated theory invariant; ``rule`` names the rule."""

    def __init__(self, rule: str, message: str = ""):
        self.rule = rule
        super().__init__(f"{rule}: {message}" if message else rule)


class BudgetExceeded(RuntimeError):
    pass


class DimensionLimitError(RuntimeError):
    pass


DEFAULT_BUDGET = 1_000_000


def budget(default: int = DEFAULT_BUDGET) -> int:
    """Enumeration budget; ``COULOMBKIT_BUDGET`` overrides the default."""
    raw = os.environ.get("COULOMBKIT_BUDGET")
    if raw:
        try:
            return int(raw)
        except ValueError:
            pass
    return default
