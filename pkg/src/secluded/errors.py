"""Exception types shared by all solvers."""


class InputError(ValueError):
    """Malformed instance, bad parameter, or an id out of range."""


class InvariantViolation(AssertionError):
    """An internal structure broke one of its invariants."""


class BudgetExceeded(RuntimeError):
    """A search hit its expansion budget or a parameter cap."""
