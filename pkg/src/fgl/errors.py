"""Exception types shared across the package."""


class FglError(Exception):
    """Base class for all package errors."""


class GraphError(FglError):
    """Malformed graph construction or query (self-loop, unknown label, ...)."""


class InputError(FglError):
    """Bad user-facing input: files, CLI parameters, format violations."""


class IllegalMoveError(FglError):
    """A move was applied that is not legal in the given state."""


class OversizeError(FglError):
    """Instance exceeds a hard capacity (edge mask width, enumeration bound)."""


class BudgetExceeded(FglError):
    """Search ran out of its state or time budget.

    Carries the partial statistics so callers can report progress.
    """

    def __init__(self, reason, states_visited=0, table_hits=0, elapsed=0.0):
        super().__init__(f"search budget exceeded ({reason})")
        self.reason = reason
        self.states_visited = states_visited
        self.table_hits = table_hits
        self.elapsed = elapsed


class KernelError(FglError):
    """Invalid kernel input or an unsatisfiable kernel construction request."""


class PolicyError(FglError):
    """A scripted policy was asked to move in a state its rules do not cover."""
