"""Exception hierarchy shared by every petridiag module."""


class PetriDiagError(Exception):
    """Base class for all errors raised by petridiag."""


class NetStructureError(PetriDiagError):
    """A net, marking or transition reference is malformed."""


class DisabledTransitionError(PetriDiagError):
    """Raised when firing a transition whose pre-set is not covered.

    ``step`` is the position inside the fired sequence (0 for a single
    firing) and ``marking`` the marking at which the firing was attempted.
    """

    def __init__(self, transition, marking, step=0):
        self.transition = transition
        self.marking = marking
        self.step = step
        super().__init__(
            f"transition {transition.name!r} is not enabled at step {step} "
            f"(marking {marking})"
        )


class BudgetExceeded(PetriDiagError):
    """An explanation search hit one of its safety limits.

    The search never returns a partial answer; ``dimension`` names the
    limit that was hit (``max_unobs_segment`` or ``max_explanations``).
    """

    def __init__(self, dimension, limit):
        self.dimension = dimension
        self.limit = limit
        super().__init__(f"search budget exhausted: {dimension}={limit}")


class ConfigurationError(PetriDiagError):
    """The net cannot be diagnosed (cyclic unobservable subnet, no fault)."""


class NetFormatError(PetriDiagError):
    """A net document could not be parsed.

    ``code`` is a stable identifier such as ``E_SYNTAX`` or
    ``E_UNKNOWN_PLACE``; ``line``/``column`` are set for syntax errors.
    """

    def __init__(self, code, message, line=None, column=None):
        self.code = code
        self.line = line
        self.column = column
        where = f" at line {line}, column {column}" if line is not None else ""
        super().__init__(f"[{code}] {message}{where}")
