"""Exception types shared across the package."""


class PrimfixError(Exception):
    """Base class for all errors raised by primfix."""


class BudgetExceeded(PrimfixError):
    """A computation ran past a configured resource limit."""


class ClosureExceedsCap(BudgetExceeded):
    """Group closure produced more elements than the element cap allows."""


class SearchBudgetExceeded(BudgetExceeded):
    """Automorphism/isomorphism search ran out of its time budget."""


class NotTransitive(PrimfixError):
    pass


class TrivialGroup(PrimfixError):
    pass


class NotAGraph(PrimfixError):
    """The digraph has an asymmetric arc or a loop where a simple graph is required."""


class Irregular(PrimfixError):
    pass


class NotHomogeneous(PrimfixError):
    pass


class RigidGraph(PrimfixError):
    """The digraph has no nontrivial automorphism, so fixity is undefined."""
