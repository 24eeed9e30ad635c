"""Exceptions raised by the solvers."""


class SolverError(RuntimeError):
    """Base class for numerical failures."""


class ConvergenceError(SolverError):
    """Iteration budget exhausted before the tolerance was met."""


class BracketError(SolverError):
    """No sign change of the mismatch function inside the energy window."""


class NodeCountError(SolverError):
    """The converged state has the wrong number of nodes."""
