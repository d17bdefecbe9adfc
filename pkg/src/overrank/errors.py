"""Exceptions shared across the package."""


class InternalConsistencyError(RuntimeError):
    """An exact identity that must hold by construction failed.

    Raised, e.g., when the orthogonality decomposition of a rank class does
    not produce an integer, or when a root-of-unity identity fails at some
    coefficient.  Carries the witness index when one exists.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class CrossoverNotFoundError(RuntimeError):
    """No crossover point was found below the search cap."""
