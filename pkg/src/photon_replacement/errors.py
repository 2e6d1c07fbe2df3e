"""Exception types raised across the package."""


class TruncationError(ValueError):
    """Requested Fock dimension cannot hold the state to the required tail tolerance."""


class DegenerateStateError(ValueError):
    """Input state vanishes or the two branches are identical."""


class NoRootError(RuntimeError):
    """No orthogonalising transmissivity was found on (0, 1)."""


class BranchError(RuntimeError):
    """Closed-form cube-root branch selection did not produce exactly one physical root."""


class InfeasibleStageError(RuntimeError):
    """A cascade stage or failure path cannot be realised."""
