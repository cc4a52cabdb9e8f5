"""Exception types shared across the package."""


class ScarfError(Exception):
    """Base class for all library errors; the CLI maps these to exit code 2."""


class BranchUnavailable(ScarfError):
    """Requested superpotential branch is undefined at these parameters."""


class NotRealPhase(ScarfError):
    """Operation requires C = 0 (real-eigenvalue family)."""


class RequiresRealPhase(NotRealPhase):
    """Classification requires C = 0."""


class NotOnPTLine(ScarfError):
    """Operation requires the constraint A = B - alpha/2."""


class NotSpectralSingularity(ScarfError):
    """Operation requires A = n*alpha for the requested level n."""


class NotOnIsospectralLine(ScarfError):
    """Operation requires the constraint B - alpha/2 = -A."""


class RecurrenceDegenerate(ScarfError):
    """Three-term Jacobi recurrence hit an exactly-zero leading coefficient."""


class GridTooSmall(ScarfError):
    """Potential has not decayed at the grid edges."""


class NoConvergence(ScarfError):
    """Iterative eigensolver exceeded its iteration budget."""

    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.index = index


class StiffFailure(ScarfError):
    """Adaptive ODE integration failed or step size collapsed."""


class NonDecayedPotential(ScarfError):
    """Potential magnitude at the integration endpoints exceeds tolerance."""


class VerificationFailed(ScarfError):
    """A verification suite produced a failing report.

    Carries the structured report so the CLI can still emit it before
    exiting with status 2."""

    def __init__(self, message: str, result=None, csv=None):
        super().__init__(message)
        self.result = result
        self.csv = csv
