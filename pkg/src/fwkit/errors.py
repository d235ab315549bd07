"""Exception types raised across the package."""


class FwkitError(Exception):
    """Base class for all fwkit errors."""


class InvalidPolygon(FwkitError, ValueError):
    """Vertex ring is not a strictly convex, positive-area polygon."""


class AllCollinear(FwkitError, ValueError):
    """Hull input is degenerate: every point lies on one line."""


class DegenerateTriangle(FwkitError, ValueError):
    """Triangle area is below the degeneracy threshold."""


class NonConvergence(FwkitError, RuntimeError):
    """Solver exhausted its evaluation budget before converging."""


class EmptyGrid(FwkitError, RuntimeError):
    """No approximation-grid point landed inside the body."""


class InvalidSpec(FwkitError, ValueError):
    """Generator specification has out-of-range or missing parameters."""
