"""Exception types shared across the package.

Plain ValueError is used for bad arguments (domain and shape problems);
the classes here mark failure modes a caller may want to catch separately.
"""


class GammatropError(Exception):
    """Base class for package-specific failures."""


class StructureError(GammatropError):
    """A geometric object does not have the expected structure.

    Raised e.g. when no bounded complement chamber exists, when the real
    oval of a curve family cannot be located, or when a radial surface
    solve fails for some direction.
    """


class ConditioningError(GammatropError):
    """A least-squares fit is too ill-conditioned to trust."""


class UnsupportedDimensionError(GammatropError):
    """The requested ambient dimension is outside the supported range."""


class SingularFiberError(GammatropError):
    """A torus fiber was sampled exactly at its pinch point."""


class NonConvergenceError(GammatropError):
    """A quadrature result did not reach the requested tolerance."""
