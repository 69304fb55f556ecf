"""Exception hierarchy shared by all layers."""


class GeometryError(ValueError):
    """Base class for every domain error raised by this package."""


class EvaluationDomainError(GeometryError):
    """A map or functional was evaluated outside the set where it is defined."""


class DegenerateParametrizationError(GeometryError):
    """``Xs x Xt`` vanishes (to tolerance) at a requested point."""


class HorizontalTangentError(GeometryError):
    """The unit normal is vertical, so the principal frame is undefined."""


class UndefinedLambdaError(GeometryError):
    """The anisotropic mean curvature cannot be solved for (vertical tangent plane)."""


class BranchMismatchError(GeometryError):
    """A ruled specification does not satisfy the hypotheses of a coefficient branch."""


class NodePlacementError(GeometryError):
    """Interpolation nodes are degenerate or the fitted polynomial fails validation."""


class InvalidFamilyError(GeometryError):
    """Family parameters outside the admissible set."""


class InvalidPerturbationError(GeometryError):
    """A perturbation used for a first-variation test does not vanish on the boundary."""


class GridTooSmallError(GeometryError):
    """A grid has too few nodes for the requested stencil."""


class ConfigError(ValueError):
    """Invalid run configuration (command-line usage error)."""
