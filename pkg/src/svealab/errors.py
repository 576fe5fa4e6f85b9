"""Exception types shared across the package."""


class DomainError(ValueError):
    """Input outside a function's mathematical domain (non-finite, negative amplitude, ...)."""


class PoleError(ValueError):
    """Evaluation requested too close to a pole of dc = dn/cn.

    Attributes:
        location: argument u at the offending point.
        distance: distance from u to the nearest pole.
    """

    def __init__(self, message: str, location: float, distance: float):
        super().__init__(message)
        self.location = location
        self.distance = distance


class FamilyMismatchError(ValueError):
    """A model of the wrong family (KG vs NLS) was passed to an operation."""


class ConstraintError(ValueError):
    """Solution parameters violate a published constraint.

    Attributes:
        relation: the violated relation, e.g. "15*sigma**2 == 16*lambda".
    """

    def __init__(self, message: str, relation: str):
        super().__init__(message)
        self.relation = relation


class DivergenceError(RuntimeError):
    """Propagation produced non-finite values or tripped the step-size guard.

    Attributes:
        time: simulation time at which divergence was detected.
        partial: Trajectory up to the last healthy step, when available.
    """

    def __init__(self, message: str, time: float, partial=None):
        super().__init__(message)
        self.time = time
        self.partial = partial


class ConfigError(ValueError):
    """Malformed or missing run configuration."""
