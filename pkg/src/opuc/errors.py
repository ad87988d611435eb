"""Exception types shared across the package."""


class OPUCError(Exception):
    """Base class for errors raised by this package."""


class DiskGuardError(OPUCError, ValueError):
    """A coefficient lies outside the guarded open unit disk."""

    def __init__(self, index, value, bound):
        self.index = index
        self.value = value
        self.bound = bound
        super().__init__(
            f"|alpha[{index}]| = {abs(value):.17g} exceeds the disk guard {bound!r}"
        )


class DomainError(OPUCError, ValueError):
    """Evaluation point too close to (or outside) the unit circle."""


class QuadratureError(OPUCError, ArithmeticError):
    """Grid refinement hit the cap without meeting the tolerance."""

    def __init__(self, last, previous, m):
        self.last = last
        self.previous = previous
        self.m = m
        super().__init__(
            f"no convergence at m={m}: last={last!r}, previous={previous!r}"
        )


class NonFiniteSampleError(OPUCError, ArithmeticError):
    def __init__(self, theta, value):
        self.theta = theta
        self.value = value
        super().__init__(f"non-finite sample {value!r} at theta={theta!r}")


class BranchError(OPUCError, ArithmeticError):
    """The logarithm winds around the origin along the contour."""


class ConfigError(OPUCError, ValueError):
    pass
