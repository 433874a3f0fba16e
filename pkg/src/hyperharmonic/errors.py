"""Exception types shared across the package."""


class HyperharmonicError(Exception):
    """Base class for all package-specific errors."""


class DimensionMismatchError(HyperharmonicError, ValueError):
    """Operands live in spaces of different dimension."""


class GridError(HyperharmonicError, ValueError):
    """A grid is malformed or too small for the requested stencil."""


class PositivityError(HyperharmonicError, ValueError):
    """A height coordinate that must stay positive reached the floor.

    Raised both for invalid input points and when a solver state drifts
    below the positivity floor (a blow-up signal, not roundoff).
    """


class NumericalError(HyperharmonicError, RuntimeError):
    """A numerical procedure could not reach its target accuracy."""


class QuadratureError(NumericalError):
    """Adaptive quadrature exhausted its panel budget above tolerance."""


class SolverDivergenceError(NumericalError):
    """The relaxation flow stopped contracting.

    Attributes
    ----------
    node : tuple or None
        Grid index of the worst-residual node when the guard fired.
    stage : int or None
        Continuation stage index, when raised from a schedule run.
    """

    def __init__(self, message, node=None, stage=None):
        super().__init__(message)
        self.node = node
        self.stage = stage


class DivergentModulusError(HyperharmonicError, ValueError):
    """The modulus of continuity fails the integrability hypothesis.

    The barrier construction needs the integral of g(t)/t over (0, 1] to
    be finite; moduli without that property are refused up front.
    """


class ConfigError(HyperharmonicError, ValueError):
    """An experiment configuration is unusable."""
