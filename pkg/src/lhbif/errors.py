"""Exception types shared across the toolkit."""


class LhbifError(Exception):
    """Base class for all toolkit errors."""


class DegenerateParameterError(LhbifError, ValueError):
    """Parameters violate a hypothesis (c = 0, singular change of variables, ...)."""


class AxisSingularError(LhbifError):
    """A reduced-field formula with a 1/r prefactor has no finite limit at r = 0."""


class ReparametrizationError(LhbifError):
    """The angular rate is too close to zero to use the angle as independent variable."""


class ExtractionError(LhbifError):
    """First-order extraction in the perturbation size failed to converge.

    Carries the achieved residual in ``residual``.
    """

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class InternalInconsistencyError(LhbifError):
    """A closed-form seed failed to polish: a formula and its map disagree."""


class NonHyperbolicError(LhbifError):
    """The averaged Jacobian is singular, so the periodic-orbit theorem does not apply."""


class OrbitNotFoundError(LhbifError):
    """Shooting did not converge to a closed orbit.

    ``best_residual`` holds the smallest closure residual reached.
    """

    def __init__(self, message, best_residual=None):
        super().__init__(message)
        self.best_residual = best_residual


class BlowUpError(LhbifError):
    """Integration produced a nonfinite state; ``time`` is the detection time."""

    def __init__(self, message, time=None):
        super().__init__(message)
        self.time = time
