"""Exception types shared across the package."""


class HermGeoError(Exception):
    """Base class for all package errors."""


class DimensionError(HermGeoError, ValueError):
    """Operands have incompatible shapes or ranks."""


class NotHermitianError(HermGeoError, ValueError):
    """Input matrix is too far from its conjugate transpose."""


class NotPositiveDefiniteError(HermGeoError, ValueError):
    """Matrix has a nonpositive eigenvalue."""


class IllConditionedError(HermGeoError, ValueError):
    """Condition number exceeds the safety guard."""


class OverflowGuardError(HermGeoError, ValueError):
    """Eigenvalue magnitude exceeds the exp overflow guard."""


class EigenConvergenceError(HermGeoError, RuntimeError):
    """The iterative eigensolver failed to converge."""


class DegeneratePlaneError(HermGeoError, ValueError):
    """Two tangent vectors are linearly dependent; no 2-plane is spanned."""


class MeshMismatchError(HermGeoError, ValueError):
    """Sections built over different quadrature meshes were mixed."""


class MeasureInconsistencyError(HermGeoError, ValueError):
    """A degenerate point carries positive quadrature weight."""


class OracleFailureError(HermGeoError, RuntimeError):
    """The discrete path optimizer could not stay inside the cone."""
