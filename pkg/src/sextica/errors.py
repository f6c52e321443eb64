"""Exception types shared across the package."""


class SexticaError(Exception):
    """Base class for all package errors."""


class FieldError(SexticaError):
    """Invalid characteristic or mixing of fields."""


class DegreeError(SexticaError):
    """Degree mismatch between homogeneous objects."""


class ResourceError(SexticaError):
    """A computation exceeded its configured degree or size cap."""


class DimensionError(SexticaError):
    """An ideal has the wrong dimension for the requested invariant."""


class SpecError(SexticaError):
    """A bundle specification violates the numerical constraints."""


class HypothesisError(SexticaError):
    """A verified hypothesis of a combinatorial statement fails."""


class NonSplitError(SexticaError):
    """The requested complex needs a non-split term which is not supported."""


class DegenerateError(SexticaError):
    """Sampling failed to produce a generic member within the retry budget."""
