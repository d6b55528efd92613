"""Exception types shared across the package."""


class ContextsimError(Exception):
    """Base class for every error raised by this package."""


class NotHermitianError(ContextsimError):
    """A matrix required to be Hermitian is not, within tolerance."""


class NoConvergenceError(ContextsimError):
    """The iterative eigensolver did not reach the target accuracy."""


class ZeroVectorError(ContextsimError):
    """A ray or state vector with zero norm was supplied."""


class DimensionMismatchError(ContextsimError):
    """Operands have incompatible dimensions."""


class DegenerateSpectrumError(ContextsimError):
    """Context eigenvalues must be pairwise distinct; two coincide."""


class NonOrthonormalBasisError(ContextsimError):
    """A supplied basis is not orthonormal within tolerance."""


class NonNegligibleImaginaryPartError(ContextsimError):
    """A quantity that must be real carries a non-negligible imaginary part."""


class BadCellIndexError(ContextsimError):
    """A joint-table cell index is out of range."""


class ShapeMismatchError(ContextsimError):
    """Shot records do not match the shape of the source table."""


class UnsupportedDimensionError(ContextsimError):
    """The operation is only defined for a specific local dimension."""
