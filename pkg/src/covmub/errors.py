"""Exception types shared across the package."""


class CovMubError(Exception):
    """Base class for all errors raised by this package."""


class NonPrimeError(CovMubError):
    """Characteristic is not a prime number."""


class DegreeMismatchError(CovMubError):
    """Polynomial degree does not match the requested extension degree."""


class ReduciblePolynomialError(CovMubError):
    """Modulus polynomial is reducible over the prime field."""


class FieldMismatchError(CovMubError):
    """Operands belong to different finite fields."""


class ZeroInverseError(CovMubError):
    """Multiplicative inverse of zero requested."""


class ZeroScaleError(CovMubError):
    """A nonzero scale parameter was required."""


class OddCharacteristicError(CovMubError):
    """Operation only defined in characteristic two."""


class EvenCharacteristicError(CovMubError):
    """Operation only defined in odd characteristic."""


class SingularMapError(CovMubError):
    """Linear map is not invertible."""


class FieldTooLargeError(CovMubError):
    """Exhaustive routine refused for a field above its size guard."""


class NotACocycleError(CovMubError):
    """Phase table fails the multiplier (2-cocycle) identity."""


class NotAWeylMultiplierError(CovMubError):
    """Multiplier is not trivial on every direction / has the wrong bicharacter."""


class NotEquivalentError(CovMubError):
    """The two multipliers are not related by a coboundary."""


class NonSymplecticElementError(CovMubError):
    """Group element does not have determinant one."""


class NotUnimodularError(NonSymplecticElementError):
    """Matrix determinant is not one."""


class NotATorusError(CovMubError):
    """Subgroup is not a maximal nonsplit torus."""


class NotProjectiveError(CovMubError):
    """Operator family is not a projective representation with the stated phases."""


class InconsistentDimensionError(CovMubError):
    """Matrix dimensions do not match the field size."""


class MultiplierMismatchError(CovMubError):
    """Intertwiner requested between systems with different multipliers."""


class DegenerateSeedError(CovMubError):
    """Every averaging seed produced a numerically zero intertwiner."""


class NotIrreducibleError(CovMubError):
    """Operator family does not act irreducibly."""


class NotCovariantError(CovMubError):
    """Quadrature system is not covariant for any candidate structure."""


class MultipleFoundError(CovMubError):
    """More than one candidate structure matched (internal consistency bug)."""


class SingularAminusIError(CovMubError):
    """A - I is singular, so the averaging formula does not apply."""


class NotInvariantMultiplierError(CovMubError):
    """Multiplier is not invariant under the given symplectic element."""


class NotScalarPowerError(CovMubError):
    """Operator power expected to be scalar is not."""
