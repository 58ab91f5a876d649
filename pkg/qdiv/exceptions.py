import dataclasses


class QdivError(Exception):
    """Base class of every error raised by qdiv."""

    exit_code = 1


@dataclasses.dataclass(frozen=True)
class InputError(QdivError):
    """An input could not be located or parsed."""

    source: str
    reason: str

    exit_code = 2

    def __str__(self):
        return 'Cannot load input from {self.source}: {self.reason}'.format(
            self=self,
        )


class DegreeMismatch(QdivError, ValueError):
    """Homogeneous polynomials of different degrees were added."""


class NvarsMismatch(QdivError, ValueError):
    """Polynomials live in rings with different numbers of variables."""


class DimensionMismatch(QdivError, ValueError):
    """Matrix, vector, tensor or algebra shapes do not fit together."""


class NotSquare(DimensionMismatch):
    """A square matrix was required."""


class AllZeroInput(QdivError, ValueError):
    """A GCD was requested of zero polynomials only."""


class UnsupportedDimension(QdivError, ValueError):
    """Only dimensions 3 and 7 carry a vector product here."""


class InvariantViolation(QdivError, ValueError):
    """A matrix quadruple or triple fails one of its defining predicates."""


class NotUnital(QdivError, ValueError):
    """The declared unity of an algebra is not a two-sided identity."""


class NotQuadratic(QdivError, ValueError):
    """Some element x of the algebra has 1, x, x^2 linearly independent."""


class BadDimension(QdivError, ValueError):
    """A triple can only be recovered from algebras of dimension 4 or 8."""


class ZeroVector(QdivError, ValueError):
    """The zero vector spans no line."""


class DegenerateSpan(QdivError, ValueError):
    """eta(v ^ v-perp) is not a hyperplane, so eta is not dissident at v."""


class IrrationalBasis(QdivError):
    """
    The imaginary hyperplane has no rational orthonormal basis.

    Carries the basis-change certificate: an orthogonal basis of the
    hyperplane (coordinates in the algebra basis) and its square norms.
    """

    def __init__(self, basis, square_norms):
        super().__init__(
            'Orthonormalizing the imaginary hyperplane needs irrational '
            'square roots')
        self.basis = basis
        self.square_norms = square_norms


class NoLiftingFound(QdivError):
    """No validated lifting exists up to the maximal degree."""

    exit_code = 3


class AmbiguousKernel(QdivError):
    """More than one projective lifting survived at the minimal degree."""

    exit_code = 4


class OddnessViolation(QdivError):
    """A dissident map on R^7 produced an even degree."""

    exit_code = 5


class DegreeOutOfRange(QdivError, ValueError):
    """Liftings of dissident maps have degree between 1 and 5."""
