"""
Exact arithmetic substrate of qdiv.

Scalars are elements of sympy's rational domain `QQ` (always reduced, with a
positive denominator). Matrices wrap a sympy `DomainMatrix` over `QQ` and
homogeneous polynomials wrap a sparse `PolyElement` of a graded-lex ring
`QQ[x1, ..., xn]`. Nothing in here ever touches floating point.
"""

import dataclasses
import functools
import itertools
import logging
import math
import numbers
from typing import Dict, Iterable, List, Sequence, Tuple

from sympy.polys.domains import GF, QQ, ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.orderings import grlex
from sympy.polys.polyerrors import ExactQuotientFailed
from sympy.polys.rings import ring

from . import settings
from .exceptions import (
    AllZeroInput, DegreeMismatch, DimensionMismatch, NotSquare, NvarsMismatch,
)

logger = logging.getLogger(__name__)

ExactScalar = type(QQ.one)
ExactVector = Tuple[ExactScalar, ...]
Exponents = Tuple[int, ...]


# Scalars and vectors

def scalar(value) -> ExactScalar:
    """Coerce an int, a QQ element or a "p/q" string to an exact scalar."""
    if isinstance(value, str):
        text = value.strip()
        if '/' in text:
            numer, denom = text.split('/', 1)
            if int(denom) == 0:
                raise ValueError(f'Zero denominator in {value!r}')
            return QQ(int(numer), int(denom))
        return QQ(int(text))
    if isinstance(value, bool):
        raise TypeError('Booleans are not scalars')
    if QQ.of_type(value):
        return value
    if isinstance(value, tuple) and len(value) == 2:
        return QQ(int(value[0]), int(value[1]))
    if isinstance(value, numbers.Rational):
        return QQ(int(value.numerator), int(value.denominator))
    return QQ.convert(value)


def vector(values: Iterable) -> ExactVector:
    return tuple(scalar(v) for v in values)


def zero_vector(n: int) -> ExactVector:
    return (QQ.zero,) * n


def unit_vector(n: int, i: int) -> ExactVector:
    return tuple(QQ.one if k == i else QQ.zero for k in range(n))


def dot(v: Sequence, w: Sequence) -> ExactScalar:
    if len(v) != len(w):
        raise DimensionMismatch(f'Cannot pair vectors of length {len(v)} '
                                f'and {len(w)}')
    return sum((a * b for a, b in zip(v, w)), QQ.zero)


def add_vectors(v: Sequence, w: Sequence) -> ExactVector:
    if len(v) != len(w):
        raise DimensionMismatch(f'Cannot add vectors of length {len(v)} '
                                f'and {len(w)}')
    return tuple(a + b for a, b in zip(v, w))


def scale_vector(c, v: Sequence) -> ExactVector:
    return tuple(c * a for a in v)


def is_zero_vector(v: Sequence) -> bool:
    return all(not a for a in v)


def normalize_line(v: Sequence) -> ExactVector:
    """
    Canonical representative of the line through `v`: integer entries with
    content 1 and a positive first nonzero entry. The zero vector is
    returned unchanged.
    """
    v = vector(v)
    if is_zero_vector(v):
        return tuple(QQ.zero for _ in v)
    common = math.lcm(*(int(QQ.denom(a)) for a in v))
    integers = [int(QQ.numer(a)) * (common // int(QQ.denom(a))) for a in v]
    content = math.gcd(*integers)
    sign = 1 if next(i for i in integers if i) > 0 else -1
    return tuple(QQ(sign * i // content) for i in integers)


def same_line(v: Sequence, w: Sequence) -> bool:
    """True iff both vectors are nonzero and span the same line."""
    if is_zero_vector(v) or is_zero_vector(w):
        return False
    return normalize_line(v) == normalize_line(w)


def rank_of_vectors(vectors: Sequence[Sequence]) -> int:
    return ExactMatrix.from_rows(vectors).rank()


# Matrices

@dataclasses.dataclass(frozen=True, eq=False)
class ExactMatrix:
    """Dense or sparse exact matrix over QQ; immutable after construction."""

    rep: DomainMatrix

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> 'ExactMatrix':
        rows = [[scalar(a) for a in row] for row in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(row) != ncols for row in rows):
            raise DimensionMismatch('Ragged matrix rows')
        return cls(DomainMatrix(rows, (len(rows), ncols), QQ))

    @classmethod
    def from_dod(cls, dod: Dict[int, Dict[int, ExactScalar]],
                 shape: Tuple[int, int]) -> 'ExactMatrix':
        """Sparse constructor from a dict of rows of dicts of columns."""
        return cls(DomainMatrix(
            {i: dict(row) for i, row in dod.items() if row}, shape, QQ))

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> 'ExactMatrix':
        return cls(DomainMatrix.zeros((nrows, ncols), QQ))

    @classmethod
    def identity(cls, n: int) -> 'ExactMatrix':
        return cls(DomainMatrix.eye(n, QQ))

    @classmethod
    def diag(cls, values: Sequence) -> 'ExactMatrix':
        n = len(values)
        return cls.from_rows([[values[i] if i == j else 0 for j in range(n)]
                              for i in range(n)])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence]) -> 'ExactMatrix':
        return cls.from_rows(columns).transpose()

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rep.shape

    @property
    def nrows(self) -> int:
        return self.rep.shape[0]

    @property
    def ncols(self) -> int:
        return self.rep.shape[1]

    @functools.cached_property
    def rows(self) -> Tuple[ExactVector, ...]:
        return tuple(tuple(row) for row in self.rep.to_list())

    def entry(self, i: int, j: int) -> ExactScalar:
        return self.rows[i][j]

    def column(self, j: int) -> ExactVector:
        return tuple(row[j] for row in self.rows)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, self.rows))

    def __repr__(self):
        return f'ExactMatrix({[[str(a) for a in row] for row in self.rows]})'

    def _check_same_shape(self, other):
        if self.shape != other.shape:
            raise DimensionMismatch(f'Shapes {self.shape} and {other.shape} '
                                    'differ')

    def __add__(self, other: 'ExactMatrix') -> 'ExactMatrix':
        self._check_same_shape(other)
        a, b = _same_format(self.rep, other.rep)
        return ExactMatrix(a + b)

    def __sub__(self, other: 'ExactMatrix') -> 'ExactMatrix':
        self._check_same_shape(other)
        a, b = _same_format(self.rep, other.rep)
        return ExactMatrix(a - b)

    def __neg__(self) -> 'ExactMatrix':
        return ExactMatrix(-self.rep)

    def __matmul__(self, other: 'ExactMatrix') -> 'ExactMatrix':
        if self.ncols != other.nrows:
            raise DimensionMismatch(f'Cannot multiply {self.shape} by '
                                    f'{other.shape}')
        a, b = _same_format(self.rep, other.rep)
        return ExactMatrix(a.matmul(b))

    def scale(self, c) -> 'ExactMatrix':
        return ExactMatrix(self.rep * scalar(c))

    def transpose(self) -> 'ExactMatrix':
        return ExactMatrix(self.rep.transpose())

    def apply(self, v: Sequence) -> ExactVector:
        """Matrix-vector product M v."""
        if len(v) != self.ncols:
            raise DimensionMismatch(f'Cannot apply {self.shape} matrix to a '
                                    f'vector of length {len(v)}')
        return tuple(dot(row, v) for row in self.rows)

    def bilinear(self, v: Sequence, w: Sequence) -> ExactScalar:
        """v^t M w."""
        return dot(v, self.apply(w))

    def submatrix(self, rows: Sequence[int],
                  cols: Sequence[int]) -> 'ExactMatrix':
        return ExactMatrix(self.rep.extract(list(rows), list(cols)))

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def is_zero(self) -> bool:
        return self.rep.is_zero_matrix

    def is_antisymmetric(self) -> bool:
        return self.is_square() and self == -self.transpose()

    def is_symmetric(self) -> bool:
        return self.is_square() and self == self.transpose()

    def leading_minors(self) -> List[ExactScalar]:
        n = self.nrows
        return [det_exact(self.submatrix(range(k), range(k)))
                for k in range(1, n + 1)]

    def is_positive_definite(self) -> bool:
        """Sylvester's criterion on a symmetric matrix."""
        if not self.is_symmetric():
            return False
        return all(m > 0 for m in self.leading_minors())

    def is_orthogonal(self) -> bool:
        if not self.is_square():
            return False
        return self.transpose() @ self == ExactMatrix.identity(self.nrows)

    def has_unit_determinant(self) -> bool:
        return self.is_square() and det_exact(self) == QQ.one

    def det(self) -> ExactScalar:
        return det_exact(self)

    def rank(self) -> int:
        if not self.nrows or not self.ncols:
            return 0
        return self.rep.rank()

    def inverse(self) -> 'ExactMatrix':
        if not self.is_square():
            raise NotSquare(f'Cannot invert a {self.shape} matrix')
        return ExactMatrix(self.rep.inv())

    def kernel(self) -> List[ExactVector]:
        return mat_kernel(self)


def _same_format(a: DomainMatrix, b: DomainMatrix):
    if a.rep.fmt == b.rep.fmt:
        return a, b
    return a.to_sparse(), b.to_sparse()


def _integral_rows(matrix: ExactMatrix) -> DomainMatrix:
    """Scale every row by its denominator lcm; same kernel, over ZZ."""
    integral = {}
    for i, row in matrix.rep.to_sdm().items():
        common = math.lcm(*(int(QQ.denom(a)) for a in row.values()))
        integral[i] = {j: ZZ(int(QQ.numer(a)) * (common // int(QQ.denom(a))))
                       for j, a in row.items()}
    return DomainMatrix(integral, matrix.shape, ZZ)


def _independent_rows_modulo(integral: DomainMatrix, prime: int) -> List[int]:
    """Rows of `integral` independent modulo `prime` (hence over QQ)."""
    reduced = integral.transpose().convert_to(GF(prime))
    _, pivots = reduced.rref()
    return list(pivots)


def _nullspace_rows(integral: DomainMatrix) -> List[ExactVector]:
    nullspace = integral.convert_to(QQ).nullspace()
    return [normalize_line(row) for row in nullspace.to_list()]


def _annihilates(integral: DomainMatrix, v: ExactVector) -> bool:
    column = DomainMatrix({i: {0: QQ.numer(a)} for i, a in enumerate(v) if a},
                          (len(v), 1), ZZ)
    return integral.matmul(column).is_zero_matrix


def mat_kernel(matrix: ExactMatrix, prime: int = None) -> List[ExactVector]:
    """
    Exact basis of the right null space of `matrix`.

    A pass modulo `prime` discovers a maximal set of independent rows (which
    stay independent over QQ). The kernel of that row subset is computed
    exactly and every basis vector is checked against the full matrix. An
    unlucky prime only costs a second, unrestricted elimination.
    """
    prime = prime or settings.MODULAR_PRIME
    nrows, ncols = matrix.shape
    if ncols == 0:
        return []
    if nrows == 0 or matrix.is_zero():
        return [normalize_line(unit_vector(ncols, j)) for j in range(ncols)]

    integral = _integral_rows(matrix)
    rows = _independent_rows_modulo(integral, prime)
    logger.debug('Modular pass over %d x %d system found rank %d',
                 nrows, ncols, len(rows))
    if len(rows) == ncols:
        return []

    restricted = integral.extract(rows, list(range(ncols)))
    basis = _nullspace_rows(restricted)
    if all(_annihilates(integral, v) for v in basis):
        return basis

    logger.info('Prime %d is unlucky for this system, eliminating in full',
                prime)
    return _nullspace_rows(integral)


def det_exact(matrix: ExactMatrix) -> ExactScalar:
    """Determinant by fraction-free elimination over ZZ."""
    if not matrix.is_square():
        raise NotSquare(f'Cannot take the determinant of a {matrix.shape} '
                        'matrix')
    n = matrix.nrows
    if n == 0:
        return QQ.one
    scale = 1
    for row in matrix.rows:
        scale *= math.lcm(*(int(QQ.denom(a)) for a in row))
    integral = _integral_rows(matrix)
    return QQ(int(integral.to_dense().det()), scale)


# Homogeneous polynomials

@functools.lru_cache()
def polynomial_ring(nvars: int):
    """The ring QQ[x1, ..., xn] with graded lexicographic order."""
    if nvars < 1:
        raise ValueError('Polynomial rings need at least one variable')
    return ring(f'x1:{nvars + 1}', QQ, grlex)[0]


@functools.lru_cache()
def monomials(nvars: int, degree: int) -> Tuple[Exponents, ...]:
    """All exponent vectors of the given degree, graded-lex descending."""
    exponents = []
    for combo in itertools.combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        exponents.append(tuple(e))
    return tuple(sorted(exponents, key=grlex, reverse=True))


@dataclasses.dataclass(frozen=True, eq=False)
class HomogeneousPoly:
    """
    Homogeneous polynomial with rational coefficients.

    The zero polynomial keeps the nominal `degree` it was created with.
    """

    element: object
    degree: int

    def __post_init__(self):
        for exponents in self.element.keys():
            if sum(exponents) != self.degree:
                raise DegreeMismatch(
                    f'Monomial {exponents} does not have degree '
                    f'{self.degree}')

    @classmethod
    def from_terms(cls, nvars: int, degree: int,
                   terms: Dict[Exponents, object]) -> 'HomogeneousPoly':
        R = polynomial_ring(nvars)
        element = R.from_dict({tuple(e): scalar(c)
                               for e, c in terms.items() if scalar(c)})
        return cls(element, degree)

    @classmethod
    def from_element(cls, element, degree: int = None) -> 'HomogeneousPoly':
        if degree is None:
            degree = max((sum(e) for e in element.keys()), default=0)
        return cls(element, degree)

    @classmethod
    def zero(cls, nvars: int, degree: int = 0) -> 'HomogeneousPoly':
        return cls(polynomial_ring(nvars).zero, degree)

    @classmethod
    def constant(cls, nvars: int, value=1) -> 'HomogeneousPoly':
        R = polynomial_ring(nvars)
        return cls(R.from_dict({(0,) * nvars: scalar(value)}), 0)

    @classmethod
    def variable(cls, nvars: int, i: int) -> 'HomogeneousPoly':
        """The coordinate x_{i+1}."""
        return cls(polynomial_ring(nvars).gens[i], 1)

    @classmethod
    def linear_form(cls, coefficients: Sequence) -> 'HomogeneousPoly':
        nvars = len(coefficients)
        return cls.from_terms(nvars, 1, {unit_exponents(nvars, i): c
                                         for i, c in enumerate(coefficients)})

    @property
    def nvars(self) -> int:
        return self.element.ring.ngens

    @property
    def terms(self) -> Dict[Exponents, ExactScalar]:
        return dict(self.element.items())

    def is_zero(self) -> bool:
        return not self.element

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if not isinstance(other, HomogeneousPoly):
            return NotImplemented
        if self.nvars != other.nvars:
            return False
        if self.is_zero() and other.is_zero():
            return True
        return self.degree == other.degree and self.element == other.element

    def __hash__(self):
        return hash((self.nvars, tuple(sorted(self.terms.items()))))

    def __repr__(self):
        return (f'HomogeneousPoly({self.element.as_expr()}, '
                f'degree={self.degree})')

    def __add__(self, other):
        return poly_arith(self, other, 'add')

    def __sub__(self, other):
        return poly_arith(self, -other, 'add')

    def __neg__(self):
        return HomogeneousPoly(-self.element, self.degree)

    def __mul__(self, other):
        if isinstance(other, HomogeneousPoly):
            return poly_arith(self, other, 'mul')
        return HomogeneousPoly(self.element * scalar(other), self.degree)

    __rmul__ = __mul__

    def __call__(self, point: Sequence) -> ExactScalar:
        if len(point) != self.nvars:
            raise DimensionMismatch(f'Cannot evaluate a polynomial in '
                                    f'{self.nvars} variables at {len(point)} '
                                    'coordinates')
        if self.is_zero():
            return QQ.zero
        return self.element(*[scalar(a) for a in point])

    def monic(self) -> 'HomogeneousPoly':
        if self.is_zero():
            return self
        return HomogeneousPoly(self.element.monic(), self.degree)

    def exquo(self, divisor: 'HomogeneousPoly') -> 'HomogeneousPoly':
        """Exact quotient; raises ExactQuotientFailed if it does not divide."""
        _check_nvars(self, divisor)
        quotient = self.element.exquo(divisor.element)
        return HomogeneousPoly(quotient, self.degree - divisor.degree)

    def divides(self, other: 'HomogeneousPoly') -> bool:
        try:
            other.exquo(self)
        except ExactQuotientFailed:
            return False
        return True


PolyVector = Tuple[HomogeneousPoly, ...]


def unit_exponents(nvars: int, i: int) -> Exponents:
    return tuple(1 if k == i else 0 for k in range(nvars))


def _check_nvars(p: HomogeneousPoly, q: HomogeneousPoly):
    if p.nvars != q.nvars:
        raise NvarsMismatch(f'Polynomials in {p.nvars} and {q.nvars} '
                            'variables do not mix')


def poly_arith(p: HomogeneousPoly, q: HomogeneousPoly,
               op: str) -> HomogeneousPoly:
    """Sum or product of two homogeneous polynomials."""
    _check_nvars(p, q)
    if op == 'add':
        if p.degree != q.degree and not (p.is_zero() or q.is_zero()):
            raise DegreeMismatch(f'Cannot add polynomials of degree '
                                 f'{p.degree} and {q.degree}')
        degree = q.degree if p.is_zero() else p.degree
        return HomogeneousPoly(p.element + q.element, degree)
    if op == 'mul':
        return HomogeneousPoly(p.element * q.element, p.degree + q.degree)
    raise ValueError(f'Unknown polynomial operation {op!r}')


def poly_content_gcd(polys: Sequence[HomogeneousPoly]) -> HomogeneousPoly:
    """
    Monic greatest common divisor of the given polynomials.

    Zero inputs are skipped; the result is the constant 1 exactly when the
    nonzero inputs are relatively prime.
    """
    if not polys:
        raise AllZeroInput('No polynomials given')
    for p in polys[1:]:
        _check_nvars(polys[0], p)
    nonzero = [p for p in polys if not p.is_zero()]
    if not nonzero:
        raise AllZeroInput('Every polynomial is zero')
    g = functools.reduce(lambda a, b: a.gcd(b),
                         (p.element for p in nonzero))
    return HomogeneousPoly.from_element(g).monic()


def square_norm_poly(nvars: int) -> HomogeneousPoly:
    """x1^2 + ... + xn^2."""
    return HomogeneousPoly.from_terms(
        nvars, 2, {tuple(2 * e for e in unit_exponents(nvars, i)): 1
                   for i in range(nvars)})
