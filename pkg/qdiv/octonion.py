"""
The octonions and their relatives.

Tables come from the Cayley-Dickson doubling

    (a, b)(c, d) = (ac - conj(d) b, d a + b conj(c))

starting from the real numbers, so the octonion basis is
(1, i, j, k, l, il, jl, kl) with e0 = 1. Every G2 matrix and every structure
constant in qdiv is relative to this choice of table.
"""

import dataclasses
import functools
import logging
from typing import Sequence, Tuple

from sympy.polys.domains import QQ

from . import settings, util
from .algebra import AlgebraPresentation, Tensor
from .exact import (
    ExactMatrix, ExactScalar, ExactVector, dot, rank_of_vectors, scale_vector,
    unit_vector, vector,
)
from .exceptions import (
    DimensionMismatch, InvariantViolation, NotQuadratic, NotUnital,
    UnsupportedDimension,
)

logger = logging.getLogger(__name__)

CAYLEY_DICKSON_DIMENSIONS = (1, 2, 4, 8)
VECTOR_PRODUCT_DIMENSIONS = (3, 7)


def _conjugate(x: Sequence) -> ExactVector:
    return (x[0],) + tuple(-a for a in x[1:])


def _add(x, y):
    return tuple(a + b for a, b in zip(x, y))


def _sub(x, y):
    return tuple(a - b for a, b in zip(x, y))


def cayley_dickson_multiply(x: Sequence, y: Sequence) -> ExactVector:
    n = len(x)
    if n == 1:
        return (x[0] * y[0],)
    h = n // 2
    a, b, c, d = x[:h], x[h:], y[:h], y[h:]
    return (_sub(cayley_dickson_multiply(a, c),
                 cayley_dickson_multiply(_conjugate(d), b))
            + _add(cayley_dickson_multiply(d, a),
                   cayley_dickson_multiply(b, _conjugate(c))))


@functools.lru_cache()
def cayley_dickson_table(dim: int) -> Tensor:
    """Structure constants of R, C, H or O over the doubling basis."""
    if dim not in CAYLEY_DICKSON_DIMENSIONS:
        raise UnsupportedDimension(f'No Cayley-Dickson table of dimension '
                                   f'{dim} (supported: 1, 2, 4, 8)')
    basis = [unit_vector(dim, i) for i in range(dim)]
    return tuple(tuple(cayley_dickson_multiply(x, y) for y in basis)
                 for x in basis)


_NAMES = {1: 'reals', 2: 'complex', 4: 'quaternions', 8: 'octonions'}


@functools.lru_cache()
def cayley_dickson_algebra(dim: int) -> AlgebraPresentation:
    return AlgebraPresentation(cayley_dickson_table(dim),
                               unit_vector(dim, 0), _NAMES.get(dim, ''))


def octonions() -> AlgebraPresentation:
    return cayley_dickson_algebra(8)


def quaternions() -> AlgebraPresentation:
    return cayley_dickson_algebra(4)


def complex_numbers() -> AlgebraPresentation:
    return cayley_dickson_algebra(2)


def oct_mul(x: Sequence, y: Sequence) -> ExactVector:
    """Product of two octonions given by their 8 coefficients."""
    x, y = vector(x), vector(y)
    if len(x) != 8 or len(y) != 8:
        raise DimensionMismatch('Octonions have 8 coefficients')
    return cayley_dickson_multiply(x, y)


def quat_mul(x: Sequence, y: Sequence) -> ExactVector:
    x, y = vector(x), vector(y)
    if len(x) != 4 or len(y) != 4:
        raise DimensionMismatch('Quaternions have 4 coefficients')
    return cayley_dickson_multiply(x, y)


# Frobenius decomposition

@dataclasses.dataclass(frozen=True)
class FrobeniusSplit:
    """
    A = R1 + V. `rho` holds the coefficients of the linear form with
    x = rho(x) 1 + iota(x); `basis` spans the purely imaginary hyperplane V.
    """

    rho: ExactVector
    basis: Tuple[ExactVector, ...]
    unity: ExactVector

    def real_part(self, x: Sequence) -> ExactScalar:
        return dot(self.rho, x)

    def imaginary_part(self, x: Sequence) -> ExactVector:
        return _sub(vector(x), scale_vector(self.real_part(x), self.unity))

    def coordinates(self, v: Sequence) -> ExactVector:
        """Coordinates of an imaginary element in `basis`."""
        m = ExactMatrix.from_columns(self.basis + (tuple(v),))
        kernel = m.kernel()
        if len(kernel) != 1 or not kernel[0][-1]:
            raise DimensionMismatch('Element does not lie in the imaginary '
                                    'hyperplane')
        k = kernel[0]
        return tuple(-a / k[-1] for a in k[:-1])


def _square_coefficients(alg: AlgebraPresentation, b: ExactVector):
    """(lambda, mu) with b^2 = lambda 1 + mu b, or None."""
    m = ExactMatrix.from_columns([alg.unity, b, alg.square(b)])
    kernel = m.kernel()
    if not kernel or not kernel[0][2]:
        return None
    c1, c2, c3 = kernel[0]
    return -c1 / c3, -c2 / c3


def frobenius_split(alg: AlgebraPresentation, samples: int = 16,
                    seed: int = None) -> FrobeniusSplit:
    """
    Frobenius decomposition of a quadratic algebra.

    For every basis vector b off the unity pivot, b^2 = lambda 1 + mu b gives
    rho(b) = mu / 2; rho is assembled by linearity and checked on the
    imaginary basis and on seeded random elements.
    """
    if not alg.is_unital():
        raise NotUnital(f'{alg.name or "Algebra"} has no two-sided unity at '
                        f'{util.vector_to_json(alg.unity)}')
    seed = settings.DEFAULT_SEED if seed is None else seed
    dim, unity = alg.dim, alg.unity
    pivot = next(i for i, a in enumerate(unity) if a)

    rho_off_pivot = {}
    for k in range(dim):
        if k == pivot:
            continue
        coefficients = _square_coefficients(alg, alg.basis_vector(k))
        if coefficients is None:
            raise NotQuadratic(f'1, e{k}, e{k}^2 are linearly independent')
        rho_off_pivot[k] = coefficients[1] / 2

    # e_pivot = (1 - sum_{k != pivot} u_k e_k) / u_pivot
    rho_pivot = (QQ.one - sum((unity[k] * r for k, r in rho_off_pivot.items()),
                              QQ.zero)) / unity[pivot]
    rho = tuple(rho_pivot if k == pivot else rho_off_pivot[k]
                for k in range(dim))

    basis = tuple(_sub(alg.basis_vector(k), scale_vector(r, unity))
                  for k, r in sorted(rho_off_pivot.items()))
    for v in basis:
        if rank_of_vectors([unity, alg.square(v)]) > 1:
            raise NotQuadratic(f'{util.vector_to_json(v)} is imaginary for '
                               'rho but its square is not real')

    rng = util.make_rng(util.derive_seed(seed, 'frobenius'))
    for _ in range(samples):
        x = util.random_vector(rng, dim)
        if rank_of_vectors([unity, x, alg.square(x)]) > 2:
            raise NotQuadratic(f'1, x, x^2 are linearly independent at '
                               f'x = {util.vector_to_json(x)}')
    return FrobeniusSplit(rho, basis, unity)


def scalar_product(alg: AlgebraPresentation, split: FrobeniusSplit,
                   x: Sequence, y: Sequence) -> ExactScalar:
    """<x, y> = 2 rho(x) rho(y) - rho(xy + yx) / 2."""
    symmetric = _add(alg.multiply(x, y), alg.multiply(y, x))
    return (2 * split.real_part(x) * split.real_part(y)
            - split.real_part(symmetric) / 2)


def gram_matrix(alg: AlgebraPresentation, split: FrobeniusSplit,
                vectors: Sequence[Sequence]) -> ExactMatrix:
    return ExactMatrix.from_rows([[scalar_product(alg, split, x, y)
                                   for y in vectors] for x in vectors])


# Vector products

@dataclasses.dataclass(frozen=True)
class VectorProduct:
    """v x w = iota(vw) on the imaginary part of H (n=3) or O (n=7)."""

    n: int
    tensor: Tensor

    def __call__(self, v: Sequence, w: Sequence) -> ExactVector:
        v, w = vector(v), vector(w)
        if len(v) != self.n or len(w) != self.n:
            raise DimensionMismatch(f'The vector product on R^{self.n} takes '
                                    f'{self.n}-vectors')
        result = [QQ.zero] * self.n
        for i, a in enumerate(v):
            if not a:
                continue
            for j, b in enumerate(w):
                if not b:
                    continue
                for k, c in enumerate(self.tensor[i][j]):
                    if c:
                        result[k] += a * b * c
        return tuple(result)


@functools.lru_cache()
def vector_product_map(n: int) -> VectorProduct:
    if n not in VECTOR_PRODUCT_DIMENSIONS:
        raise UnsupportedDimension(f'No vector product on R^{n} here '
                                   '(supported: 3, 7)')
    table = cayley_dickson_table(n + 1)
    tensor = tuple(tuple(table[i + 1][j + 1][1:] for j in range(n))
                   for i in range(n))
    return VectorProduct(n, tensor)


def vector_product(v: Sequence, w: Sequence) -> ExactVector:
    """iota(vw) for v, w in R^3 (quaternions) or R^7 (octonions)."""
    if len(v) != len(w):
        raise DimensionMismatch('Vector product of vectors of different '
                                'lengths')
    return vector_product_map(len(v))(v, w)


def g2_check(s: ExactMatrix) -> bool:
    """
    True iff s is orthogonal and preserves the vector product on R^7 (checked
    on all 21 basis pairs).
    """
    if s.shape != (7, 7):
        raise DimensionMismatch(f'G2 lives in 7x7 matrices, got {s.shape}')
    if not s.is_orthogonal():
        return False
    cross = vector_product_map(7)
    columns = [s.column(j) for j in range(7)]
    for i in range(7):
        for j in range(i + 1, 7):
            lhs = s.apply(cross.tensor[i][j])
            if lhs != cross(columns[i], columns[j]):
                return False
    return True


def quaternion_rotation(q: Sequence) -> ExactMatrix:
    """Matrix of x -> q x q^-1 on the imaginary quaternions (i, j, k)."""
    q = vector(q)
    norm = dot(q, q)
    if len(q) != 4 or not norm:
        raise InvariantViolation('Rotations come from nonzero quaternions')
    columns = []
    for e in range(1, 4):
        image = quat_mul(quat_mul(q, unit_vector(4, e)), _conjugate(q))
        columns.append(scale_vector(1 / norm, image[1:]))
    return ExactMatrix.from_columns(columns)


def extend_quaternion_automorphism(r: ExactMatrix) -> ExactMatrix:
    """
    nu of the octonion automorphism (a, b) -> (phi(a), phi(b)) where phi acts
    on the imaginary quaternions by the rotation `r`: diag(r, 1, r).
    """
    if r.shape != (3, 3) or not r.is_orthogonal() or r.det() != 1:
        raise InvariantViolation('Quaternion automorphisms are rotations '
                                 'of R^3')
    rows = [[QQ.zero] * 7 for _ in range(7)]
    rows[3][3] = QQ.one
    for i in range(3):
        for j in range(3):
            rows[i][j] = rows[i + 4][j + 4] = r.entry(i, j)
    return ExactMatrix.from_rows(rows)


def extended_quaternion_automorphism(q: Sequence) -> ExactMatrix:
    return extend_quaternion_automorphism(quaternion_rotation(q))


def table_dump(alg: AlgebraPresentation = None):
    """Structure-constant tensor of `alg` (the octonions by default)."""
    return (alg or octonions()).to_json()
