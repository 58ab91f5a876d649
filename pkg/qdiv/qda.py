"""
Quadratic division algebras built from dissident triples and quadruples.

make_qda realizes the construction

    (a, v)(b, w) = (ab - <v, w> + xi(v ^ w), aw + bv + eta(v ^ w))

on R + R^n over the basis (1, e1, ..., en); recover_triple runs it backwards
through the Frobenius decomposition of a quadratic algebra.
"""

import itertools
import logging
import math
from typing import List

from sympy.polys.domains import QQ

from . import settings, util
from .algebra import AlgebraPresentation, multiplication_operator
from .dissident import (
    DissidentMap, DissidentTriple, FalsificationResult, MatrixQuadruple,
    quadruple_eta,
)
from .exact import (
    ExactMatrix, ExactScalar, ExactVector, polynomial_ring, scale_vector,
    unit_vector,
)
from .exceptions import (
    BadDimension, DimensionMismatch, InvariantViolation, IrrationalBasis,
    NotUnital,
)
from .lifting import degree
from .octonion import frobenius_split, gram_matrix, scalar_product

logger = logging.getLogger(__name__)

RECOVERABLE_DIMENSIONS = (4, 8)


def make_qda(t: DissidentTriple) -> AlgebraPresentation:
    n = t.n

    def product(i, j):
        if i == 0:
            return unit_vector(n + 1, j)
        if j == 0:
            return unit_vector(n + 1, i)
        real = t.xi.entry(i - 1, j - 1) - (1 if i == j else 0)
        return (real,) + t.eta.tensor[i - 1][j - 1]

    return AlgebraPresentation.from_product(n + 1, product,
                                            unit_vector(n + 1, 0),
                                            f'F(R^{n}, xi, eta)')


def quadruple_algebra(q: MatrixQuadruple) -> AlgebraPresentation:
    """(a, v)(b, w) = (ab - v^t w + v^t A w, aw + bv + (B + C)D(Dv x Dw))."""
    eta = quadruple_eta(q)

    def product(i, j):
        if i == 0:
            return unit_vector(8, j)
        if j == 0:
            return unit_vector(8, i)
        real = q.A.entry(i - 1, j - 1) - (1 if i == j else 0)
        return (real,) + eta.tensor[i - 1][j - 1]

    return AlgebraPresentation.from_product(8, product, unit_vector(8, 0),
                                            'H(A, B, C, D)')


# Test algebras which are not division algebras

def diagonal_algebra(n: int) -> AlgebraPresentation:
    """R x ... x R with componentwise multiplication."""
    return AlgebraPresentation.from_product(
        n, lambda i, j: unit_vector(n, i) if i == j else (0,) * n,
        (1,) * n, f'R^{n} (componentwise)')


def matrix_algebra(m: int) -> AlgebraPresentation:
    """R^{m x m} over the matrix units E_ab, indexed a * m + b."""
    dim = m * m

    def product(i, j):
        a, b = divmod(i, m)
        c, d = divmod(j, m)
        return unit_vector(dim, a * m + d) if b == c else (0,) * dim

    unity = tuple(1 if i // m == i % m else 0 for i in range(dim))
    return AlgebraPresentation.from_product(dim, product, unity,
                                            f'R^({m}x{m})')


# Recovering triples

def _rational_sqrt(a: ExactScalar):
    """Exact square root of a positive rational, or None."""
    numer, denom = int(QQ.numer(a)), int(QQ.denom(a))
    if numer <= 0:
        return None
    p, q = math.isqrt(numer), math.isqrt(denom)
    if p * p != numer or q * q != denom:
        return None
    return QQ(p, q)


def _gram_schmidt(alg, split, basis) -> List[ExactVector]:
    orthogonal = []
    for b in basis:
        u = b
        for prev in orthogonal:
            c = (scalar_product(alg, split, b, prev)
                 / scalar_product(alg, split, prev, prev))
            u = tuple(x - c * y for x, y in zip(u, prev))
        if not scalar_product(alg, split, u, u) > 0:
            raise InvariantViolation('The scalar product on the imaginary '
                                     'hyperplane is not positive definite')
        orthogonal.append(u)
    return orthogonal


def recover_triple(alg: AlgebraPresentation,
                   seed: int = None) -> DissidentTriple:
    """
    (V, xi, eta) with xi(v ^ w) = (rho(vw) - rho(wv)) / 2 and
    eta(v ^ w) = iota(vw) in an orthonormal basis of V.

    The basis comes from exact Gram-Schmidt. If some square norm is not the
    square of a rational, IrrationalBasis carries the orthogonal basis and
    its square norms instead.
    """
    split = frobenius_split(alg, seed=seed)
    if alg.dim not in RECOVERABLE_DIMENSIONS:
        raise BadDimension(f'Triples come from algebras of dimension 4 or 8, '
                           f'not {alg.dim}')
    orthogonal = _gram_schmidt(alg, split, split.basis)
    norms = [scalar_product(alg, split, u, u) for u in orthogonal]
    roots = [_rational_sqrt(a) for a in norms]
    if any(r is None for r in roots):
        raise IrrationalBasis(tuple(orthogonal), tuple(norms))
    basis = [scale_vector(1 / r, u) for r, u in zip(roots, orthogonal)]

    n = alg.dim - 1
    xi_rows = [[QQ.zero] * n for _ in range(n)]
    tensor = [[(QQ.zero,) * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            vw = alg.multiply(basis[i], basis[j])
            wv = alg.multiply(basis[j], basis[i])
            xi_rows[i][j] = (split.real_part(vw) - split.real_part(wv)) / 2
            imaginary = split.imaginary_part(vw)
            tensor[i][j] = tuple(scalar_product(alg, split, imaginary, f)
                                 for f in basis)
    return DissidentTriple(n, ExactMatrix.from_rows(xi_rows),
                           DissidentMap(n, tuple(tuple(r) for r in tensor)))


def frobenius_gram(alg: AlgebraPresentation, seed: int = None) -> ExactMatrix:
    """Gram matrix of <., .> on the Frobenius basis of V."""
    split = frobenius_split(alg, seed=seed)
    return gram_matrix(alg, split, split.basis)


def imaginary_eta(alg: AlgebraPresentation, seed: int = None) -> DissidentMap:
    """eta(v ^ w) = iota(vw) in the Frobenius basis of V, orthonormal or not"""
    split = frobenius_split(alg, seed=seed)
    if alg.dim not in RECOVERABLE_DIMENSIONS:
        raise BadDimension(f'Degrees are defined for algebras of dimension '
                           f'4 or 8, not {alg.dim}')
    basis = split.basis
    return DissidentMap.from_function(
        alg.dim - 1, lambda i, j: split.coordinates(
            split.imaginary_part(alg.multiply(basis[i], basis[j]))))


def algebra_degree(alg: AlgebraPresentation, samples: int = None,
                   seed: int = None, max_degree: int = None) -> int:
    """deg(A) := deg(eta); degrees do not depend on the basis of V."""
    return degree(imaginary_eta(alg, seed), samples=samples, seed=seed,
                  max_degree=max_degree)


# Checks

def division_check(alg: AlgebraPresentation, trials: int = None,
                   seed: int = None) -> FalsificationResult:
    """
    Sample nonzero a and look for det(L_a) = 0 or det(R_a) = 0. A clean run
    is evidence, never a certificate.
    """
    trials = settings.DEFAULT_TRIALS if trials is None else trials
    seed = settings.DEFAULT_SEED if seed is None else seed
    if trials < 1:
        raise ValueError('At least one trial is needed')
    rng = util.make_rng(util.derive_seed(seed, 'division'))
    for _ in range(trials):
        a = util.random_vector(rng, alg.dim)
        for side in ('left', 'right'):
            if not multiplication_operator(alg, a, side).det:
                logger.info('%s multiplication by %s is singular',
                            side.capitalize(), util.vector_to_json(a))
                return FalsificationResult(trials, seed, (a,))
    return FalsificationResult(trials, seed)


def _generic_square(alg: AlgebraPresentation):
    """x and x^2 for the generic element x = sum t_k e_k."""
    R = polynomial_ring(alg.dim)
    t = R.gens
    square = [R.zero] * alg.dim
    for i in range(alg.dim):
        for j in range(alg.dim):
            for k, c in enumerate(alg.table[i][j]):
                if c:
                    square[k] += t[i] * t[j] * c
    return list(t), square


def _minor(rows, columns):
    (a, b, c) = columns
    r0, r1, r2 = rows
    return (r0[a] * (r1[b] * r2[c] - r1[c] * r2[b])
            - r0[b] * (r1[a] * r2[c] - r1[c] * r2[a])
            + r0[c] * (r1[a] * r2[b] - r1[b] * r2[a]))


def quadratic_check(alg: AlgebraPresentation) -> bool:
    """
    Symbolic certificate: every 3x3 minor of [1; x; x^2] vanishes as a
    polynomial in the coordinates of the generic element x.
    """
    if not alg.is_unital():
        raise NotUnital(f'{alg.name or "Algebra"} has no two-sided unity')
    R = polynomial_ring(alg.dim)
    x, square = _generic_square(alg)
    unity = [R(c) for c in alg.unity]
    rows = (unity, x, square)
    for columns in itertools.combinations(range(alg.dim), 3):
        if _minor(rows, columns):
            logger.debug('1, x, x^2 are generically independent on '
                         'coordinates %s', columns)
            return False
    return True


def fimage_quadratic_identity(t: DissidentTriple) -> bool:
    """x^2 = 2ax - (a^2 + |v|^2) 1 for the generic x = (a, v) of make_qda(t)"""
    alg = make_qda(t)
    x, square = _generic_square(alg)
    alpha = x[0]
    norm = sum((g ** 2 for g in x), -alpha ** 2)
    expected = [2 * alpha * g for g in x]
    expected[0] -= alpha ** 2 + norm
    return square == expected


def algebra_morphism_check(src: AlgebraPresentation, dst: AlgebraPresentation,
                           f: ExactMatrix) -> bool:
    """True iff f(e_i e_j) = f(e_i) f(e_j) for all basis pairs."""
    if f.shape != (dst.dim, src.dim):
        raise DimensionMismatch(f'A map from dimension {src.dim} to '
                                f'{dst.dim} needs a {dst.dim}x{src.dim} '
                                f'matrix, got {f.shape}')
    if f.is_zero():
        return False
    images = [f.column(j) for j in range(src.dim)]
    for i in range(src.dim):
        for j in range(src.dim):
            if f.apply(src.table[i][j]) != dst.multiply(images[i], images[j]):
                return False
    return True


def extend_by_unity(phi: ExactMatrix) -> ExactMatrix:
    """diag(1, phi), the algebra map (a, v) -> (a, phi(v))."""
    n = phi.nrows
    rows = [unit_vector(n + 1, 0)]
    rows.extend((QQ.zero,) + row for row in phi.rows)
    return ExactMatrix.from_rows(rows)

