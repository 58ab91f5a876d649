"""
Dissident maps, dissident triples and matrix quadruples.

A dissident map is stored as its antisymmetric structure tensor
t[i][j][k] with eta(e_i ^ e_j) = sum_k t[i][j][k] e_k.
"""

import dataclasses
import logging
import random
from typing import Callable, Optional, Sequence, Tuple

from sympy.polys.domains import QQ

from . import settings, util
from .algebra import Tensor
from .exact import (
    ExactMatrix, ExactVector, dot, is_zero_vector, normalize_line,
    rank_of_vectors, unit_vector, vector,
)
from .exceptions import (
    DegenerateSpan, DimensionMismatch, InvariantViolation,
    UnsupportedDimension, ZeroVector,
)
from .octonion import VECTOR_PRODUCT_DIMENSIONS, g2_check, vector_product_map

logger = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class DissidentMap:
    n: int
    tensor: Tensor

    def __post_init__(self):
        if self.n not in VECTOR_PRODUCT_DIMENSIONS:
            raise UnsupportedDimension(f'Dissident maps are built on R^3 and '
                                       f'R^7 only, not R^{self.n}')
        tensor = tuple(tuple(vector(entry) for entry in row)
                       for row in self.tensor)
        if len(tensor) != self.n or any(
                len(row) != self.n or any(len(e) != self.n for e in row)
                for row in tensor):
            raise DimensionMismatch(f'A map on R^{self.n} needs an '
                                    f'{self.n}x{self.n}x{self.n} tensor')
        for i in range(self.n):
            for j in range(self.n):
                if tensor[i][j] != tuple(-a for a in tensor[j][i]):
                    raise InvariantViolation(
                        f'eta is not antisymmetric at (e{i + 1}, e{j + 1})')
        object.__setattr__(self, 'tensor', tensor)

    @classmethod
    def from_function(cls, n: int,
                      f: Callable[[int, int], Sequence]) -> 'DissidentMap':
        """Tabulate eta(e_i ^ e_j) = f(i, j) for i < j, antisymmetrically."""
        rows = [[(QQ.zero,) * n for _ in range(n)] for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                image = vector(f(i, j))
                rows[i][j] = image
                rows[j][i] = tuple(-a for a in image)
        return cls(n, tuple(tuple(row) for row in rows))

    @classmethod
    def zero(cls, n: int) -> 'DissidentMap':
        return cls.from_function(n, lambda i, j: (0,) * n)

    def __call__(self, v: Sequence, w: Sequence) -> ExactVector:
        return eval_eta(self, v, w)

    def to_json(self):
        return {'kind': 'dissident_map', 'n': self.n,
                'tensor': util.tensor_to_json(self.tensor)}


def vector_product_eta(n: int) -> DissidentMap:
    """The vector product on R^n as a dissident map."""
    return DissidentMap(n, vector_product_map(n).tensor)


def eval_eta(eta: DissidentMap, v: Sequence, w: Sequence) -> ExactVector:
    v, w = vector(v), vector(w)
    if len(v) != eta.n or len(w) != eta.n:
        raise DimensionMismatch(f'eta acts on {eta.n}-vectors, got lengths '
                                f'{len(v)} and {len(w)}')
    result = [QQ.zero] * eta.n
    for i, a in enumerate(v):
        if not a:
            continue
        for j, b in enumerate(w):
            if not b or i == j:
                continue
            for k, c in enumerate(eta.tensor[i][j]):
                if c:
                    result[k] += a * b * c
    return tuple(result)


@dataclasses.dataclass(frozen=True)
class DissidentTriple:
    """(R^n, xi, eta) with xi(v ^ w) = v^t xi w."""

    n: int
    xi: ExactMatrix
    eta: DissidentMap

    def __post_init__(self):
        if self.xi.shape != (self.n, self.n) or self.eta.n != self.n:
            raise DimensionMismatch(f'Triple on R^{self.n} needs an '
                                    f'{self.n}x{self.n} form and a map on '
                                    f'R^{self.n}')
        if not self.xi.is_antisymmetric():
            raise InvariantViolation('xi is not antisymmetric')

    def to_json(self):
        return {'kind': 'dissident_triple', 'n': self.n,
                'xi': util.matrix_to_json(self.xi),
                'eta': util.tensor_to_json(self.eta.tensor)}


@dataclasses.dataclass(frozen=True)
class MatrixQuadruple:
    """
    (A, B, C, D): A and B antisymmetric, C positive definite symmetric, D
    positive definite symmetric with determinant 1, all 7x7.
    """

    A: ExactMatrix
    B: ExactMatrix
    C: ExactMatrix
    D: ExactMatrix

    def __post_init__(self):
        for label in 'ABCD':
            if getattr(self, label).shape != (7, 7):
                raise InvariantViolation(f'{label} is not 7x7')
        if not self.A.is_antisymmetric():
            raise InvariantViolation('A is not antisymmetric')
        if not self.B.is_antisymmetric():
            raise InvariantViolation('B is not antisymmetric')
        if not self.C.is_positive_definite():
            raise InvariantViolation('C is not positive definite symmetric')
        if not self.D.is_positive_definite():
            raise InvariantViolation('D is not positive definite symmetric')
        if not self.D.has_unit_determinant():
            raise InvariantViolation('D does not have determinant 1')

    @classmethod
    def identity(cls) -> 'MatrixQuadruple':
        """(0, 0, I, I), which the functor H sends to the octonions."""
        zero, one = ExactMatrix.zeros(7, 7), ExactMatrix.identity(7)
        return cls(zero, zero, one, one)

    def to_json(self):
        return {'kind': 'matrix_quadruple',
                'A': util.matrix_to_json(self.A),
                'B': util.matrix_to_json(self.B),
                'C': util.matrix_to_json(self.C),
                'D': util.matrix_to_json(self.D)}


def quadruple_eta(q: MatrixQuadruple) -> DissidentMap:
    """eta(v ^ w) = (B + C) D (Dv x Dw)."""
    cross = vector_product_map(7)
    outer = (q.B + q.C) @ q.D
    columns = [q.D.column(j) for j in range(7)]
    return DissidentMap.from_function(
        7, lambda i, j: outer.apply(cross(columns[i], columns[j])))


def quadruple_to_triple(q: MatrixQuadruple) -> DissidentTriple:
    return DissidentTriple(7, q.A, quadruple_eta(q))


def conjugate_quadruple(q: MatrixQuadruple,
                        s: ExactMatrix) -> MatrixQuadruple:
    """(SAS^t, SBS^t, SCS^t, SDS^t)."""
    st = s.transpose()
    return MatrixQuadruple(s @ q.A @ st, s @ q.B @ st, s @ q.C @ st,
                           s @ q.D @ st)


def quadruple_morphism_check(src: MatrixQuadruple, dst: MatrixQuadruple,
                             s: ExactMatrix) -> bool:
    return g2_check(s) and conjugate_quadruple(src, s) == dst


def random_quadruple(rng: random.Random,
                     height: int = None) -> MatrixQuadruple:
    """
    A = random antisymmetric, B = random antisymmetric, C = L^t L + I and
    D = U^t diag(d) U with U unit upper triangular and prod(d) = 1.
    """
    a = util.random_antisymmetric(rng, 7, height)
    b = util.random_antisymmetric(rng, 7, height)
    low = util.random_matrix(rng, 7, 7, height)
    c = low.transpose() @ low + ExactMatrix.identity(7)

    upper = [[QQ.one if i == j else
              (QQ(rng.randint(-2, 2)) if j > i else QQ.zero)
              for j in range(7)] for i in range(7)]
    u = ExactMatrix.from_rows(upper)
    diagonal = [QQ(rng.randint(1, 4), rng.randint(1, 4)) for _ in range(6)]
    product = QQ.one
    for d in diagonal:
        product *= d
    diagonal.append(1 / product)
    d = u.transpose() @ ExactMatrix.diag(diagonal) @ u
    return MatrixQuadruple(a, b, c, d)


def random_triple(rng: random.Random, n: int = 7,
                  height: int = None) -> DissidentTriple:
    """
    Random triple on R^7 from a random quadruple; on R^3 the map is
    (B + C)(v x w), dissident because C is positive definite.
    """
    if n == 7:
        return quadruple_to_triple(random_quadruple(rng, height))
    if n != 3:
        raise UnsupportedDimension(f'No random triples on R^{n}')
    low = util.random_matrix(rng, 3, 3, height)
    outer = (util.random_antisymmetric(rng, 3, height)
             + low.transpose() @ low + ExactMatrix.identity(3))
    cross = vector_product_map(3)
    eta = DissidentMap.from_function(
        3, lambda i, j: outer.apply(cross.tensor[i][j]))
    return DissidentTriple(3, util.random_antisymmetric(rng, 3, height), eta)


def transport_eta(eta: DissidentMap, sigma: ExactMatrix) -> DissidentMap:
    """eta'(v ^ w) = sigma eta(sigma^-1 v ^ sigma^-1 w)."""
    if sigma.shape != (eta.n, eta.n):
        raise DimensionMismatch(f'Cannot transport a map on R^{eta.n} along '
                                f'a {sigma.shape} matrix')
    inverse = sigma.inverse()
    columns = [inverse.column(j) for j in range(eta.n)]
    return DissidentMap.from_function(
        eta.n, lambda i, j: sigma.apply(eval_eta(eta, columns[i],
                                                 columns[j])))


@dataclasses.dataclass(frozen=True)
class FalsificationResult:
    """Outcome of a sampled search; `witness` is None if none was found."""

    trials: int
    seed: int
    witness: Optional[Tuple[ExactVector, ...]] = None

    @property
    def passed(self) -> bool:
        return self.witness is None

    def to_json(self):
        report = {'trials': self.trials, 'seed': self.seed,
                  'outcome': ('no_counterexample' if self.passed
                              else 'counterexample')}
        if not self.passed:
            report['witness'] = [util.vector_to_json(v) for v in self.witness]
        return report


def dissidence_falsify(eta: DissidentMap, trials: int = None,
                       seed: int = None) -> FalsificationResult:
    """
    Look for independent v, w with v, w, eta(v ^ w) dependent. Dissidence is
    only ever falsified, never certified.
    """
    trials = settings.DEFAULT_TRIALS if trials is None else trials
    seed = settings.DEFAULT_SEED if seed is None else seed
    if trials < 1:
        raise ValueError('At least one trial is needed')
    rng = util.make_rng(util.derive_seed(seed, 'dissidence'))
    for _ in range(trials):
        v, w = util.random_independent_pair(rng, eta.n)
        if rank_of_vectors([v, w, eval_eta(eta, v, w)]) < 3:
            logger.info('eta is not dissident at v=%s, w=%s',
                        util.vector_to_json(v), util.vector_to_json(w))
            return FalsificationResult(trials, seed, (v, w))
    return FalsificationResult(trials, seed)


def perpendicular_spanning_set(v: Sequence) -> Tuple[ExactVector, ...]:
    """w_i = |v|^2 e_i - v_i v, which span v-perp redundantly."""
    v = vector(v)
    norm = dot(v, v)
    n = len(v)
    return tuple(tuple(norm * e - v[i] * a
                       for e, a in zip(unit_vector(n, i), v))
                 for i in range(n))


def eta_P_point(eta: DissidentMap, v: Sequence) -> ExactVector:
    """The line (eta(v ^ v-perp))-perp, normalized."""
    v = vector(v)
    if len(v) != eta.n:
        raise DimensionMismatch(f'eta acts on {eta.n}-vectors')
    if is_zero_vector(v):
        raise ZeroVector('eta_P is not defined at the zero vector')
    images = [eval_eta(eta, v, w) for w in perpendicular_spanning_set(v)]
    kernel = ExactMatrix.from_rows(images).kernel()
    if len(kernel) != 1:
        raise DegenerateSpan(f'eta(v ^ v-perp) has codimension {len(kernel)} '
                             f'at v = {util.vector_to_json(v)}')
    return kernel[0]


def injectivity_probe(eta: DissidentMap, count: int = 32,
                      seed: int = None) -> FalsificationResult:
    """
    Sample `count` distinct lines and look for two with the same image under
    eta_P, which would contradict bijectivity.
    """
    seed = settings.DEFAULT_SEED if seed is None else seed
    rng = util.make_rng(util.derive_seed(seed, 'injectivity'))
    images = {}
    while len(images) < count:
        line = normalize_line(util.random_vector(rng, eta.n))
        if line in images:
            continue
        image = eta_P_point(eta, line)
        for other, other_image in images.items():
            if other_image == image:
                return FalsificationResult(count, seed, (other, line))
        images[line] = image
    return FalsificationResult(count, seed)


def triple_morphism_check(src: DissidentTriple, dst: DissidentTriple,
                          phi: ExactMatrix) -> bool:
    """
    True iff phi is orthogonal, xi = xi'(phi ^ phi) and
    phi eta = eta'(phi ^ phi) on every basis pair.
    """
    if src.n != dst.n or phi.shape != (src.n, src.n):
        raise DimensionMismatch(f'Cannot map R^{src.n} to R^{dst.n} with a '
                                f'{phi.shape} matrix')
    if not phi.is_orthogonal():
        return False
    columns = [phi.column(j) for j in range(src.n)]
    for i in range(src.n):
        for j in range(i + 1, src.n):
            if src.xi.entry(i, j) != dst.xi.bilinear(columns[i], columns[j]):
                return False
            lhs = phi.apply(src.eta.tensor[i][j])
            if lhs != eval_eta(dst.eta, columns[i], columns[j]):
                return False
    return True

