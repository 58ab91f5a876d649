"""
Liftings of the projective map induced by a dissident map, and its degree.

A lifting of eta_P is a polynomial map Phi whose components are homogeneous of
a common degree d, relatively prime, nonvanishing off the origin and with
[Phi(v)] = eta_P([v]). Since eta_P([v]) is the line orthogonal to
eta(v ^ v-perp), condition (b) linearizes to the polynomial identity

    <Phi(v), eta(v ^ (|v|^2 w - <v, w> v))> = 0

in (v, w). Its coefficients are linear in the unknown coefficients of Phi, so
every candidate degree gives an exact linear system.
"""

import collections
import dataclasses
import logging
from typing import List, Optional, Sequence, Tuple

from sympy.polys.domains import QQ

from . import settings, util
from .dissident import DissidentMap, eta_P_point
from .exact import (
    ExactMatrix, ExactVector, HomogeneousPoly, PolyVector, is_zero_vector,
    monomials, normalize_line, poly_content_gcd, polynomial_ring, same_line,
    square_norm_poly, vector,
)
from .exceptions import (
    AllZeroInput, AmbiguousKernel, DegenerateSpan, DegreeMismatch,
    DegreeOutOfRange, DimensionMismatch, NoLiftingFound, NvarsMismatch,
    OddnessViolation,
)

logger = logging.getLogger(__name__)

MIN_DEGREE, MAX_DEGREE = 1, 5


@dataclasses.dataclass(frozen=True)
class Lifting:
    """Phi = (phi_1, ..., phi_n), components of common degree `degree`."""

    n: int
    degree: int
    components: PolyVector

    def __post_init__(self):
        components = tuple(self.components)
        if len(components) != self.n:
            raise DimensionMismatch(f'A lifting on R^{self.n} has {self.n} '
                                    f'components, got {len(components)}')
        for p in components:
            if p.nvars != self.n:
                raise NvarsMismatch(f'Components must be polynomials in '
                                    f'{self.n} variables')
            if not p.is_zero() and p.degree != self.degree:
                raise DegreeMismatch(f'Component of degree {p.degree} in a '
                                     f'lifting of degree {self.degree}')
        object.__setattr__(self, 'components', components)

    @classmethod
    def from_coefficients(cls, n: int, degree: int,
                          coefficients: Sequence) -> 'Lifting':
        """Inverse of `coefficients()`."""
        basis = monomials(n, degree)
        coefficients = vector(coefficients)
        if len(coefficients) != n * len(basis):
            raise DimensionMismatch(f'A degree {degree} lifting on R^{n} has '
                                    f'{n * len(basis)} coefficients')
        return cls(n, degree, tuple(
            HomogeneousPoly.from_terms(
                n, degree,
                dict(zip(basis, coefficients[c * len(basis):
                                             (c + 1) * len(basis)])))
            for c in range(n)))

    @classmethod
    def linear(cls, matrix: ExactMatrix) -> 'Lifting':
        """Phi(v) = M v."""
        if not matrix.is_square():
            raise DimensionMismatch('Linear liftings come from square '
                                    'matrices')
        return cls(matrix.nrows, 1, tuple(HomogeneousPoly.linear_form(row)
                                          for row in matrix.rows))

    @classmethod
    def identity(cls, n: int) -> 'Lifting':
        return cls.linear(ExactMatrix.identity(n))

    @classmethod
    def zero(cls, n: int, degree: int = 1) -> 'Lifting':
        return cls(n, degree, (HomogeneousPoly.zero(n, degree),) * n)

    def coefficients(self) -> ExactVector:
        """Component-major coefficient vector over graded-lex monomials."""
        basis = monomials(self.n, self.degree)
        result = []
        for p in self.components:
            terms = p.terms
            result.extend(terms.get(m, QQ.zero) for m in basis)
        return tuple(result)

    def __call__(self, v: Sequence) -> ExactVector:
        return tuple(p(v) for p in self.components)

    def normalized(self) -> 'Lifting':
        return Lifting.from_coefficients(self.n, self.degree,
                                         normalize_line(self.coefficients()))

    def padded(self) -> 'Lifting':
        """|v|^2 Phi(v), a lifting candidate of degree d + 2."""
        norm = square_norm_poly(self.n)
        return Lifting(self.n, self.degree + 2,
                       tuple(p * norm for p in self.components))

    def to_json(self):
        return {
            'kind': 'lifting',
            'n': self.n,
            'degree': self.degree,
            'components': [util.poly_to_json(p) for p in self.components],
        }


def _check_degree(d: int):
    if not MIN_DEGREE <= d <= MAX_DEGREE:
        raise DegreeOutOfRange(f'Candidate degree {d} is outside '
                               f'[{MIN_DEGREE}, {MAX_DEGREE}]')


def _constraint_polynomials(eta: DissidentMap, reduced: bool):
    """
    g[i][c] = c-th coordinate of eta(v ^ w_i(v)) as a polynomial in v, with
    w_i(v) = |v|^2 e_i - v_i v, or e_i for the reduced identity.
    """
    n = eta.n
    R = polynomial_ring(n)
    x = R.gens
    norm = sum((g ** 2 for g in x), R.zero)
    result = []
    for i in range(n):
        if reduced:
            w = [R.one if k == i else R.zero for k in range(n)]
        else:
            w = [(norm if k == i else R.zero) - x[i] * x[k] for k in range(n)]
        g = [R.zero] * n
        for a in range(n):
            for b in range(n):
                if a == b or not w[b]:
                    continue
                product = x[a] * w[b]
                for c, t in enumerate(eta.tensor[a][b]):
                    if t:
                        g[c] += product * t
        result.append(g)
    return result


def build_constraint_system(eta: DissidentMap, d: int,
                            reduced: bool = False) -> ExactMatrix:
    """
    Exact linear system whose kernel holds the coefficient vectors of all
    degree-d solutions of the orthogonality identity.

    Rows are indexed by (i, monomial of degree d + 3) where i is the
    coordinate of w, columns by (component, monomial of degree d). Because
    eta(v ^ v) = 0 the full identity is |v|^2 <Phi(v), eta(v ^ w)> = 0; with
    `reduced` the factor |v|^2 is dropped and row monomials have degree d + 1.
    Both systems have the same kernel.
    """
    _check_degree(d)
    n = eta.n
    constraints = _constraint_polynomials(eta, reduced)
    unknowns = monomials(n, d)
    targets = monomials(n, d + (1 if reduced else 3))
    position = {m: k for k, m in enumerate(targets)}

    dod = collections.defaultdict(dict)
    for c in range(n):
        for p, m in enumerate(unknowns):
            column = c * len(unknowns) + p
            for i in range(n):
                for e, coefficient in constraints[i][c].items():
                    monomial = tuple(a + b for a, b in zip(m, e))
                    row = i * len(targets) + position[monomial]
                    dod[row][column] = coefficient
    shape = (n * len(targets), n * len(unknowns))
    return ExactMatrix.from_dod(dod, shape)


def reduce_common_factor(phi: Lifting) -> Lifting:
    """Divide every component by the content GCD."""
    g = poly_content_gcd(phi.components)
    if g.degree == 0:
        return phi
    return Lifting(phi.n, phi.degree - g.degree,
                   tuple(p.exquo(g) for p in phi.components))


def _sample_lines(eta: DissidentMap, samples: int, seed: int):
    rng = util.make_rng(util.derive_seed(seed, 'lifting'))
    points = []
    for _ in range(samples):
        v = util.random_vector(rng, eta.n)
        points.append((v, eta_P_point(eta, v)))
    return points


def _agrees(phi: Lifting, points) -> bool:
    for v, line in points:
        value = phi(v)
        if not same_line(value, line):
            return False
    return True


@dataclasses.dataclass(frozen=True)
class DegreeScan:
    """Solved lifting plus the kernel dimension met at each scanned degree."""

    lifting: Lifting
    kernel_dimensions: Tuple[int, ...]
    samples: int
    seed: int

    def to_json(self):
        return {
            'degree': self.lifting.degree,
            'kernel_dimensions': list(self.kernel_dimensions),
            'lifting': self.lifting.to_json(),
            'samples': self.samples,
        }


def scan_lifting(eta: DissidentMap, samples: int = None, seed: int = None,
                 max_degree: int = None) -> DegreeScan:
    """
    Scan d = 1, ..., max_degree and return the first validated lifting.

    Kernel elements failing the pointwise check against eta_P are
    discarded. Survivors are reduced by their content GCD and compared
    projectively; more than one at the first successful degree raises
    AmbiguousKernel, and so does a kernel of dimension above one in which
    no basis vector validates.
    """
    samples = settings.DEFAULT_SAMPLES if samples is None else samples
    seed = settings.DEFAULT_SEED if seed is None else seed
    max_degree = settings.DEFAULT_MAX_DEGREE if max_degree is None \
        else max_degree
    _check_degree(max_degree)
    if samples < 1:
        raise ValueError('At least one validation sample is needed')

    try:
        points = _sample_lines(eta, samples, seed)
    except DegenerateSpan as err:
        raise NoLiftingFound(f'eta is not dissident, so eta_P is undefined: '
                             f'{err}') from err

    dimensions = []
    for d in range(MIN_DEGREE, max_degree + 1):
        system = build_constraint_system(eta, d, reduced=True)
        kernel = system.kernel()
        dimensions.append(len(kernel))
        logger.info('Degree %d: %d x %d system, kernel dimension %d',
                    d, system.nrows, system.ncols, len(kernel))

        found: List[Lifting] = []
        for coefficients in kernel:
            phi = Lifting.from_coefficients(eta.n, d, coefficients)
            if not _agrees(phi, points):
                continue
            phi = reduce_common_factor(phi).normalized()
            if phi not in found:
                found.append(phi)
        if len(found) > 1:
            raise AmbiguousKernel(f'{len(found)} projectively distinct '
                                  f'liftings survive at degree {d}')
        if found:
            return DegreeScan(found[0], tuple(dimensions), samples, seed)
        if len(kernel) > 1:
            raise AmbiguousKernel(f'No basis vector of the {len(kernel)}-'
                                  f'dimensional kernel at degree {d} '
                                  'passed validation')
        if kernel:
            logger.debug('Degree %d: no kernel element passed validation', d)

    raise NoLiftingFound(f'No validated lifting of degree at most '
                         f'{max_degree}')


def solve_lifting(eta: DissidentMap, samples: int = None, seed: int = None,
                  max_degree: int = None) -> Lifting:
    return scan_lifting(eta, samples, seed, max_degree).lifting


def degree(eta: DissidentMap, samples: int = None, seed: int = None,
           max_degree: int = None) -> int:
    """deg(eta) := deg(Phi). Always odd on R^7."""
    return checked_degree(scan_lifting(eta, samples, seed, max_degree))


def checked_degree(scan: DegreeScan) -> int:
    d = scan.lifting.degree
    if scan.lifting.n == 7 and d % 2 == 0:
        raise OddnessViolation(f'Computed degree {d} of a dissident map on '
                               'R^7 is even')
    return d


@dataclasses.dataclass(frozen=True)
class LiftingReport:
    """Outcome of checking conditions (a), (b) and (c) on a candidate."""

    homogeneous: bool
    orthogonality_identity: bool
    nonvanishing: bool
    line_agreement: bool
    relatively_prime: bool
    content_gcd: Optional[HomogeneousPoly]
    samples: int
    seed: int

    @property
    def passed(self) -> bool:
        return (self.homogeneous and self.orthogonality_identity
                and self.nonvanishing and self.line_agreement
                and self.relatively_prime)

    def to_json(self):
        return {
            'homogeneous': self.homogeneous,
            'orthogonality_identity': self.orthogonality_identity,
            'nonvanishing': self.nonvanishing,
            'line_agreement': self.line_agreement,
            'relatively_prime': self.relatively_prime,
            'content_gcd': (None if self.content_gcd is None
                            else util.poly_to_json(self.content_gcd)),
            'passed': self.passed,
            'samples': self.samples,
            'seed': self.seed,
            'confidence': ('nonvanishing and line agreement hold at every '
                           'sampled point; the identity and the GCD are '
                           'exact'),
        }


def verify_lifting(eta: DissidentMap, phi: Lifting, samples: int = None,
                   seed: int = None) -> LiftingReport:
    samples = settings.DEFAULT_SAMPLES if samples is None else samples
    seed = settings.DEFAULT_SEED if seed is None else seed
    if phi.n != eta.n:
        raise DimensionMismatch(f'Cannot check a lifting on R^{phi.n} '
                                f'against a map on R^{eta.n}')

    homogeneous = phi.degree >= MIN_DEGREE and all(
        p.is_zero() or p.degree == phi.degree for p in phi.components)

    R = polynomial_ring(eta.n)
    orthogonal = True
    for g in _constraint_polynomials(eta, reduced=False):
        pairing = sum((p.element * q for p, q in zip(phi.components, g)),
                      R.zero)
        if pairing:
            orthogonal = False
            break

    nonvanishing = line_agreement = True
    rng = util.make_rng(util.derive_seed(seed, 'verify'))
    for _ in range(samples):
        v = util.random_vector(rng, eta.n)
        value = phi(v)
        if is_zero_vector(value):
            nonvanishing = line_agreement = False
            break
        try:
            if normalize_line(value) != eta_P_point(eta, v):
                line_agreement = False
        except DegenerateSpan:
            line_agreement = False

    try:
        gcd = poly_content_gcd(phi.components)
    except AllZeroInput:
        gcd = None
    coprime = gcd is not None and gcd.degree == 0

    report = LiftingReport(homogeneous, orthogonal, nonvanishing,
                           line_agreement, coprime, gcd, samples, seed)
    if not report.passed:
        logger.info('Lifting of degree %d fails verification', phi.degree)
    return report
