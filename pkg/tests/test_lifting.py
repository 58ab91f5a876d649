from unittest.mock import patch

import pytest
from hypothesis import given, settings

from qdiv import util
from qdiv.dissident import (
    DissidentMap, MatrixQuadruple, quadruple_eta, transport_eta,
    vector_product_eta,
)
from qdiv.exact import (
    ExactMatrix, HomogeneousPoly, monomials, square_norm_poly,
)
from qdiv.exceptions import (
    AmbiguousKernel, DegreeMismatch, DegreeOutOfRange, DimensionMismatch,
    NoLiftingFound, NvarsMismatch, OddnessViolation,
)
from qdiv.lifting import (
    DegreeScan, Lifting, build_constraint_system, checked_degree, degree,
    reduce_common_factor, scan_lifting, solve_lifting, verify_lifting,
)

from . import testUtil as qdiv_test


def annihilates(system, phi):
    column = ExactMatrix.from_columns([phi.coefficients()])
    return (system @ column).is_zero()


def expected_quadruple_lifting(q):
    """Phi(v) = M^-T D v with M = (B + C) D."""
    m = (q.B + q.C) @ q.D
    return Lifting.linear(m.inverse().transpose() @ q.D).normalized()


def test_lifting_validation():
    x = [HomogeneousPoly.variable(3, i) for i in range(3)]
    with pytest.raises(DimensionMismatch):
        Lifting(3, 1, x[:2])
    with pytest.raises(DegreeMismatch):
        Lifting(3, 2, x)
    with pytest.raises(NvarsMismatch):
        Lifting(7, 1, [x[0]] * 7)
    with pytest.raises(DimensionMismatch):
        Lifting.from_coefficients(3, 1, [1] * 8)
    with pytest.raises(DimensionMismatch):
        Lifting.linear(ExactMatrix.zeros(2, 3))


def test_coefficients_layout():
    phi = Lifting.identity(3)
    assert phi.coefficients() == (1, 0, 0, 0, 1, 0, 0, 0, 1)
    assert Lifting.from_coefficients(3, 1, phi.coefficients()) == phi
    assert phi((1, 2, 3)) == (1, 2, 3)


def test_normalized_and_padded():
    phi = Lifting.linear(ExactMatrix.identity(3).scale(-4))
    assert phi.normalized() == Lifting.identity(3)
    padded = Lifting.identity(3).padded()
    assert padded.degree == 3
    assert padded((1, 1, 0)) == (2, 2, 0)
    assert reduce_common_factor(padded) == Lifting.identity(3)


@settings(deadline=None, max_examples=25)
@given(qdiv_test.rational_vectors(7, nonzero=False),
       qdiv_test.nonzero_rationals())
def test_liftings_are_homogeneous(v, c):
    phi = Lifting.identity(7).padded()
    scaled = phi(tuple(c * a for a in v))
    assert scaled == tuple(c ** 3 * a for a in phi(v))


def test_lifting_to_json():
    report = Lifting.identity(7).to_json()
    assert report['kind'] == 'lifting'
    assert report['degree'] == 1
    assert report['components'][0] == [{'exponents': [1, 0, 0, 0, 0, 0, 0],
                                        'coeff': '1'}]


def test_system_shape_for_the_zero_map():
    system = build_constraint_system(DissidentMap.zero(7), 5)
    assert system.shape == (21021, 3234)
    assert system.is_zero()
    reduced = build_constraint_system(DissidentMap.zero(7), 5, reduced=True)
    assert reduced.shape == (7 * len(monomials(7, 6)), 3234)


@pytest.mark.parametrize('d', [0, 6])
def test_system_degree_range(d):
    with pytest.raises(DegreeOutOfRange):
        build_constraint_system(vector_product_eta(7), d)


def test_identity_solves_the_cross_product_system():
    eta = vector_product_eta(7)
    stretch = Lifting.linear(ExactMatrix.diag([1, 2, 1, 1, 1, 1, 1]))
    for reduced in (False, True):
        system = build_constraint_system(eta, 1, reduced=reduced)
        assert annihilates(system, Lifting.identity(7))
        assert not annihilates(system, stretch)


def test_padding_stays_in_the_kernel():
    eta = vector_product_eta(7)
    system = build_constraint_system(eta, 3, reduced=True)
    assert annihilates(system, Lifting.identity(7).padded())


@pytest.mark.parametrize('d', [1, 2])
def test_reduced_and_full_systems_have_the_same_kernel(d):
    eta = vector_product_eta(3)
    assert (build_constraint_system(eta, d).kernel()
            == build_constraint_system(eta, d, reduced=True).kernel())


@pytest.mark.parametrize('eta', [
    vector_product_eta(7),
    vector_product_eta(3),
    quadruple_eta(MatrixQuadruple.identity()),
])
def test_vector_products_lift_to_the_identity(eta):
    assert solve_lifting(eta, samples=16) == Lifting.identity(eta.n)


def test_random_quadruple_lifting():
    q = qdiv_test.random_quadruples(1, seed=11)[0]
    phi = solve_lifting(quadruple_eta(q), samples=16, seed=11)
    assert phi == expected_quadruple_lifting(q)


def test_scan_reports_kernel_dimensions():
    scan = scan_lifting(vector_product_eta(7), samples=8, seed=3)
    assert scan.kernel_dimensions == (1,)
    assert scan.to_json()['degree'] == 1
    assert scan.to_json()['samples'] == 8
    assert degree(vector_product_eta(7), samples=8) == 1


def test_scan_arguments():
    with pytest.raises(DegreeOutOfRange):
        scan_lifting(vector_product_eta(7), max_degree=6)
    with pytest.raises(ValueError):
        scan_lifting(vector_product_eta(7), samples=0)


def test_zero_map_has_no_lifting():
    with pytest.raises(NoLiftingFound):
        scan_lifting(DissidentMap.zero(7), samples=4, max_degree=1)


def test_ambiguous_kernel():
    # With no validation points every kernel element of the zero map passes
    with patch('qdiv.lifting._sample_lines', return_value=[]):
        with pytest.raises(AmbiguousKernel):
            scan_lifting(DissidentMap.zero(7), max_degree=1)


def test_unvalidated_kernels():
    # the degree-one kernel of the zero map has dimension 49
    with patch('qdiv.lifting._sample_lines', return_value=[]):
        with patch('qdiv.lifting._agrees', return_value=False):
            with pytest.raises(AmbiguousKernel):
                scan_lifting(DissidentMap.zero(7), max_degree=1)
    with patch('qdiv.lifting._agrees', return_value=False):
        with pytest.raises(NoLiftingFound):
            scan_lifting(vector_product_eta(7), samples=4, max_degree=1)


def test_even_degree_on_r7_is_rejected():
    scan = DegreeScan(Lifting.zero(7, 2), (0, 1), 1, 0)
    with pytest.raises(OddnessViolation):
        checked_degree(scan)
    assert checked_degree(DegreeScan(Lifting.zero(3, 2), (0, 1), 1, 0)) == 2


def test_verify_identity():
    report = verify_lifting(vector_product_eta(7), Lifting.identity(7),
                            samples=16, seed=2)
    assert report.passed
    assert report.content_gcd == HomogeneousPoly.constant(7)
    assert report.to_json()['passed'] is True


def test_verify_padded_lifting():
    report = verify_lifting(vector_product_eta(7),
                            Lifting.identity(7).padded(), samples=16)
    assert report.homogeneous
    assert report.orthogonality_identity
    assert report.nonvanishing and report.line_agreement
    assert not report.relatively_prime
    assert report.content_gcd == square_norm_poly(7)
    assert not report.passed


def test_verify_zero_lifting():
    report = verify_lifting(vector_product_eta(7), Lifting.zero(7),
                            samples=16)
    assert not report.nonvanishing
    assert not report.relatively_prime
    assert report.content_gcd is None
    assert report.to_json()['content_gcd'] is None


def test_verify_wrong_lifting():
    swap = ExactMatrix.from_rows([[0, 1, 0], [1, 0, 0], [0, 0, 1]])
    report = verify_lifting(vector_product_eta(3), Lifting.linear(swap),
                            samples=16)
    assert not report.orthogonality_identity
    assert not report.line_agreement
    with pytest.raises(DimensionMismatch):
        verify_lifting(vector_product_eta(7), Lifting.identity(3))


@pytest.mark.slow
def test_random_quadruples_have_degree_one():
    for q in qdiv_test.random_quadruples(10, seed=1):
        eta = quadruple_eta(q)
        scan = scan_lifting(eta, samples=1000)
        assert checked_degree(scan) == 1
        assert scan.lifting == expected_quadruple_lifting(q)


@pytest.mark.parametrize('d,dimension', [
    (1, 1),
    (2, 7),
    pytest.param(3, 28, marks=pytest.mark.slow),
    pytest.param(4, 84, marks=pytest.mark.slow),
    pytest.param(5, 210, marks=pytest.mark.slow),
])
def test_cross_product_kernel_dimensions(d, dimension):
    # Every solution is h(v) v with h of degree d - 1
    system = build_constraint_system(vector_product_eta(7), d, reduced=True)
    assert len(system.kernel()) == dimension


def test_transported_maps_keep_their_degree():
    rng = qdiv_test.seeded_rng(17, 'transport')
    for _ in range(2):
        sigma = util.random_invertible(rng, 7)
        eta = transport_eta(vector_product_eta(7), sigma)
        assert degree(eta, samples=8) == 1
