import json

import pytest
from sympy.polys.domains import QQ

from qdiv import util
from qdiv.exact import ExactMatrix, HomogeneousPoly, square_norm_poly


@pytest.mark.parametrize('expected,value', [
    ('0', 0),
    ('1/2', QQ(2, 4)),
    ('-3', QQ(-3)),
    ('-7/9', QQ(-7, 9)),
])
def test_scalar_to_json(expected, value):
    assert expected == util.scalar_to_json(value)


@pytest.mark.parametrize('value', [
    1.5,
    None,
    True,
    [1],
    'one',
    '1/0',
])
def test_scalar_from_json_invalid(value):
    with pytest.raises((ValueError, TypeError)):
        util.scalar_from_json(value)


def test_vector_from_json():
    assert util.vector_from_json(['1/2', 3]) == (QQ(1, 2), QQ(3))
    with pytest.raises(ValueError):
        util.vector_from_json(['1', '2'], length=3)
    with pytest.raises(ValueError):
        util.vector_from_json('1, 2')


def test_matrix_json():
    m = ExactMatrix.from_rows([[1, QQ(-1, 2)], [0, 3]])
    assert util.matrix_to_json(m) == [['1', '-1/2'], ['0', '3']]
    assert util.matrix_from_json([['1', '-1/2'], ['0', '3']]) == m
    with pytest.raises(ValueError):
        util.matrix_from_json({'rows': []})


def test_tensor_from_json_checks_shape():
    with pytest.raises(ValueError):
        util.tensor_from_json([[['0', '0']] * 2] * 2, n=3)
    with pytest.raises(ValueError):
        util.tensor_from_json([[['0', '0']], [['0', '0']]])


def test_poly_json():
    data = util.poly_to_json(square_norm_poly(2))
    assert data == [{'exponents': [2, 0], 'coeff': '1'},
                    {'exponents': [0, 2], 'coeff': '1'}]
    assert util.poly_from_json(data, 2, 2) == square_norm_poly(2)
    assert util.poly_from_json([], 2, 3) == HomogeneousPoly.zero(2, 3)
    with pytest.raises(ValueError):
        util.poly_from_json([{'exponents': [1, -1], 'coeff': '1'}], 2, 0)
    with pytest.raises(ValueError):
        util.poly_from_json([{'exponents': [1], 'coeff': '1'}], 2, 1)


def test_derived_seeds():
    assert util.derive_seed(0, 'dissidence') == util.derive_seed(
        0, 'dissidence')
    assert util.derive_seed(0, 'dissidence') != util.derive_seed(
        0, 'division')
    assert util.derive_seed(0, 'lifting') != util.derive_seed(1, 'lifting')


def test_sampling_is_reproducible():
    first = util.make_rng(util.derive_seed(5, 'tests'))
    second = util.make_rng(util.derive_seed(5, 'tests'))
    assert util.random_vector(first, 7) == util.random_vector(second, 7)
    assert util.random_matrix(first, 3, 3) == util.random_matrix(second, 3, 3)


def test_random_shapes():
    rng = util.make_rng(0)
    v, w = util.random_independent_pair(rng, 3)
    assert ExactMatrix.from_rows([v, w]).rank() == 2
    assert util.random_antisymmetric(rng, 4).is_antisymmetric()
    assert util.random_invertible(rng, 3).det() != 0
    for a in util.random_vector(rng, 50, height=2):
        assert -2 <= a <= 2


def test_dumps_report_is_canonical():
    header = util.report_header(3, trials=10)
    assert header['seed'] == 3
    assert header['trials'] == 10
    assert 'version' in header
    text = util.dumps_report({'b': 1, 'a': [1, 2]})
    assert text == util.dumps_report({'a': [1, 2], 'b': 1})
    assert json.loads(text) == {'a': [1, 2], 'b': 1}


def test_write_report(tmp_path, capsys):
    util.write_report({'outcome': 'ok'})
    assert json.loads(capsys.readouterr().out) == {'outcome': 'ok'}

    outfile = tmp_path / 'nested' / 'report.json'
    util.write_report({'outcome': 'ok'}, str(outfile))
    assert json.loads(outfile.read_text()) == {'outcome': 'ok'}
    assert capsys.readouterr().out == ''
