import json
import sys
from unittest.mock import patch

import pytest

from qdiv import backends
from qdiv.__main__ import RunConfig, check_args, main
from qdiv.dissident import DissidentMap, conjugate_quadruple
from qdiv.exact import ExactMatrix
from qdiv.exceptions import InputError
from qdiv.lifting import Lifting
from qdiv.octonion import octonions

from . import testUtil as qdiv_test


def run(*args):
    with patch.object(sys, 'argv', ['qdiv'] + [str(a) for a in args]):
        return main()


def run_json(capsys, *args):
    code = run(*args)
    return code, json.loads(capsys.readouterr().out)


def test_degree_of_the_cross_product(capsys):
    code, report = run_json(capsys, 'degree', '--builtin', 'cross7',
                            '--trials', 100, '--samples', 8)
    assert code == 0
    assert report['degree'] == 1
    assert report['n'] == 7
    assert report['seed'] == 0
    assert report['trials'] == 100
    assert report['verification']['passed']
    assert report['dissidence']['outcome'] == 'no_counterexample'


def test_degree_of_a_random_quadruple(capsys):
    code, report = run_json(capsys, 'degree', '--quadruple', 'random',
                            '--seed', 7, '--trials', 50, '--samples', 8)
    assert code == 0
    assert report['degree'] == 1
    assert report['seed'] == 7


def test_degree_of_an_algebra(capsys):
    code, report = run_json(capsys, 'degree', '--builtin', 'octonions',
                            '--trials', 20, '--samples', 8)
    assert code == 0
    assert report['degree'] == 1


def test_degree_of_a_non_dissident_map(tmp_path):
    path = tmp_path / 'zero.json'
    path.write_text(json.dumps(qdiv_test.zero_triple(3).to_json()))
    assert run('degree', '--triple', path, '--trials', 20) == 3


def test_malformed_and_missing_inputs(tmp_path):
    path = tmp_path / 'broken.json'
    path.write_text('{"kind": "dissident_triple", ')
    assert run('degree', '--input', path) == 2
    assert run('degree', '--input', tmp_path / 'missing.json') == 2


def test_checks(capsys):
    code, report = run_json(capsys, 'check', '--what', 'quadratic',
                            '--builtin', 'octonions')
    assert code == 0
    assert report['passed'] and report['certified']

    code, report = run_json(capsys, 'check', '--what', 'quadratic',
                            '--builtin', 'cross7')
    assert code == 0
    assert report['fimage_identity']

    code, report = run_json(capsys, 'check', '--what', 'division',
                            '--builtin', 'octonions', '--trials', 20)
    assert code == 0
    assert report['certified'] is False
    assert report['result']['outcome'] == 'no_counterexample'

    code, report = run_json(capsys, 'check', '--what', 'dissidence',
                            '--builtin', 'cross3', '--trials', 20)
    assert code == 0

    code, report = run_json(capsys, 'check', '--what', 'injectivity',
                            '--builtin', 'cross7', '--samples', 8)
    assert code == 0


def test_division_counterexample(tmp_path, capsys):
    path = tmp_path / 'zero.json'
    path.write_text(json.dumps(qdiv_test.zero_triple(7).to_json()))
    code, report = run_json(capsys, 'check', '--what', 'division',
                            '--triple', path, '--trials', 500)
    assert code == 1
    assert report['result']['outcome'] == 'counterexample'
    assert report['result']['witness'][0][0] == '0'


def test_g2_check(tmp_path, capsys):
    path = tmp_path / 'minus-identity.json'
    backends.save(-ExactMatrix.identity(7), str(path))
    code, report = run_json(capsys, 'check', '--what', 'g2',
                            '--matrix', path)
    assert code == 1
    assert report['passed'] is False

    path.write_text(json.dumps(
        [[1 if i == j else 0 for j in range(7)] for i in range(7)]))
    assert run('check', '--what', 'g2', '--matrix', path) == 0
    assert run('check', '--what', 'g2') == 2


def test_roundtrip(capsys):
    code, report = run_json(capsys, 'roundtrip', '--builtin', 'cross7')
    assert code == 0
    assert report['equal']
    code, report = run_json(capsys, 'roundtrip', '--quadruple', 'random',
                            '--seed', 4)
    assert code == 0


def test_roundtrip_of_a_corrupted_algebra(tmp_path):
    data = octonions().to_json()
    data['table'] = data['table'][:7]
    path = tmp_path / 'corrupted.json'
    path.write_text(json.dumps(data))
    assert run('roundtrip', '--input', path) == 2


def test_roundtrip_needs_a_triple():
    assert run('roundtrip', '--builtin', 'octonions') == 2


def test_reports_are_deterministic(tmp_path):
    outputs = []
    for name in ('first.json', 'second.json'):
        path = tmp_path / name
        args = ('degree', '--quadruple', 'random', '--seed', 3, '--trials',
                50, '--samples', 8, '-o', path)
        assert run(*args) == 0
        outputs.append(path.read_text())
    assert outputs[0] == outputs[1]


def test_lift_emit_and_verify(tmp_path, capsys):
    phi = tmp_path / 'phi.json'
    assert run('lift', '--builtin', 'cross7', '--trials', 20, '--samples',
               8, '--emit', phi) == 0
    capsys.readouterr()
    assert json.loads(phi.read_text())['kind'] == 'lifting'

    code, report = run_json(capsys, 'lift', '--builtin', 'cross7',
                            '--lifting', phi, '--samples', 8)
    assert code == 0
    assert report['verification']['relatively_prime']

    # a lifting on R^7 cannot lift a map on R^3
    assert run('lift', '--builtin', 'cross3', '--lifting', phi) == 1


def test_lift_verify_rejects_a_padded_lifting(tmp_path, capsys):
    phi = tmp_path / 'padded.json'
    backends.save(Lifting.identity(7).padded(), str(phi))
    code, report = run_json(capsys, 'lift', '--builtin', 'cross7',
                            '--lifting', phi, '--samples', 8)
    assert code == 1
    assert report['verification']['relatively_prime'] is False


def test_build_and_recover(tmp_path, capsys):
    algebra = tmp_path / 'algebra.json'
    assert run('build', '--builtin', 'cross7', '-o', algebra) == 0
    assert json.loads(algebra.read_text())['kind'] == 'algebra'

    code, triple = run_json(capsys, 'recover', '--input', algebra)
    assert code == 0
    assert triple == qdiv_test.cross_triple(7).to_json()


def test_recover_irrational_basis(tmp_path, capsys):
    sheared = qdiv_test.change_basis(octonions(), qdiv_test.shear(8, 1, 2))
    path = tmp_path / 'sheared.json'
    backends.save(sheared, str(path))
    code, report = run_json(capsys, 'recover', '--input', path)
    assert code == 1
    assert report['outcome'] == 'irrational_basis'
    assert report['square_norms'][0] == '2'
    assert len(report['basis']) == 7


def test_morphism_of_quadruples(tmp_path, capsys):
    q = qdiv_test.random_quadruples(1, seed=16)[0]
    s = qdiv_test.g2_members(1, seed=16)[0]
    source, target, f = (tmp_path / name
                         for name in ('q.json', 'q2.json', 's.json'))
    backends.save(q, str(source))
    backends.save(conjugate_quadruple(q, s), str(target))
    backends.save(s, str(f))

    code, report = run_json(capsys, 'morphism', '--quadruple', source,
                            '--target', target, '--f', f)
    assert code == 0
    assert report['quadruple'] and report['algebra']

    code, report = run_json(capsys, 'morphism', '--quadruple', source,
                            '--target', source, '--f', f)
    assert code == 1


def test_morphism_of_mismatched_kinds(tmp_path):
    f = tmp_path / 'identity.json'
    backends.save(ExactMatrix.identity(7), str(f))
    assert run('morphism', '--builtin', 'cross7', '--target',
               'identity-quadruple', '--f', f) == 2


def test_table_dump(capsys):
    code, report = run_json(capsys, 'table-dump', '--dim', 4)
    assert code == 0
    assert report['dim'] == 4
    assert report['name'] == 'quaternions'


def test_budgets_before_the_command(capsys):
    code, report = run_json(capsys, '--seed', 5, '--trials', 30, 'degree',
                            '--builtin', 'cross7', '--samples', 8)
    assert code == 0
    assert report['seed'] == 5
    assert report['trials'] == 30

    code, report = run_json(capsys, '--seed', 5, 'degree', '--builtin',
                            'cross7', '--seed', 6, '--trials', 30,
                            '--samples', 8)
    assert report['seed'] == 6


def test_argument_errors(capsys):
    assert run() == 2
    assert run('degree', '--builtin', 'cross7', '--max-degree', 6) == 2
    assert run('degree', '--builtin', 'cross7', '--trials', 0) == 2
    with pytest.raises(SystemExit) as excinfo:
        run('check', '--what', 'everything', '--builtin', 'cross7')
    assert excinfo.value.code == 2


def test_version(capsys):
    with pytest.raises(SystemExit) as excinfo:
        check_args(['qdiv', '--version'])
    assert excinfo.value.code == 0
    assert capsys.readouterr().out.startswith('qdiv ')


def test_run_config_validation():
    with pytest.raises(InputError):
        RunConfig('degree', max_degree=0)
    assert RunConfig('degree').dim == 8


def test_maps_are_read_as_triples_with_zero_form(tmp_path, capsys):
    path = tmp_path / 'map.json'
    eta = DissidentMap(3, qdiv_test.cross_triple(3).eta.tensor)
    path.write_text(json.dumps(eta.to_json()))
    code, report = run_json(capsys, 'roundtrip', '--input', path)
    assert code == 0
    assert isinstance(backends.load(str(path)), DissidentMap)
