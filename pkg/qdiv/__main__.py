import argparse
import dataclasses
import sys
from typing import Optional

# qdiv modules
from qdiv import backends, dissident, lifting, octonion, qda, settings, util
from qdiv.algebra import AlgebraPresentation
from qdiv.dissident import DissidentMap, DissidentTriple, MatrixQuadruple
from qdiv.error_handler import exception_logger
from qdiv.exact import ExactMatrix
from qdiv.exceptions import InputError, IrrationalBasis, NoLiftingFound
from .__init__ import __version__ as qdiv_version


@exception_logger(catch=not settings.DEBUG)
def main():
    return check_args(sys.argv)


@dataclasses.dataclass(frozen=True)
class RunConfig:
    """Parsed invocation; every report is a function of these fields."""

    command: str
    seed: int = settings.DEFAULT_SEED
    trials: int = settings.DEFAULT_TRIALS
    samples: int = settings.DEFAULT_SAMPLES
    max_degree: int = settings.DEFAULT_MAX_DEGREE
    json_out: Optional[str] = None
    source: Optional[str] = None
    target: Optional[str] = None
    matrix: Optional[str] = None
    lifting: Optional[str] = None
    emit: Optional[str] = None
    what: Optional[str] = None
    dim: int = 8

    def __post_init__(self):
        if self.trials < 1 or self.samples < 1:
            raise InputError(source='arguments',
                             reason='--trials and --samples must be positive')
        if not lifting.MIN_DEGREE <= self.max_degree <= lifting.MAX_DEGREE:
            raise InputError(source='arguments',
                             reason=f'--max-degree must lie in '
                                    f'[{lifting.MIN_DEGREE}, '
                                    f'{lifting.MAX_DEGREE}]')

    @classmethod
    def from_args(cls, args) -> 'RunConfig':
        sources = [getattr(args, name, None)
                   for name in ('builtin', 'input', 'triple', 'quadruple')]
        return cls(
            command=args.command,
            seed=args.seed,
            trials=args.trials,
            samples=args.samples,
            max_degree=args.max_degree,
            json_out=args.json_out,
            source=next((s for s in sources if s is not None), None),
            target=getattr(args, 'target', None),
            matrix=getattr(args, 'matrix', None),
            lifting=getattr(args, 'lifting', None),
            emit=getattr(args, 'emit', None),
            what=getattr(args, 'what', None),
            dim=getattr(args, 'dim', 8),
        )

    def report(self, **fields):
        report = util.report_header(self.seed, trials=self.trials,
                                    samples=self.samples,
                                    max_degree=self.max_degree)
        report['command'] = self.command
        report.update(fields)
        return report


# Coercions between the objects an input may describe

def load_input(config: RunConfig, kinds=None):
    if config.source is None:
        raise InputError(source='arguments',
                         reason='no input given (use --builtin, --input, '
                                '--triple or --quadruple)')
    return backends.load(config.source, config.seed, kinds)


def as_map(obj, seed: int) -> DissidentMap:
    if isinstance(obj, DissidentTriple):
        return obj.eta
    if isinstance(obj, DissidentMap):
        return obj
    if isinstance(obj, MatrixQuadruple):
        return dissident.quadruple_eta(obj)
    if isinstance(obj, AlgebraPresentation):
        return qda.imaginary_eta(obj, seed)
    raise InputError(source=backends.kind_of(obj),
                     reason='no dissident map can be read off this input')


def as_triple(obj) -> DissidentTriple:
    if isinstance(obj, DissidentTriple):
        return obj
    if isinstance(obj, MatrixQuadruple):
        return dissident.quadruple_to_triple(obj)
    if isinstance(obj, DissidentMap):
        return DissidentTriple(obj.n, ExactMatrix.zeros(obj.n, obj.n), obj)
    raise InputError(source=backends.kind_of(obj),
                     reason='expected a triple, a map or a quadruple')


def as_algebra(obj) -> AlgebraPresentation:
    if isinstance(obj, AlgebraPresentation):
        return obj
    if isinstance(obj, MatrixQuadruple):
        return qda.quadruple_algebra(obj)
    return qda.make_qda(as_triple(obj))


# Subcommands

def _solve(config: RunConfig):
    eta = as_map(load_input(config), config.seed)
    falsification = dissident.dissidence_falsify(eta, config.trials,
                                                 config.seed)
    if not falsification.passed:
        v, w = (util.vector_to_json(x) for x in falsification.witness)
        raise NoLiftingFound(f'eta is not dissident: v = {v} and w = {w} '
                             'are independent but v, w, eta(v ^ w) are not')
    scan = lifting.scan_lifting(eta, config.samples, config.seed,
                                config.max_degree)
    d = lifting.checked_degree(scan)
    verification = lifting.verify_lifting(eta, scan.lifting, config.samples,
                                          config.seed)
    report = config.report(
        n=eta.n, degree=d, scan=scan.to_json(),
        verification=verification.to_json(),
        dissidence=falsification.to_json())
    return scan, verification, report


def cmd_degree(config: RunConfig) -> int:
    _, verification, report = _solve(config)
    util.write_report(report, config.json_out)
    return 0 if verification.passed else 1


def cmd_lift(config: RunConfig) -> int:
    if config.lifting is not None:
        eta = as_map(load_input(config), config.seed)
        phi = backends.load(config.lifting, config.seed, ['lifting'])
        verification = lifting.verify_lifting(eta, phi, config.samples,
                                              config.seed)
        util.write_report(config.report(
            verification=verification.to_json()), config.json_out)
        return 0 if verification.passed else 1

    scan, verification, report = _solve(config)
    if config.emit:
        backends.save(scan.lifting, config.emit)
    util.write_report(report, config.json_out)
    return 0 if verification.passed else 1


def cmd_check(config: RunConfig) -> int:
    if config.what == 'g2':
        path = config.matrix or config.source
        if path is None:
            raise InputError(source='arguments',
                             reason='--what g2 needs --matrix')
        s = backends.load(path, config.seed, ['matrix'])
        passed = octonion.g2_check(s)
        util.write_report(config.report(what='g2', passed=passed),
                          config.json_out)
        return 0 if passed else 1

    obj = load_input(config)
    if config.what == 'division':
        result = qda.division_check(as_algebra(obj), config.trials,
                                    config.seed)
        report = config.report(what='division', certified=False,
                               passed=result.passed, result=result.to_json())
    elif config.what == 'quadratic':
        alg = as_algebra(obj)
        passed = qda.quadratic_check(alg)
        report = config.report(what='quadratic', certified=True)
        if not isinstance(obj, AlgebraPresentation):
            identity = qda.fimage_quadratic_identity(as_triple(obj))
            report['fimage_identity'] = identity
            passed = passed and identity
        report['passed'] = passed
    elif config.what == 'dissidence':
        result = dissident.dissidence_falsify(as_map(obj, config.seed),
                                              config.trials, config.seed)
        report = config.report(what='dissidence', certified=False,
                               passed=result.passed, result=result.to_json())
    else:
        result = dissident.injectivity_probe(as_map(obj, config.seed),
                                             config.samples, config.seed)
        report = config.report(what='injectivity', certified=False,
                               passed=result.passed, result=result.to_json())
    util.write_report(report, config.json_out)
    return 0 if report['passed'] else 1


def cmd_build(config: RunConfig) -> int:
    backends.save(as_algebra(load_input(config)), config.json_out)
    return 0


def cmd_recover(config: RunConfig) -> int:
    alg = as_algebra(load_input(config))
    try:
        triple = qda.recover_triple(alg, config.seed)

    except IrrationalBasis as err:
        util.write_report(config.report(
            outcome='irrational_basis',
            basis=[util.vector_to_json(u) for u in err.basis],
            square_norms=[util.scalar_to_json(a) for a in err.square_norms],
        ), config.json_out)
        return err.exit_code

    backends.save(triple, config.json_out)
    return 0


def cmd_roundtrip(config: RunConfig) -> int:
    triple = as_triple(load_input(config))
    recovered = qda.recover_triple(qda.make_qda(triple), config.seed)
    equal = recovered == triple
    report = config.report(equal=equal)
    if not equal:
        report['original'] = triple.to_json()
        report['recovered'] = recovered.to_json()
    util.write_report(report, config.json_out)
    return 0 if equal else 1


def cmd_morphism(config: RunConfig) -> int:
    src = load_input(config)
    dst = backends.load(config.target, config.seed)
    f = backends.load(config.matrix, config.seed, ['matrix'])

    if isinstance(src, MatrixQuadruple) and isinstance(dst, MatrixQuadruple):
        checks = {
            'quadruple': dissident.quadruple_morphism_check(src, dst, f),
            'algebra': qda.algebra_morphism_check(
                qda.quadruple_algebra(src), qda.quadruple_algebra(dst),
                qda.extend_by_unity(f)),
        }
    elif (isinstance(src, DissidentTriple)
          and isinstance(dst, DissidentTriple)):
        checks = {
            'triple': dissident.triple_morphism_check(src, dst, f),
            'algebra': qda.algebra_morphism_check(
                qda.make_qda(src), qda.make_qda(dst), qda.extend_by_unity(f)),
        }
    elif (isinstance(src, AlgebraPresentation)
          and isinstance(dst, AlgebraPresentation)):
        checks = {'algebra': qda.algebra_morphism_check(src, dst, f)}
    else:
        raise InputError(source=config.target,
                         reason=f'cannot map a {backends.kind_of(src)} to a '
                                f'{backends.kind_of(dst)}')

    passed = all(checks.values())
    util.write_report(config.report(passed=passed, **checks),
                      config.json_out)
    return 0 if passed else 1


def cmd_table_dump(config: RunConfig) -> int:
    if config.source is None:
        alg = octonion.cayley_dickson_algebra(config.dim)
    else:
        alg = as_algebra(load_input(config))
    util.write_report(octonion.table_dump(alg), config.json_out)
    return 0


def add_input_arguments(parser):
    group = parser.add_mutually_exclusive_group()
    group.add_argument(
        '--builtin',
        help='Golden input shipped with qdiv',
        choices=sorted(backends.BUILTINS))
    group.add_argument(
        '--input',
        help='Path to a JSON triple, map, quadruple or algebra',
        metavar='<path>')
    group.add_argument(
        '--triple',
        help='Path to a JSON dissident triple',
        metavar='<path>')
    group.add_argument(
        '--quadruple',
        help='Path to a JSON matrix quadruple, or "random" for a seeded one',
        metavar='<path>')


def add_budget_arguments(parser):
    parser.add_argument(
        '--seed',
        help=f'Seed of every sampled check (default {settings.DEFAULT_SEED})',
        type=int)
    parser.add_argument(
        '--trials',
        help='Budget of the falsification searches '
             f'(default {settings.DEFAULT_TRIALS})',
        type=int)
    parser.add_argument(
        '--samples',
        help='Number of validation points '
             f'(default {settings.DEFAULT_SAMPLES})',
        type=int)
    parser.add_argument(
        '--max-degree',
        help='Largest candidate lifting degree '
             f'(default {settings.DEFAULT_MAX_DEGREE})',
        type=int)
    parser.add_argument(
        '-o', '--json-out',
        help='Path to an output JSON file, defaults to STDOUT')


def check_args(argsIn):
    """
    Check to ensure valid arguments were passed in and provide guidance
    on the available options if not
    """
    # Budgets may precede or follow the command; a value after it wins
    common = argparse.ArgumentParser(add_help=False,
                                     argument_default=argparse.SUPPRESS)
    add_budget_arguments(common)

    parser = argparse.ArgumentParser(
        description='Quadratic division algebras (qdiv)', prog='qdiv')
    add_budget_arguments(parser)
    parser.set_defaults(
        seed=settings.DEFAULT_SEED, trials=settings.DEFAULT_TRIALS,
        samples=settings.DEFAULT_SAMPLES,
        max_degree=settings.DEFAULT_MAX_DEGREE, json_out=None)
    subparsers = parser.add_subparsers(
        title='qdiv commands', dest='command',
        description=('Invoke using "qdiv <command>"'
                     ', e.g., qdiv degree --builtin cross7'))

    degreeParser = subparsers.add_parser(
        'degree', parents=[common],
        description='Compute the degree of a dissident map',
        help='Compute the degree of a dissident map')
    add_input_arguments(degreeParser)
    degreeParser.set_defaults(func=cmd_degree)

    liftParser = subparsers.add_parser(
        'lift', parents=[common],
        description='Solve for the lifting of eta_P, or verify a given one',
        help='Solve for or verify a lifting')
    add_input_arguments(liftParser)
    liftParser.add_argument(
        '--emit',
        help='Path to write the solved lifting to',
        metavar='<path>')
    liftParser.add_argument(
        '--lifting',
        help='Path to a JSON lifting to verify instead of solving',
        metavar='<path>')
    liftParser.set_defaults(func=cmd_lift)

    checkParser = subparsers.add_parser(
        'check', parents=[common],
        description='Run one exact or sampled check',
        help='Run one exact or sampled check')
    add_input_arguments(checkParser)
    checkParser.add_argument(
        '--what',
        help='Property to check',
        choices=['division', 'quadratic', 'dissidence', 'g2', 'injectivity'],
        required=True)
    checkParser.add_argument(
        '--matrix',
        help='Path to a JSON 7x7 matrix (for --what g2)',
        metavar='<path>')
    checkParser.set_defaults(func=cmd_check)

    buildParser = subparsers.add_parser(
        'build', parents=[common],
        description='Build the algebra of a triple or quadruple',
        help='Build the algebra of a triple or quadruple')
    add_input_arguments(buildParser)
    buildParser.set_defaults(func=cmd_build)

    recoverParser = subparsers.add_parser(
        'recover', parents=[common],
        description='Recover the dissident triple of an algebra',
        help='Recover the dissident triple of an algebra')
    add_input_arguments(recoverParser)
    recoverParser.set_defaults(func=cmd_recover)

    roundtripParser = subparsers.add_parser(
        'roundtrip', parents=[common],
        description='Build the algebra of a triple and recover the triple',
        help='Check that a triple survives build and recover')
    add_input_arguments(roundtripParser)
    roundtripParser.set_defaults(func=cmd_roundtrip)

    morphismParser = subparsers.add_parser(
        'morphism', parents=[common],
        description='Check a morphism of quadruples, triples or algebras',
        help='Check a morphism of quadruples, triples or algebras')
    add_input_arguments(morphismParser)
    morphismParser.add_argument(
        '--target',
        help='Path to the JSON target object',
        metavar='<path>',
        required=True)
    morphismParser.add_argument(
        '--f',
        help='Path to the JSON matrix of the morphism',
        metavar='<path>',
        dest='matrix',
        required=True)
    morphismParser.set_defaults(func=cmd_morphism)

    tableParser = subparsers.add_parser(
        'table-dump', parents=[common],
        description='Print the structure constants of an algebra',
        help='Print the structure constants of an algebra')
    add_input_arguments(tableParser)
    tableParser.add_argument(
        '--dim',
        help='Cayley-Dickson dimension when no input is given (default 8)',
        type=int,
        choices=octonion.CAYLEY_DICKSON_DIMENSIONS,
        default=8)
    tableParser.set_defaults(func=cmd_table_dump)

    parser.add_argument(
        '-v', '--version', help='Report the version of qdiv',
        action='version', version=f'qdiv {qdiv_version}')

    results = parser.parse_args(argsIn[1:])
    if results.command is None:
        parser.print_help()
        return 2

    return results.func(RunConfig.from_args(results))


if __name__ == "__main__":
    sys.exit(main())
