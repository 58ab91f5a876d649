"""
Input resolution for the command line.

An input argument is a builtin name, the word `random` (a seeded random
matrix quadruple) or the path of a local JSON document. JSON documents carry
a `kind`; documents without one are recognized by their keys.
"""

import json
import logging
from typing import Callable, Dict, Optional, Sequence

from . import util
from .algebra import AlgebraPresentation
from .dissident import (
    DissidentMap, DissidentTriple, MatrixQuadruple, random_quadruple,
    vector_product_eta,
)
from .exact import ExactMatrix
from .exceptions import InputError
from .lifting import Lifting
from .octonion import complex_numbers, octonions, quaternions

logger = logging.getLogger(__name__)


def _cross_triple(n: int) -> DissidentTriple:
    return DissidentTriple(n, ExactMatrix.zeros(n, n), vector_product_eta(n))


BUILTINS: Dict[str, Callable[[], object]] = {
    'cross7': lambda: _cross_triple(7),
    'cross3': lambda: _cross_triple(3),
    'octonions': octonions,
    'quaternions': quaternions,
    'complex': complex_numbers,
    'identity-quadruple': MatrixQuadruple.identity,
}

KINDS = {
    DissidentTriple: 'dissident_triple',
    DissidentMap: 'dissident_map',
    MatrixQuadruple: 'matrix_quadruple',
    AlgebraPresentation: 'algebra',
    Lifting: 'lifting',
    ExactMatrix: 'matrix',
}


def kind_of(obj) -> str:
    return KINDS[type(obj)]


def fetch_builtin(path: str) -> Optional[object]:
    """Golden data shipped with qdiv."""
    factory = BUILTINS.get(path)
    return None if factory is None else factory()


def fetch_random(path: str, seed: int) -> Optional[object]:
    """A matrix quadruple drawn from `seed`."""
    if path != 'random':
        return None
    rng = util.make_rng(util.derive_seed(seed, 'input'))
    return random_quadruple(rng)


def fetch_local_json(path: str):
    """Parsed JSON document from a file on local disk."""
    try:
        with open(path, 'r') as f:
            return json.load(f)

    except OSError as err:
        raise InputError(source=path, reason=err.strerror or str(err)) \
            from err

    except json.JSONDecodeError as err:
        raise InputError(source=path, reason=f'invalid JSON ({err.msg} at '
                                             f'line {err.lineno})') from err


def _infer_kind(data) -> str:
    if isinstance(data, list):
        return 'matrix'
    if not isinstance(data, dict):
        raise ValueError('expected a JSON object or a nested list')
    if 'kind' in data:
        return data['kind']
    keys = set(data)
    if {'A', 'B', 'C', 'D'} <= keys:
        return 'matrix_quadruple'
    if {'xi', 'eta'} <= keys:
        return 'dissident_triple'
    if 'tensor' in keys:
        return 'dissident_map'
    if {'table', 'unity'} <= keys:
        return 'algebra'
    if 'components' in keys:
        return 'lifting'
    raise ValueError('cannot tell what this document describes')


def _decode_quadruple(data) -> MatrixQuadruple:
    return MatrixQuadruple(*(util.matrix_from_json(data[label])
                             for label in 'ABCD'))


def _decode_triple(data) -> DissidentTriple:
    xi = util.matrix_from_json(data['xi'])
    n = data.get('n', xi.nrows)
    return DissidentTriple(n, xi,
                           DissidentMap(n, util.tensor_from_json(data['eta'],
                                                                 n)))


def _decode_map(data) -> DissidentMap:
    tensor = util.tensor_from_json(data['tensor'], data.get('n'))
    return DissidentMap(len(tensor), tensor)


def _decode_algebra(data) -> AlgebraPresentation:
    table = util.tensor_from_json(data['table'], data.get('dim'))
    return AlgebraPresentation(table,
                               util.vector_from_json(data['unity'],
                                                     len(table)),
                               data.get('name', ''))


def _decode_lifting(data) -> Lifting:
    n, degree = data['n'], data['degree']
    return Lifting(n, degree, tuple(util.poly_from_json(c, n, degree)
                                    for c in data['components']))


def _decode_matrix(data) -> ExactMatrix:
    return util.matrix_from_json(data['rows'] if isinstance(data, dict)
                                 else data)


DECODERS = {
    'matrix_quadruple': _decode_quadruple,
    'dissident_triple': _decode_triple,
    'dissident_map': _decode_map,
    'algebra': _decode_algebra,
    'lifting': _decode_lifting,
    'matrix': _decode_matrix,
}


def decode(data, source: str = '<json>'):
    """Build the qdiv object described by a parsed JSON document."""
    try:
        kind = _infer_kind(data)
        if kind not in DECODERS:
            raise ValueError(f'unknown kind {kind!r}')
        return DECODERS[kind](data)

    except KeyError as err:
        raise InputError(source=source, reason=f'missing field {err}') \
            from err

    except (TypeError, ValueError) as err:
        raise InputError(source=source, reason=str(err)) from err


def load(path: str, seed: int = 0, kinds: Sequence[str] = None):
    """
    Based on path, choose the appropriate backend and build the object.
    """

    # A builtin?
    obj = fetch_builtin(path)

    # Or a seeded random quadruple?
    if obj is None:
        obj = fetch_random(path, seed)

    # Okay, this is probably a file on local disk
    if obj is None:
        obj = decode(fetch_local_json(path), source=path)

    if kinds is not None and kind_of(obj) not in kinds:
        raise InputError(source=path,
                         reason=f'expected {" or ".join(kinds)}, got '
                                f'{kind_of(obj)}')
    logger.debug('Loaded %s from %s', kind_of(obj), path)
    return obj


def save(obj, outfile: str = None):
    """Write the JSON form of a qdiv object to `outfile` or STDOUT."""
    if isinstance(obj, ExactMatrix):
        data = {'kind': 'matrix', 'rows': util.matrix_to_json(obj)}
    else:
        data = obj.to_json()
    util.write_report(data, outfile)

