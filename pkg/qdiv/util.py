import json
import logging
import os
import random
from typing import Any, Dict, List, Sequence

from sympy.polys.domains import QQ

from . import settings
from .__init__ import __version__ as qdiv_version
from .exact import (
    ExactMatrix, ExactScalar, ExactVector, HomogeneousPoly, is_zero_vector,
    rank_of_vectors, scalar,
)

logger = logging.getLogger(__name__)


# Scalars are persisted as "p/q" strings (or "p" when q == 1) everywhere
def scalar_to_json(a) -> str:
    a = scalar(a)
    numer, denom = int(QQ.numer(a)), int(QQ.denom(a))
    return str(numer) if denom == 1 else f'{numer}/{denom}'


def scalar_from_json(text) -> ExactScalar:
    if isinstance(text, bool) or not isinstance(text, (str, int)):
        raise ValueError(f'Expected a "p/q" string, got {text!r}')
    return scalar(text)


def vector_to_json(v: Sequence) -> List[str]:
    return [scalar_to_json(a) for a in v]


def vector_from_json(data, length: int = None) -> ExactVector:
    if not isinstance(data, list):
        raise ValueError(f'Expected a list of scalars, got {data!r}')
    if length is not None and len(data) != length:
        raise ValueError(f'Expected {length} entries, got {len(data)}')
    return tuple(scalar_from_json(a) for a in data)


def matrix_to_json(m: ExactMatrix) -> List[List[str]]:
    return [vector_to_json(row) for row in m.rows]


def matrix_from_json(data) -> ExactMatrix:
    if not isinstance(data, list) or not all(isinstance(r, list)
                                             for r in data):
        raise ValueError('Expected a nested list of scalars')
    return ExactMatrix.from_rows([vector_from_json(row) for row in data])


def tensor_to_json(t) -> List[List[List[str]]]:
    return [[vector_to_json(entry) for entry in row] for row in t]


def tensor_from_json(data, n: int = None):
    if not isinstance(data, list):
        raise ValueError('Expected a nested list of scalars')
    n = len(data) if n is None else n
    if len(data) != n:
        raise ValueError(f'Expected {n} tensor slices, got {len(data)}')
    rows = []
    for row in data:
        if not isinstance(row, list) or len(row) != n:
            raise ValueError(f'Expected {n}x{n}x{n} structure constants')
        rows.append(tuple(vector_from_json(entry, n) for entry in row))
    return tuple(rows)


def poly_to_json(p: HomogeneousPoly) -> List[Dict[str, Any]]:
    return [{'exponents': list(e), 'coeff': scalar_to_json(c)}
            for e, c in sorted(p.terms.items(), reverse=True)]


def poly_from_json(data, nvars: int, degree: int) -> HomogeneousPoly:
    if not isinstance(data, list):
        raise ValueError('Expected a list of polynomial terms')
    terms = {}
    for term in data:
        exponents = tuple(term['exponents'])
        if len(exponents) != nvars or not all(isinstance(e, int) and e >= 0
                                              for e in exponents):
            raise ValueError(f'Bad exponent vector {term["exponents"]!r}')
        terms[exponents] = scalar_from_json(term['coeff'])
    return HomogeneousPoly.from_terms(nvars, degree, terms)


# Seeded exact sampling

def make_rng(seed: int) -> random.Random:
    return random.Random(seed)


def derive_seed(seed: int, *labels) -> int:
    """Deterministic sub-seed for an independent sampling stream."""
    return random.Random(repr((seed,) + labels)).getrandbits(64)


def random_scalar(rng: random.Random,
                  height: int = None) -> ExactScalar:
    height = height or settings.SAMPLE_HEIGHT
    return QQ(rng.randint(-height, height), rng.randint(1, height))


def random_vector(rng: random.Random, n: int, nonzero: bool = True,
                  height: int = None) -> ExactVector:
    while True:
        v = tuple(random_scalar(rng, height) for _ in range(n))
        if not nonzero or not is_zero_vector(v):
            return v


def random_independent_pair(rng: random.Random, n: int,
                            height: int = None):
    while True:
        v = random_vector(rng, n, height=height)
        w = random_vector(rng, n, height=height)
        if rank_of_vectors([v, w]) == 2:
            return v, w


def random_matrix(rng: random.Random, nrows: int, ncols: int,
                  height: int = None) -> ExactMatrix:
    return ExactMatrix.from_rows([[random_scalar(rng, height)
                                   for _ in range(ncols)]
                                  for _ in range(nrows)])


def random_antisymmetric(rng: random.Random, n: int,
                         height: int = None) -> ExactMatrix:
    rows = [[QQ.zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            a = random_scalar(rng, height)
            rows[i][j], rows[j][i] = a, -a
    return ExactMatrix.from_rows(rows)


def random_invertible(rng: random.Random, n: int,
                      height: int = None) -> ExactMatrix:
    while True:
        m = random_matrix(rng, n, n, height)
        if m.det():
            return m


# Reports

def report_header(seed: int, **budgets) -> Dict[str, Any]:
    header = {'version': qdiv_version, 'seed': seed}
    header.update(budgets)
    return header


def dumps_report(report: Dict[str, Any]) -> str:
    return json.dumps(report, indent=4, sort_keys=True)


def write_report(report: Dict[str, Any], outfile: str = None):
    """Print the report to STDOUT, or write it to `outfile`."""
    text = dumps_report(report)
    if not outfile:
        print(text)
        return

    outdir = os.path.dirname(os.path.abspath(outfile))
    if not os.path.exists(outdir):
        os.makedirs(outdir)
    with open(outfile, 'w') as f:
        f.write(text + '\n')
    logger.info('Report written to %s', outfile)
