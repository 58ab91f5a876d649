"""Finite-dimensional real algebras presented by structure constants."""

import dataclasses
from typing import Callable, Sequence, Tuple

from . import util
from .exact import (
    ExactMatrix, ExactScalar, ExactVector, add_vectors, scalar,
    scale_vector, unit_vector, vector, zero_vector,
)
from .exceptions import DimensionMismatch

Tensor = Tuple[Tuple[ExactVector, ...], ...]


def _as_tensor(rows) -> Tensor:
    return tuple(tuple(vector(entry) for entry in row) for row in rows)


@dataclasses.dataclass(frozen=True)
class AlgebraPresentation:
    """
    Bilinear multiplication e_i e_j = sum_k table[i][j][k] e_k on R^dim with
    a distinguished unity (its coordinates in the same basis).
    """

    table: Tensor
    unity: ExactVector
    name: str = ''

    def __post_init__(self):
        table = _as_tensor(self.table)
        unity = vector(self.unity)
        dim = len(table)
        if any(len(row) != dim or any(len(e) != dim for e in row)
               for row in table):
            raise DimensionMismatch(f'Structure constants of a {dim}-'
                                    'dimensional algebra must be '
                                    f'{dim}x{dim}x{dim}')
        if len(unity) != dim:
            raise DimensionMismatch(f'Unity has {len(unity)} coordinates, '
                                    f'expected {dim}')
        object.__setattr__(self, 'table', table)
        object.__setattr__(self, 'unity', unity)

    @classmethod
    def from_product(cls, dim: int,
                     product: Callable[[int, int], Sequence],
                     unity: Sequence, name: str = '') -> 'AlgebraPresentation':
        """Tabulate a product given on basis indices."""
        return cls(tuple(tuple(vector(product(i, j)) for j in range(dim))
                         for i in range(dim)), unity, name)

    @property
    def dim(self) -> int:
        return len(self.table)

    def basis_vector(self, i: int) -> ExactVector:
        return unit_vector(self.dim, i)

    def multiply(self, x: Sequence, y: Sequence) -> ExactVector:
        if len(x) != self.dim or len(y) != self.dim:
            raise DimensionMismatch(f'Elements of a {self.dim}-dimensional '
                                    'algebra need as many coordinates')
        result = zero_vector(self.dim)
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in enumerate(y):
                if b:
                    result = add_vectors(
                        result, scale_vector(scalar(a) * scalar(b),
                                             self.table[i][j]))
        return result

    def square(self, x: Sequence) -> ExactVector:
        return self.multiply(x, x)

    def left_operator(self, a: Sequence) -> ExactMatrix:
        """Matrix of L_a: x -> ax (columns are a e_j)."""
        return ExactMatrix.from_columns(
            [self.multiply(a, self.basis_vector(j)) for j in range(self.dim)])

    def right_operator(self, a: Sequence) -> ExactMatrix:
        """Matrix of R_a: x -> xa (columns are e_j a)."""
        return ExactMatrix.from_columns(
            [self.multiply(self.basis_vector(j), a) for j in range(self.dim)])

    def to_json(self):
        return {
            'kind': 'algebra',
            'name': self.name,
            'dim': self.dim,
            'table': util.tensor_to_json(self.table),
            'unity': util.vector_to_json(self.unity),
        }

    def is_unital(self) -> bool:
        for j in range(self.dim):
            e = self.basis_vector(j)
            if self.multiply(self.unity, e) != e:
                return False
            if self.multiply(e, self.unity) != e:
                return False
        return True


@dataclasses.dataclass(frozen=True)
class MultiplicationOperator:
    """L_a or R_a as an exact matrix."""

    side: str
    element: ExactVector
    matrix: ExactMatrix

    @property
    def det(self) -> ExactScalar:
        return self.matrix.det()


def multiplication_operator(alg: AlgebraPresentation, a: Sequence,
                            side: str = 'left') -> MultiplicationOperator:
    a = vector(a)
    if side == 'left':
        return MultiplicationOperator(side, a, alg.left_operator(a))
    if side == 'right':
        return MultiplicationOperator(side, a, alg.right_operator(a))
    raise ValueError(f'Unknown side {side!r}')
