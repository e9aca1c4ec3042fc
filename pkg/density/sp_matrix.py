from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any

from sympy import ImmutableMatrix, Matrix, Rational, eye, zeros

from common.errors import MatrixInputError

__all__ = [
    "SpMatrix",
    "standard_form",
    "is_unipotent",
    "nilpotent_log",
    "exp_nilpotent",
    "in_sp_algebra",
    "invariant_form",
]


def standard_form(size: int) -> ImmutableMatrix:
    """J = [[0, I], [-I, 0]] in dimension ``size``."""
    half = size // 2
    form = zeros(size, size)
    for i in range(half):
        form[i, half + i] = 1
        form[half + i, i] = -1
    return ImmutableMatrix(form)


def _as_matrix(value: Any) -> ImmutableMatrix:
    if isinstance(value, SpMatrix):
        return value.matrix
    return ImmutableMatrix(value)


@dataclass(frozen=True)
class SpMatrix:
    """A rational matrix preserving the antisymmetric form ``form``."""

    matrix: ImmutableMatrix
    form: ImmutableMatrix

    def __post_init__(self) -> None:
        rows, cols = self.matrix.shape
        if rows != cols or rows % 2:
            raise MatrixInputError(f"expected an even square matrix, got {rows}x{cols}")
        if self.form.shape != self.matrix.shape:
            raise MatrixInputError("form and matrix sizes differ")
        if self.form.T != -self.form or self.form.det() == 0:
            raise MatrixInputError("form must be antisymmetric and nondegenerate")
        if self.matrix.T * self.form * self.matrix != self.form:
            raise MatrixInputError(f"matrix {self.matrix.tolist()} does not preserve the form")

    @classmethod
    def of(cls, rows: Sequence[Sequence[Any]], form: Any = None) -> "SpMatrix":
        matrix = ImmutableMatrix([[Rational(x) for x in row] for row in rows])
        return cls(matrix, ImmutableMatrix(form) if form is not None else standard_form(matrix.rows))

    @property
    def size(self) -> int:
        return self.matrix.rows

    def inverse(self) -> "SpMatrix":
        return SpMatrix(ImmutableMatrix(self.matrix.inv()), self.form)


def is_unipotent(m: Any) -> bool:
    """True iff (M - I)^size vanishes."""
    matrix = _as_matrix(m)
    if matrix.rows != matrix.cols:
        return False
    return ((matrix - eye(matrix.rows)) ** matrix.rows).is_zero_matrix is True


def nilpotent_log(m: Any) -> ImmutableMatrix:
    """Exact logarithm sum_{k>=1} (-1)^(k+1) (M - I)^k / k of a unipotent matrix.

    Raises:
        MatrixInputError: The matrix is not unipotent
    """
    matrix = _as_matrix(m)
    if not is_unipotent(matrix):
        raise MatrixInputError("logarithm requested for a non-unipotent matrix")
    nilpotent = Matrix(matrix - eye(matrix.rows))
    result = zeros(matrix.rows, matrix.rows)
    power = Matrix(nilpotent)
    k = 1
    while not power.is_zero_matrix:
        result += Rational((-1) ** (k + 1), k) * power
        power = power * nilpotent
        k += 1
    return ImmutableMatrix(result)


def exp_nilpotent(n: Any) -> ImmutableMatrix:
    matrix = Matrix(_as_matrix(n))
    result = eye(matrix.rows)
    term = eye(matrix.rows)
    k = 1
    while True:
        term = term * matrix / k
        if term.is_zero_matrix:
            break
        result += term
        k += 1
        if k > matrix.rows + 1:
            raise MatrixInputError("exponential requested for a non-nilpotent matrix")
    return ImmutableMatrix(result)


def in_sp_algebra(element: Any, form: Any) -> bool:
    """L^T J + J L = 0."""
    matrix = _as_matrix(element)
    j = ImmutableMatrix(form)
    return (matrix.T * j + j * matrix).is_zero_matrix is True


def invariant_form(generators: Sequence[Any]) -> ImmutableMatrix:
    """An antisymmetric nondegenerate form preserved by every generator.

    The standard form is used when it works; otherwise the linear system
    M^T X M = X is solved over antisymmetric X and the first nondegenerate
    solution is returned.

    Raises:
        MatrixInputError: No invariant symplectic form exists
    """
    matrices = [_as_matrix(g) for g in generators]
    if not matrices:
        raise MatrixInputError("no generators given")
    size = matrices[0].rows
    standard = standard_form(size)
    if size % 2 == 0 and all(m.T * standard * m == standard for m in matrices):
        return standard

    slots = [(i, j) for i in range(size) for j in range(i + 1, size)]

    def form_from(values: Sequence[Any]) -> Matrix:
        form = zeros(size, size)
        for (i, j), value in zip(slots, values):
            form[i, j] = value
            form[j, i] = -value
        return form

    equations: list[list[Any]] = []
    for m in matrices:
        columns = []
        for position in range(len(slots)):
            unit = [0] * len(slots)
            unit[position] = 1
            x = form_from(unit)
            columns.append(list(m.T * x * m - x))
        for row in range(size * size):
            equations.append([column[row] for column in columns])

    system = Matrix(equations) if equations else zeros(0, len(slots))
    for solution in system.nullspace():
        candidate = form_from(list(solution))
        if candidate.det() != 0:
            return ImmutableMatrix(candidate)
    raise MatrixInputError("generators preserve no symplectic form")
