"""Edge chains on an origami and their transport along the SL(2,Z) action.

Edge ``x_i`` is the bottom edge of square ``i`` oriented rightward, edge
``y_i`` its left edge oriented upward. A chain is a rational column vector
ordered ``x_1..x_n, y_1..y_n``.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Any

from sympy import ImmutableMatrix, Matrix, Rational, zeros

from common.errors import InputError, InvariantViolation
from origami.origami import Origami
from origami.sl2z import Letter, apply_letter

__all__ = ["EdgeChain", "CycleClass", "boundary_1", "boundary_2", "pullback_matrix"]


@dataclass(frozen=True)
class EdgeChain:
    n: int
    vector: ImmutableMatrix

    @classmethod
    def zero(cls, n: int) -> "EdgeChain":
        return cls(n, ImmutableMatrix(zeros(2 * n, 1)))

    @classmethod
    def from_terms(
        cls, n: int, x: dict[int, Any] | None = None, y: dict[int, Any] | None = None
    ) -> "EdgeChain":
        entries = [Rational(0)] * (2 * n)
        for square, value in (x or {}).items():
            entries[square - 1] += Rational(value)
        for square, value in (y or {}).items():
            entries[n + square - 1] += Rational(value)
        return cls(n, ImmutableMatrix(entries))

    def x(self, square: int) -> Rational:
        return self.vector[square - 1]

    def y(self, square: int) -> Rational:
        return self.vector[self.n + square - 1]

    def __add__(self, other: "EdgeChain") -> "EdgeChain":
        return EdgeChain(self.n, self.vector + other.vector)

    def __sub__(self, other: "EdgeChain") -> "EdgeChain":
        return EdgeChain(self.n, self.vector - other.vector)

    def __neg__(self) -> "EdgeChain":
        return EdgeChain(self.n, -self.vector)

    def __rmul__(self, scalar: Any) -> "EdgeChain":
        return EdgeChain(self.n, ImmutableMatrix(Rational(scalar) * self.vector))

    def terms(self) -> list[tuple[str, Any]]:
        """Sparse form such as ``[("x3", 1), ("y1", -2)]``."""
        result: list[tuple[str, Any]] = []
        for index, value in enumerate(self.vector):
            if value != 0:
                name = f"x{index + 1}" if index < self.n else f"y{index - self.n + 1}"
                result.append((name, value))
        return result


@lru_cache(maxsize=128)
def boundary_1(o: Origami) -> ImmutableMatrix:
    """Vertex-by-edge incidence: each edge contributes +1 at its head, -1 at its tail."""
    vertex = o.vertex_index()
    n = o.n
    matrix = zeros(len(o.vertices()), 2 * n)
    for i in range(1, n + 1):
        matrix[vertex[o.h(i)], i - 1] += 1
        matrix[vertex[i], i - 1] -= 1
        matrix[vertex[o.v(i)], n + i - 1] += 1
        matrix[vertex[i], n + i - 1] -= 1
    return ImmutableMatrix(matrix)


@lru_cache(maxsize=128)
def boundary_2(o: Origami) -> ImmutableMatrix:
    """Edge-by-square incidence: d(square i) = x_i + y_h(i) - x_v(i) - y_i."""
    n = o.n
    matrix = zeros(2 * n, n)
    for i in range(1, n + 1):
        matrix[i - 1, i - 1] += 1
        matrix[n + o.h(i) - 1, i - 1] += 1
        matrix[o.v(i) - 1, i - 1] -= 1
        matrix[n + i - 1, i - 1] -= 1
    return ImmutableMatrix(matrix)


@dataclass(frozen=True)
class CycleClass:
    """A closed chain, standing for its class modulo square boundaries."""

    origami: Origami
    chain: EdgeChain

    def __post_init__(self) -> None:
        if any(boundary_1(self.origami) * self.chain.vector):
            raise InvariantViolation(f"chain {self.chain.terms()} is not closed")

    def _check_same_surface(self, other: "CycleClass") -> None:
        if other.origami != self.origami:
            raise InputError("cycles live on different origamis")

    def __add__(self, other: "CycleClass") -> "CycleClass":
        self._check_same_surface(other)
        return CycleClass(self.origami, self.chain + other.chain)

    def __sub__(self, other: "CycleClass") -> "CycleClass":
        self._check_same_surface(other)
        return CycleClass(self.origami, self.chain - other.chain)

    def __neg__(self) -> "CycleClass":
        return CycleClass(self.origami, -self.chain)

    def __rmul__(self, scalar: Any) -> "CycleClass":
        return CycleClass(self.origami, scalar * self.chain)


def _letter_pullback(letter: Letter, o: Origami) -> Matrix:
    """Map chains on ``letter * o`` back to chains on o."""
    n = o.n
    h, v = o.h, o.v
    hinv = h.inverse()
    matrix = zeros(2 * n, 2 * n)

    def x(j: int) -> int:
        return j - 1

    def y(j: int) -> int:
        return n + j - 1

    for j in range(1, n + 1):
        match letter:
            case Letter.T:
                matrix[x(j), x(j)] += 1
                matrix[y(hinv(j)), y(j)] += 1
                matrix[x(hinv(j)), y(j)] -= 1
            case Letter.T_INV:
                matrix[x(j), x(j)] += 1
                matrix[x(j), y(j)] += 1
                matrix[y(h(j)), y(j)] += 1
            case Letter.S:
                matrix[y(j), x(j)] -= 1
                matrix[x(v(j)), y(j)] += 1
            case Letter.S_INV:
                matrix[y(h(j)), x(j)] += 1
                matrix[x(j), y(j)] -= 1
    return matrix


def pullback_matrix(letters: list[Letter], o: Origami) -> ImmutableMatrix:
    """Chain map from ``g * o`` to o where ``letters`` spell g, leftmost first."""
    sources = [o]
    for letter in reversed(letters):
        sources.append(apply_letter(letter, sources[-1]))
    # sources[k] is the origami the (m-k)-th letter acts on
    result = Matrix.eye(2 * o.n)
    for position, letter in enumerate(letters):
        source = sources[len(letters) - 1 - position]
        result = _letter_pullback(letter, source) * result
    return ImmutableMatrix(result)
