"""The SL(2,Z) action on origamis.

Matrices are factored into the generators S = [[0,-1],[1,0]] and
T = [[1,1],[0,1]]; each generator acts on the permutation pair directly.
"""

from dataclasses import dataclass
from enum import Enum

from sympy.core.intfunc import igcdex

from common.errors import DirectionError, MatrixInputError
from origami.origami import Origami

__all__ = [
    "Letter",
    "Sl2zMatrix",
    "Direction",
    "parse_direction",
    "normalize_direction",
    "normalizer",
    "word",
    "apply_letter",
    "sl2z_act",
]

Direction = tuple[int, int]


class Letter(str, Enum):
    S = "S"
    S_INV = "S^-1"
    T = "T"
    T_INV = "T^-1"


@dataclass(frozen=True)
class Sl2zMatrix:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self) -> None:
        if self.a * self.d - self.b * self.c != 1:
            raise MatrixInputError(
                f"[[{self.a},{self.b}],[{self.c},{self.d}]] has determinant "
                f"{self.a * self.d - self.b * self.c}, expected 1"
            )

    @classmethod
    def identity(cls) -> "Sl2zMatrix":
        return cls(1, 0, 0, 1)

    @classmethod
    def of(cls, letter: Letter) -> "Sl2zMatrix":
        return _LETTER_MATRICES[letter]

    @classmethod
    def from_rows(cls, rows: list[list[int]]) -> "Sl2zMatrix":
        if len(rows) != 2 or any(len(row) != 2 for row in rows):
            raise MatrixInputError(f"expected a 2x2 matrix, got {rows}")
        return cls(rows[0][0], rows[0][1], rows[1][0], rows[1][1])

    def __matmul__(self, other: "Sl2zMatrix") -> "Sl2zMatrix":
        return Sl2zMatrix(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __pow__(self, exponent: int) -> "Sl2zMatrix":
        base = self if exponent >= 0 else self.inverse()
        result = Sl2zMatrix.identity()
        for _ in range(abs(exponent)):
            result = base @ result
        return result

    def inverse(self) -> "Sl2zMatrix":
        return Sl2zMatrix(self.d, -self.b, -self.c, self.a)

    def apply(self, vector: Direction) -> Direction:
        p, q = vector
        return (self.a * p + self.b * q, self.c * p + self.d * q)

    def rows(self) -> list[list[int]]:
        return [[self.a, self.b], [self.c, self.d]]

    def __str__(self) -> str:
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]"


_LETTER_MATRICES = {
    Letter.S: Sl2zMatrix(0, -1, 1, 0),
    Letter.S_INV: Sl2zMatrix(0, 1, -1, 0),
    Letter.T: Sl2zMatrix(1, 1, 0, 1),
    Letter.T_INV: Sl2zMatrix(1, -1, 0, 1),
}


def parse_direction(text: str) -> Direction:
    """Parse ``p,q`` (a vector) or ``a/b`` (a slope, i.e. the vector (b, a))."""
    try:
        if "/" in text:
            rise, run = (int(part) for part in text.split("/"))
            vector = (run, rise)
        else:
            p, q = (int(part) for part in text.split(","))
            vector = (p, q)
    except ValueError:
        raise DirectionError(f"cannot read direction {text!r}; use p,q or a/b")
    return normalize_direction(vector)


def normalize_direction(vector: Direction) -> Direction:
    """Return the representative with p > 0, or (0, 1)."""
    p, q = vector
    if p == 0 and q == 0:
        raise DirectionError("the zero vector is not a direction")
    _, _, g = igcdex(p, q)
    if g != 1:
        raise DirectionError(f"direction ({p},{q}) is not primitive")
    if p < 0 or (p == 0 and q < 0):
        p, q = -p, -q
    return (p, q)


def normalizer(direction: Direction) -> Sl2zMatrix:
    """An element R with R * direction = (1, 0); identity for the horizontal."""
    p, q = normalize_direction(direction)
    x, y, _ = igcdex(p, q)
    return Sl2zMatrix(int(x), int(y), -q, p)


def _power_of_t(exponent: int) -> list[Letter]:
    letter = Letter.T if exponent >= 0 else Letter.T_INV
    return [letter] * abs(exponent)


def word(m: Sl2zMatrix) -> list[Letter]:
    """Factor m into generator letters, leftmost letter first.

    Euclid on the first column: each step left-multiplies by T^-q then
    S^-1 until the lower-left entry vanishes, leaving T^b or S^2 T^-b.
    """
    letters: list[Letter] = []
    current = m
    while current.c != 0:
        q = current.a // current.c
        current = Sl2zMatrix.of(Letter.S_INV) @ (Sl2zMatrix.of(Letter.T) ** -q) @ current
        letters.extend(_power_of_t(q))
        letters.append(Letter.S)

    if current.a == 1:
        letters.extend(_power_of_t(current.b))
    else:
        letters.extend([Letter.S, Letter.S])
        letters.extend(_power_of_t(-current.b))
    return letters


def apply_letter(letter: Letter, o: Origami) -> Origami:
    h, v = o.h, o.v
    match letter:
        case Letter.T:
            return Origami(h, v * h.inverse())
        case Letter.T_INV:
            return Origami(h, v * h)
        case Letter.S:
            return Origami(v.inverse(), h)
        case Letter.S_INV:
            return Origami(v, h.inverse())


def sl2z_act(m: Sl2zMatrix, o: Origami) -> Origami:
    """The origami m * o, applying the rightmost letter of word(m) first."""
    result = o
    for letter in reversed(word(m)):
        result = apply_letter(letter, result)
    return result
