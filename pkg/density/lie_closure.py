"""Zariski density certificates through exact Lie algebra closure.

Logs of unipotent generators lie in the Lie algebra of the Zariski closure
of the group they generate, as do all their conjugates under the group
and all brackets. Once that span reaches dim sp(2m) = m(2m+1) the closure
is the whole symplectic group.
"""

import re
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from enum import Enum

from sympy import ImmutableMatrix, Matrix, eye

from common.errors import InvariantViolation, MatrixInputError
from common.utils import logger
from density.generator_input import generator_name
from density.sp_matrix import SpMatrix, in_sp_algebra, is_unipotent, nilpotent_log

__all__ = [
    "Verdict",
    "LinearSpan",
    "DensityCertificate",
    "LieClosure",
    "lie_closure",
    "conjugate_by_word",
    "parse_word",
    "DENSITY_SCOPE",
]

_LETTER = re.compile(r"([A-Za-z]\d*)(?:\^(-?\d+))?")

DENSITY_SCOPE = (
    "A dense verdict certifies Zariski density of the group generated by the "
    "unipotent generators and their conjugates; an inconclusive verdict is not a "
    "proof of non-density."
)


class Verdict(str, Enum):
    DENSE = "dense"
    INCONCLUSIVE = "inconclusive"


class LinearSpan:
    """Reduced row echelon basis of a space of square matrices, grown one vector at a time."""

    def __init__(self, size: int) -> None:
        self.size = size
        self._rows: list[tuple[int, Matrix]] = []

    @property
    def dimension(self) -> int:
        return len(self._rows)

    def _reduce(self, matrix: Matrix) -> Matrix:
        vector = Matrix(1, self.size * self.size, list(matrix))
        for pivot, row in self._rows:
            if vector[pivot] != 0:
                vector = vector - vector[pivot] * row
        return vector

    def contains(self, matrix: Matrix) -> bool:
        return self._reduce(matrix).is_zero_matrix is True

    def add(self, matrix: Matrix) -> bool:
        """Add a matrix; True when the dimension grew."""
        vector = self._reduce(matrix)
        pivot = next((i for i, value in enumerate(vector) if value != 0), None)
        if pivot is None:
            return False
        vector = vector / vector[pivot]
        self._rows = [
            (p, row - row[pivot] * vector if row[pivot] != 0 else row)
            for p, row in self._rows
        ]
        self._rows.append((pivot, vector))
        self._rows.sort(key=lambda item: item[0])
        return True

    def basis(self) -> list[ImmutableMatrix]:
        return [
            ImmutableMatrix(self.size, self.size, list(row)) for _, row in self._rows
        ]


@dataclass
class DensityCertificate:
    algebra_basis: list[ImmutableMatrix]
    dimension: int
    verdict: Verdict
    form: ImmutableMatrix
    witness_log: list[str] = field(default_factory=list)
    max_word_length: int = 0
    statement: str = DENSITY_SCOPE


def parse_word(word: str) -> list[tuple[str, int]]:
    """Split ``A^2 B``, ``A*B`` or ``AbA`` into (generator name, exponent) pairs.

    A lowercase letter stands for the inverse of the uppercase generator.
    """
    letters: list[tuple[str, int]] = []
    for chunk in word.replace("*", " ").split():
        position = 0
        while position < len(chunk):
            found = _LETTER.match(chunk, position)
            if found is None:
                raise MatrixInputError(f"cannot read word {word!r}")
            name, exponent = found.group(1), int(found.group(2) or 1)
            if name[0].islower():
                name, exponent = name[0].upper() + name[1:], -exponent
            letters.append((name, exponent))
            position = found.end()
    return letters


def _word_matrix(word: str, generators: Mapping[str, Matrix]) -> Matrix:
    size = next(iter(generators.values())).rows
    result = eye(size)
    for name, exponent in parse_word(word):
        if name not in generators:
            raise MatrixInputError(f"unknown generator {name!r} in word {word!r}")
        base = generators[name] if exponent > 0 else generators[name].inv()
        for _ in range(abs(exponent)):
            result = result * base
    return result


def conjugate_by_word(
    element: Matrix, word: str, generators: Mapping[str, Matrix]
) -> ImmutableMatrix:
    """g L g^-1 for the group element g spelled by ``word`` (leftmost factor first)."""
    g = _word_matrix(word, generators)
    return ImmutableMatrix(g * element * g.inv())


class LieClosure:
    """Closure of the unipotent logs under conjugation and brackets."""

    def __init__(
        self, generators: Mapping[str, SpMatrix], max_word_length: int = 8
    ) -> None:
        if not generators:
            raise MatrixInputError("no generators given")
        sizes = {g.size for g in generators.values()}
        if len(sizes) != 1:
            raise MatrixInputError(f"generators of mixed sizes {sorted(sizes)}")
        forms = {g.form for g in generators.values()}
        if len(forms) != 1:
            raise MatrixInputError("generators do not share one symplectic form")

        self.generators = dict(generators)
        self.size = sizes.pop()
        self.form = forms.pop()
        self.max_word_length = max_word_length
        self.full_dimension = (self.size // 2) * (self.size + 1)
        self.span = LinearSpan(self.size)
        # Independent elements in the order found, each with how it was obtained.
        self._elements: list[tuple[str, Matrix]] = []

        self._letters: list[tuple[str, Matrix, Matrix]] = []
        for name, g in self.generators.items():
            forward, backward = Matrix(g.matrix), Matrix(g.matrix.inv())
            self._letters.append((name, forward, backward))
            self._letters.append((f"{name}^-1", backward, forward))

    def _record(self, matrix: Matrix, description: str) -> bool:
        if self.span.add(matrix):
            self._elements.append((description, matrix))
            return True
        return False

    def _is_dense(self) -> bool:
        return self.span.dimension == self.full_dimension

    def _bracket_close(self) -> None:
        checked = 0
        while checked < len(self._elements) and not self._is_dense():
            _, right = self._elements[checked]
            for index in range(checked):
                _, left = self._elements[index]
                self._record(left * right - right * left, f"[w{index}, w{checked}]")
                if self._is_dense():
                    return
            checked += 1

    def run(self) -> DensityCertificate:
        """Grow the span round by round.

        Round k conjugates every element found so far by one letter, so after
        k rounds the span holds the conjugates of the logs by all words of
        length at most k, closed under brackets.
        """
        for name, g in self.generators.items():
            if is_unipotent(g):
                self._record(Matrix(nilpotent_log(g)), f"log {name}")

        if not self._elements:
            logger.info("No unipotent generator, density is inconclusive")
            return self._certificate()

        self._bracket_close()
        for length in range(1, self.max_word_length + 1):
            if self._is_dense():
                break
            grew = False
            for index, (_, element) in enumerate(list(self._elements)):
                for name, letter, inverse in self._letters:
                    if self._record(letter * element * inverse, f"{name} . w{index}"):
                        grew = True
                    if self._is_dense():
                        break
                if self._is_dense():
                    break
            self._bracket_close()
            logger.debug(f"Word length {length}: span dimension {self.span.dimension}")
            if not grew:
                logger.debug(f"Span stable at dimension {self.span.dimension}")
                break

        return self._certificate()

    def _certificate(self) -> DensityCertificate:
        basis = self.span.basis()
        for element in basis:
            if not in_sp_algebra(element, self.form):
                raise InvariantViolation("closure left the symplectic Lie algebra")
        verdict = Verdict.DENSE if self._is_dense() else Verdict.INCONCLUSIVE
        logger.info(f"Lie closure dimension {len(basis)} of {self.full_dimension}: {verdict.value}")
        return DensityCertificate(
            algebra_basis=basis,
            dimension=len(basis),
            verdict=verdict,
            form=self.form,
            witness_log=[description for description, _ in self._elements],
            max_word_length=self.max_word_length,
        )


def lie_closure(
    generators: Mapping[str, SpMatrix] | Sequence[SpMatrix], max_word_length: int = 8
) -> DensityCertificate:
    """Certify Zariski density of the group generated by ``generators`` in Sp(2m).

    Args:
        generators: Named generators, or a list named A, B, C, ... in order
        max_word_length: Longest conjugating word tried

    Returns:
        DensityCertificate: Dense when the span has dimension m(2m+1)

    Raises:
        MatrixInputError: Mixed sizes, or no common symplectic form
    """
    if not isinstance(generators, Mapping):
        generators = {generator_name(i): g for i, g in enumerate(generators)}
    return LieClosure(generators, max_word_length).run()