"""Dense GF(2) linear algebra on numpy uint8 arrays, rows combined with XOR."""

from collections.abc import Sequence

import numpy as np
import numpy.typing as npt

__all__ = ["Bits", "as_bits", "row_echelon", "rank", "inverse", "IndependentSet"]

Bits = npt.NDArray[np.uint8]


def as_bits(values: Sequence[int] | npt.ArrayLike) -> Bits:
    return (np.asarray(values, dtype=np.int64) % 2).astype(np.uint8)


def row_echelon(matrix: npt.ArrayLike) -> tuple[Bits, list[int]]:
    """Row echelon form over GF(2) and the pivot columns."""
    reduced = as_bits(matrix).copy()
    if reduced.ndim != 2:
        raise ValueError("expected a two dimensional array")
    rows, cols = reduced.shape
    pivots: list[int] = []
    pivot_row = 0
    for col in range(cols):
        candidates = np.nonzero(reduced[pivot_row:, col])[0]
        if candidates.size == 0:
            continue
        found = pivot_row + int(candidates[0])
        if found != pivot_row:
            reduced[[pivot_row, found]] = reduced[[found, pivot_row]]
        for row in range(pivot_row + 1, rows):
            if reduced[row, col]:
                reduced[row] ^= reduced[pivot_row]
        pivots.append(col)
        pivot_row += 1
        if pivot_row == rows:
            break
    return reduced, pivots


def rank(matrix: npt.ArrayLike) -> int:
    if np.asarray(matrix).size == 0:
        return 0
    return len(row_echelon(matrix)[1])


class IndependentSet:
    """Greedy independent subset of GF(2) vectors, kept in fully reduced form."""

    def __init__(self, width: int) -> None:
        self.width = width
        self._pivots: list[tuple[int, Bits]] = []
        self.accepted: list[int] = []

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def _reduce(self, vector: Bits) -> Bits:
        reduced = vector.copy()
        for pivot, row in self._pivots:
            if reduced[pivot]:
                reduced ^= row
        return reduced

    def offer(self, vector: npt.ArrayLike, tag: int) -> bool:
        """Keep ``vector`` when it is independent of those kept so far."""
        reduced = self._reduce(as_bits(vector))
        nonzero = np.nonzero(reduced)[0]
        if nonzero.size == 0:
            return False
        pivot = int(nonzero[0])
        self._pivots = [
            (p, row ^ reduced if row[pivot] else row) for p, row in self._pivots
        ]
        self._pivots.append((pivot, reduced))
        self.accepted.append(tag)
        return True


def inverse(matrix: npt.ArrayLike) -> Bits:
    """Inverse of a square GF(2) matrix by Gauss-Jordan elimination.

    Raises:
        ValueError: The matrix is singular mod 2
    """
    square = as_bits(matrix)
    size = square.shape[0]
    augmented = np.hstack([square, np.eye(size, dtype=np.uint8)])
    for col in range(size):
        candidates = np.nonzero(augmented[col:, col])[0]
        if candidates.size == 0:
            raise ValueError("matrix is singular over GF(2)")
        found = col + int(candidates[0])
        if found != col:
            augmented[[col, found]] = augmented[[found, col]]
        for row in range(size):
            if row != col and augmented[row, col]:
                augmented[row] ^= augmented[col]
    return augmented[:, size:].copy()
