from dataclasses import dataclass
from functools import lru_cache

from sympy import ImmutableMatrix, Rational, zeros

from common.errors import InputError
from homology.chains import CycleClass, EdgeChain, pullback_matrix
from homology.complex import intersection
from origami.cylinders import Cylinder, cylinders, reorder
from origami.origami import Origami
from origami.sl2z import Direction, normalizer, word

__all__ = [
    "WaistOrder",
    "waist_class",
    "row_class",
    "flux",
    "shared_square_intersection",
    "ordered_cylinders",
]


@dataclass(frozen=True)
class WaistOrder:
    """Explicit order of horizontal and vertical cylinders, one square each."""

    horizontal: tuple[int, ...] | None = None
    vertical: tuple[int, ...] | None = None

    @classmethod
    def parse(cls, text: str) -> "WaistOrder":
        """Read ``vertical=5,3,1; horizontal=1,2,4`` (either part optional)."""
        values: dict[str, tuple[int, ...]] = {}
        for part in text.split(";"):
            part = part.strip()
            if not part:
                continue
            key, sep, squares = part.partition("=")
            key = key.strip()
            if not sep or key not in {"horizontal", "vertical"}:
                raise InputError(f"cannot read cylinder order {part!r}")
            try:
                values[key] = tuple(int(s) for s in squares.split(","))
            except ValueError:
                raise InputError(f"cylinder order {part!r} must list square numbers")
        return cls(values.get("horizontal"), values.get("vertical"))

    def __str__(self) -> str:
        parts = []
        if self.horizontal:
            parts.append("horizontal=" + ",".join(map(str, self.horizontal)))
        if self.vertical:
            parts.append("vertical=" + ",".join(map(str, self.vertical)))
        return "; ".join(parts)


def ordered_cylinders(
    o: Origami, direction: Direction, order: WaistOrder | None = None
) -> list[Cylinder]:
    found = cylinders(o, direction)
    if order is None:
        return found
    if direction == (1, 0) and order.horizontal:
        return reorder(found, list(order.horizontal))
    if direction == (0, 1) and order.vertical:
        return reorder(found, list(order.vertical))
    return found


@lru_cache(maxsize=256)
def _pullback(o: Origami, direction: Direction) -> ImmutableMatrix:
    return pullback_matrix(word(normalizer(direction)), o)


def row_class(o: Origami, cyl: Cylinder, row_index: int) -> CycleClass:
    """Core curve through one row of the cylinder, as a class on o."""
    n = o.n
    row_chain = zeros(2 * n, 1)
    for label in cyl.rows[row_index]:
        row_chain[label - 1] += 1
    vector = _pullback(o, cyl.direction) * row_chain
    return CycleClass(o, EdgeChain(n, ImmutableMatrix(vector)))


def waist_class(o: Origami, cyl: Cylinder) -> CycleClass:
    """The class of the cylinder's core curve; any row gives the same class."""
    return row_class(o, cyl, 0)


def flux(o: Origami, cyl: Cylinder, gamma: CycleClass) -> Rational:
    """Intersection of the waist of ``cyl`` with ``gamma``.

    For horizontal cylinders this is the total y coefficient of gamma on one
    row, which is independent of the representative.
    """
    if cyl.direction != (1, 0):
        return intersection(waist_class(o, cyl), gamma)
    return sum((gamma.chain.y(label) for label in cyl.rows[0]), Rational(0))


def shared_square_intersection(horizontal: Cylinder, vertical: Cylinder) -> Rational:
    """Intersection of a horizontal and a vertical waist from shared squares alone."""
    if horizontal.direction != (1, 0) or vertical.direction != (0, 1):
        raise InputError("expected a horizontal and a vertical cylinder")
    shared = len(horizontal.squares & vertical.squares)
    return Rational(shared, horizontal.height * vertical.height)
