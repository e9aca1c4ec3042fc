from dataclasses import dataclass

from common.errors import InputError
from common.utils import logger
from origami.origami import Origami
from origami.sl2z import Direction, normalize_direction, normalizer, sl2z_act

__all__ = ["Cylinder", "cylinders", "horizontal_cylinders", "normalized_origami", "reorder"]


@dataclass(frozen=True)
class Cylinder:
    """A maximal cylinder in a periodic direction.

    ``rows`` are h-cycles of the normalized origami (the one in which the
    direction is horizontal), listed bottom to top. Circumference counts
    steps of the primitive direction vector.
    """

    direction: Direction
    rows: tuple[tuple[int, ...], ...]

    @property
    def circumference(self) -> int:
        return len(self.rows[0])

    @property
    def height(self) -> int:
        return len(self.rows)

    @property
    def squares(self) -> frozenset[int]:
        return frozenset(label for row in self.rows for label in row)

    @property
    def representative(self) -> int:
        return min(self.squares)

    @property
    def area(self) -> int:
        return self.circumference * self.height


def normalized_origami(o: Origami, direction: Direction) -> Origami:
    """The origami R * o in which ``direction`` has become horizontal."""
    return sl2z_act(normalizer(direction), o)


def horizontal_cylinders(o: Origami, direction: Direction = (1, 0)) -> list[Cylinder]:
    """Horizontal cylinders of o, tagged with ``direction``.

    Two stacked rows belong to one cylinder exactly when every vertex on
    the line between them is a regular point.
    """
    rows = o.h.cycles(include_fixed=True)
    row_of = {label: index for index, row in enumerate(rows) for label in row}
    vertex_size = {label: len(cycle) for cycle in o.vertices() for label in cycle}

    above: dict[int, int] = {}
    for index, row in enumerate(rows):
        if all(vertex_size[o.v(label)] == 1 for label in row):
            above[index] = row_of[o.v(row[0])]
    has_below = set(above.values())

    result: list[Cylinder] = []
    visited: set[int] = set()
    # paths start at a row nothing merges into; pure cycles are picked up after
    starts = [i for i in range(len(rows)) if i not in has_below] + list(range(len(rows)))
    for start in starts:
        if start in visited:
            continue
        stack = [start]
        visited.add(start)
        current = start
        while current in above and above[current] not in visited:
            current = above[current]
            visited.add(current)
            stack.append(current)
        result.append(Cylinder(direction, tuple(rows[i] for i in stack)))

    result.sort(key=lambda c: (c.circumference, c.representative))
    logger.debug(
        f"Direction {direction}: {len(result)} cylinders with "
        f"(circumference, height) {[(c.circumference, c.height) for c in result]}"
    )
    return result


def cylinders(o: Origami, direction: Direction) -> list[Cylinder]:
    """Cylinder decomposition of o in a primitive integer direction.

    Args:
        o (Origami): The surface
        direction (Direction): A primitive integer vector

    Returns:
        list[Cylinder]: Sorted by circumference, then smallest square

    Raises:
        DirectionError: Zero or non-primitive direction
    """
    normalized = normalize_direction(direction)
    return horizontal_cylinders(normalized_origami(o, normalized), normalized)


def reorder(found: list[Cylinder], representatives: list[int]) -> list[Cylinder]:
    """Put cylinders in the order given by one square of each.

    Raises:
        InputError: When the squares do not pick out every cylinder exactly once
    """
    ordered: list[Cylinder] = []
    for square in representatives:
        matches = [c for c in found if square in c.squares]
        if not matches:
            raise InputError(f"square {square} does not belong to any cylinder")
        if matches[0] in ordered:
            raise InputError(f"square {square} names a cylinder twice")
        ordered.append(matches[0])
    if len(ordered) != len(found):
        raise InputError(
            f"expected {len(found)} squares to order the cylinders, got {len(representatives)}"
        )
    return ordered
