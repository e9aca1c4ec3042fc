"""Bubbling a square handle into a horizontal slit.

The slit is the top edge of a chosen square. Cutting it open and gluing
in a new square that closes up on itself horizontally adds a handle:
genus goes up by one and the total zero order by two.
"""

from collections import Counter
from dataclasses import dataclass

from common.errors import InputError, InvariantViolation
from common.utils import logger
from origami.cylinders import cylinders
from origami.origami import Origami, StratumSignature, stratum, subsquare
from origami.permutation import Permutation

__all__ = ["SlitSpec", "BubbleResult", "slit_is_open", "bubble_square_handle", "split_report"]


@dataclass(frozen=True)
class SlitSpec:
    """Unit horizontal slit along the top edge of ``base_square``."""

    base_square: int

    def check(self, o: Origami) -> None:
        if not 1 <= self.base_square <= o.n:
            raise InputError(f"slit square {self.base_square} is not in 1..{o.n}")


@dataclass(frozen=True)
class BubbleResult:
    origami: Origami
    slit: SlitSpec
    refined: bool
    new_square: int
    before: StratumSignature
    after: StratumSignature
    removed_orders: tuple[int, ...]
    added_orders: tuple[int, ...]


def slit_is_open(o: Origami, square: int) -> bool:
    """True when the two endpoints of the top edge of ``square`` are different points."""
    vertex_of = o.vertex_index()
    top_left = o.v(square)
    top_right = o.h(o.v(square))
    return vertex_of[top_left] != vertex_of[top_right]


def _glue(o: Origami, square: int) -> Origami:
    n = o.n
    new = n + 1
    h_images = list(o.h.images) + [new]
    v_images = list(o.v.images) + [o.v(square)]
    v_images[square - 1] = new
    return Origami(Permutation(tuple(h_images)), Permutation(tuple(v_images)))


def split_report(o: Origami, slit: SlitSpec) -> BubbleResult:
    """Bubble a handle at ``slit`` and report how the stratum changed.

    A closed slit, whose endpoints are one point, is moved to the upper left
    quarter of the square in the 2x2 refinement, where the endpoints differ.

    Raises:
        InputError: The slit square does not exist
        InvariantViolation: Genus, zero order or cylinder bookkeeping fails
    """
    slit.check(o)
    before = stratum(o)
    base, square, refined = o, slit.base_square, False
    if not slit_is_open(o, square):
        base, square, refined = o.subdivide(), subsquare(slit.base_square, 0, 1), True
        logger.debug(f"Slit at square {slit.base_square} is closed, using sub-square {square}")

    result = _glue(base, square)
    after = stratum(result)
    new_square = result.n

    if after.genus != before.genus + 1:
        raise InvariantViolation(f"bubbling took genus {before.genus} to {after.genus}")
    if sum(after.zero_orders) != sum(before.zero_orders) + 2:
        raise InvariantViolation(f"bubbling took {before} to {after}")
    if not any(c.rows == ((new_square,),) for c in cylinders(result, (1, 0))):
        raise InvariantViolation(f"square {new_square} is not a unit horizontal cylinder")

    old, new = Counter(before.zero_orders), Counter(after.zero_orders)
    logger.debug(f"Bubbled a handle at square {slit.base_square}: {before} -> {after}")
    return BubbleResult(
        origami=result,
        slit=slit,
        refined=refined,
        new_square=new_square,
        before=before,
        after=after,
        removed_orders=tuple(sorted((old - new).elements(), reverse=True)),
        added_orders=tuple(sorted((new - old).elements(), reverse=True)),
    )


def bubble_square_handle(o: Origami, slit: SlitSpec) -> Origami:
    return split_report(o, slit).origami
