"""Affine involutions with derivative -Id.

Such a map is z -> c - z in local coordinates, with c in (1/2)Z^2 mod Z^2.
On the 2x2 refinement it sends sub-squares to sub-squares, so it is a
relabeling between the refinement and its 180 degree rotation
(h^-1, v^-1). The sub-square at offset (0, 0) of square 1 lands at the
offset fixed by c.
"""

from collections.abc import Iterator
from dataclasses import dataclass

from sympy import Rational

from common.utils import logger
from origami.origami import Origami, extend_relabeling, stratum, subsquare
from origami.permutation import Permutation

__all__ = [
    "FixedPoints",
    "InvolutionWitness",
    "TRANSLATION_CLASSES",
    "involutions",
    "hyperelliptic_involution",
    "is_hyperelliptic_component",
]

HALF = Rational(1, 2)

# Translation class mod Z^2 and the offset of the image of sub-square (1, 0, 0).
TRANSLATION_CLASSES: tuple[tuple[tuple[Rational, Rational], tuple[int, int]], ...] = (
    ((Rational(0), Rational(0)), (1, 1)),
    ((HALF, Rational(0)), (0, 1)),
    ((Rational(0), HALF), (1, 0)),
    ((HALF, HALF), (0, 0)),
)


@dataclass(frozen=True)
class FixedPoints:
    vertices: int
    edge_points: int
    face_points: int

    @property
    def total(self) -> int:
        return self.vertices + self.edge_points + self.face_points


@dataclass(frozen=True)
class InvolutionWitness:
    translation_class: tuple[Rational, Rational]
    image_of_one: int
    square_map: Permutation
    fixed_points: FixedPoints

    @property
    def coarse_map(self) -> Permutation | None:
        """The induced map on whole squares, when it rotates squares onto squares."""
        if self.translation_class != (0, 0):
            return None
        n = self.square_map.n // 4
        return Permutation(
            tuple((self.square_map(subsquare(i, 0, 0)) - 1) // 4 + 1 for i in range(1, n + 1))
        )


def _offset(label: int) -> tuple[int, int]:
    position = (label - 1) % 4
    return position % 2, position // 2


def _fixed_points(refined: Origami, pi: Permutation) -> FixedPoints:
    h, v = refined.h, refined.v
    counts = {"vertex": 0, "edge": 0, "face": 0}

    for s in range(1, refined.n + 1):
        a, b = _offset(s)
        image = pi(s)
        if image == s:
            counts["face"] += 1
        if v(image) == s:
            counts["edge" if b == 0 else "face"] += 1
        if h(image) == s:
            counts["edge" if a == 0 else "face"] += 1

    vertex_of = refined.vertex_index()
    for cycle in refined.vertices():
        s = cycle[0]
        if vertex_of[h(v(pi(s)))] != vertex_of[s]:
            continue
        match _offset(s):
            case (0, 0):
                counts["vertex"] += 1
            case (1, 1):
                counts["face"] += 1
            case _:
                counts["edge"] += 1

    return FixedPoints(counts["vertex"], counts["edge"], counts["face"])


def involutions(o: Origami) -> Iterator[InvolutionWitness]:
    """Every -Id involution, by translation class and then by image of square 1."""
    refined = o.subdivide()
    rotated = Origami(refined.h.inverse(), refined.v.inverse())
    for translation, (a, b) in TRANSLATION_CLASSES:
        for j in range(1, o.n + 1):
            pi = extend_relabeling(refined, rotated, subsquare(j, a, b))
            if pi is None or not (pi * pi).is_identity():
                continue
            yield InvolutionWitness(translation, j, pi, _fixed_points(refined, pi))


def hyperelliptic_involution(o: Origami) -> InvolutionWitness | None:
    """The first -Id involution in enumeration order, if there is one."""
    witness = next(involutions(o), None)
    if witness is None:
        logger.debug(f"No -Id involution on {o}")
    else:
        logger.debug(
            f"-Id involution on {o}: class {witness.translation_class}, "
            f"{witness.fixed_points.total} fixed points"
        )
    return witness


def is_hyperelliptic_component(o: Origami) -> bool:
    """True when o lies in the hyperelliptic component of H(2g-2) or H(g-1, g-1)."""
    signature = stratum(o)
    g = signature.genus
    if signature.zero_orders not in ((2 * g - 2,), (g - 1, g - 1)) or g < 2:
        return False
    return any(w.fixed_points.total == 2 * g + 2 for w in involutions(o))
