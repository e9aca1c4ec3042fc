"""Square-tiled surfaces as pairs of permutations.

Square ``i`` has ``h(i)`` on its right and ``v(i)`` on top. Corners are
named by the square whose bottom-left corner they are, so the vertices
of the surface are the cycles of the commutator ``v h v^-1 h^-1`` acting
on square labels.
"""

from collections import deque
from dataclasses import dataclass

from common.errors import (
    InvariantViolation,
    NotTransitiveError,
    OrigamiSyntaxError,
)
from common.utils import logger
from origami.permutation import Permutation, parse_cycles

__all__ = [
    "Origami",
    "Singularity",
    "StratumSignature",
    "parse_origami",
    "singularities",
    "stratum",
    "iso",
    "extend_relabeling",
    "aut",
]


@dataclass(frozen=True)
class Origami:
    h: Permutation
    v: Permutation

    def __post_init__(self) -> None:
        if self.h.n != self.v.n:
            raise OrigamiSyntaxError(
                f"h acts on {self.h.n} squares but v acts on {self.v.n}"
            )
        reached = _orbit_of_one(self.h, self.v)
        if len(reached) != self.n:
            missing = sorted(set(range(1, self.n + 1)) - reached)
            raise NotTransitiveError(missing)

    @property
    def n(self) -> int:
        return self.h.n

    def commutator(self) -> Permutation:
        return self.v * self.h * self.v.inverse() * self.h.inverse()

    def vertices(self) -> list[tuple[int, ...]]:
        """Vertex classes as tuples of square labels (bottom-left corners)."""
        return self.commutator().cycles(include_fixed=True)

    def vertex_index(self) -> dict[int, int]:
        """Map each square label to the position of its vertex class."""
        index: dict[int, int] = {}
        for position, cycle in enumerate(self.vertices()):
            for label in cycle:
                index[label] = position
        return index

    def relabel(self, pi: Permutation) -> "Origami":
        """Rename square ``i`` to ``pi(i)``."""
        return Origami(self.h.conjugate(pi), self.v.conjugate(pi))

    def subdivide(self) -> "Origami":
        """Cut every square into four; sub-square (i, a, b) sits at offset (a/2, b/2)."""
        n = self.n
        h_images = [0] * (4 * n)
        v_images = [0] * (4 * n)
        for i in range(1, n + 1):
            for a in (0, 1):
                for b in (0, 1):
                    label = subsquare(i, a, b)
                    h_images[label - 1] = (
                        subsquare(i, 1, b) if a == 0 else subsquare(self.h(i), 0, b)
                    )
                    v_images[label - 1] = (
                        subsquare(i, a, 1) if b == 0 else subsquare(self.v(i), a, 0)
                    )
        return Origami(Permutation(tuple(h_images)), Permutation(tuple(v_images)))

    def canonical_text(self) -> str:
        return f"h={self.h}; v={self.v}; n={self.n}"

    def __str__(self) -> str:
        return self.canonical_text()


def subsquare(i: int, a: int, b: int) -> int:
    """Label of the sub-square of square ``i`` at offset (a, b) in the 2x2 refinement."""
    return 4 * (i - 1) + 2 * b + a + 1


def _orbit_of_one(h: Permutation, v: Permutation) -> set[int]:
    reached = {1}
    queue = deque([1])
    while queue:
        square = queue.popleft()
        for neighbour in (h(square), v(square)):
            if neighbour not in reached:
                reached.add(neighbour)
                queue.append(neighbour)
    return reached


def parse_origami(text: str) -> Origami:
    """Parse ``h=(2,3)(4,5,6); v=(1,4,2)(3,5); n=6``.

    Fields are separated by ``;`` or newlines, ``#`` starts a comment line.
    Fixed points may be omitted; ``n`` defaults to the largest symbol used
    (1 when both permutations are the identity).

    Args:
        text (str): The origami source text

    Returns:
        Origami: The validated surface

    Raises:
        OrigamiSyntaxError: Malformed text or missing fields
        NotABijectionError: A permutation repeats or exceeds its symbols
        NotTransitiveError: The squares do not form a connected surface
    """
    fields: dict[str, str] = {}
    for raw_line in text.splitlines():
        line = raw_line.strip()
        if not line or line.startswith("#"):
            continue
        for part in line.split(";"):
            part = part.strip()
            if not part:
                continue
            key, sep, value = part.partition("=")
            key = key.strip().lower()
            if not sep or key not in {"h", "v", "n"}:
                raise OrigamiSyntaxError(f"expected h=..., v=... or n=..., got {part!r}")
            if key in fields:
                raise OrigamiSyntaxError(f"field {key!r} given twice")
            fields[key] = value.strip()

    for required in ("h", "v"):
        if required not in fields:
            raise OrigamiSyntaxError(f"missing field {required!r}")

    h_cycles = parse_cycles(fields["h"])
    v_cycles = parse_cycles(fields["v"])
    largest = max((s for c in h_cycles + v_cycles for s in c), default=1)

    if "n" in fields:
        if not (fields["n"].isascii() and fields["n"].isdigit()) or int(fields["n"]) < 1:
            raise OrigamiSyntaxError(f"n must be a positive integer, got {fields['n']!r}")
        n = int(fields["n"])
    else:
        n = largest

    origami = Origami(
        Permutation.from_cycles(h_cycles, n), Permutation.from_cycles(v_cycles, n)
    )
    logger.debug(f"Parsed origami with {origami.n} squares: {origami}")
    return origami


@dataclass(frozen=True)
class Singularity:
    vertex_id: int
    cone_order: int
    corners: tuple[int, ...]


def singularities(o: Origami) -> list[Singularity]:
    """All vertices with their cone orders; order 0 is a marked regular point."""
    return [
        Singularity(vertex_id=cycle[0], cone_order=len(cycle) - 1, corners=cycle)
        for cycle in o.vertices()
    ]


@dataclass(frozen=True)
class StratumSignature:
    zero_orders: tuple[int, ...]
    genus: int
    marked_regular_points: int

    def __str__(self) -> str:
        if not self.zero_orders:
            return "H(∅)"
        return "H(" + ",".join(map(str, self.zero_orders)) + ")"


def stratum(o: Origami) -> StratumSignature:
    points = singularities(o)
    orders = tuple(sorted((p.cone_order for p in points if p.cone_order > 0), reverse=True))
    regular = sum(1 for p in points if p.cone_order == 0)

    # Gauss-Bonnet against Euler characteristic V - E + F with E = 2n, F = n
    total = sum(orders) + 2
    euler = o.n - len(points) + 2
    if total % 2 or total != euler:
        raise InvariantViolation(
            f"genus mismatch: zero orders give {total}/2, Euler characteristic gives {euler}/2"
        )
    return StratumSignature(zero_orders=orders, genus=total // 2, marked_regular_points=regular)


def extend_relabeling(o1: Origami, o2: Origami, image_of_one: int) -> Permutation | None:
    """The relabeling taking o1 to o2 with 1 -> ``image_of_one``, if consistent."""
    images = {1: image_of_one}
    queue = deque([1])
    while queue:
        square = queue.popleft()
        target = images[square]
        for p1, p2 in ((o1.h, o2.h), (o1.v, o2.v)):
            neighbour, expected = p1(square), p2(target)
            known = images.get(neighbour)
            if known is None:
                images[neighbour] = expected
                queue.append(neighbour)
            elif known != expected:
                return None
    if len(set(images.values())) != o1.n:
        return None
    return Permutation(tuple(images[i] for i in range(1, o1.n + 1)))


def iso(o1: Origami, o2: Origami) -> Permutation | None:
    """Smallest relabeling pi with pi h1 pi^-1 = h2 and pi v1 pi^-1 = v2, if any.

    A relabeling is determined by the image of square 1, so trying the
    images in increasing order yields the lexicographically smallest one.
    """
    if o1.n != o2.n:
        return None
    for candidate in range(1, o1.n + 1):
        pi = extend_relabeling(o1, o2, candidate)
        if pi is not None:
            return pi
    return None


def aut(o: Origami) -> list[Permutation]:
    """Translation automorphisms, i.e. the centralizer of both h and v."""
    result = []
    for candidate in range(1, o.n + 1):
        pi = extend_relabeling(o, o, candidate)
        if pi is not None:
            result.append(pi)
    return result
