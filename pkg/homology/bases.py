"""Reporting bases for H1 and for the non-tautological subspace H1-perp.

Two strategies share one interface. ``waist`` builds everything from
horizontal and vertical waist curves; ``canonical`` uses the tree-cotree
basis and the integral kernel of the holonomy map.
"""

from abc import ABC, abstractmethod
from collections.abc import Sequence
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd, lcm

from sympy import ImmutableMatrix, Matrix, Rational, zeros

from common.errors import InvariantViolation
from common.utils import logger
from homology.chains import CycleClass
from homology.complex import HomologyBasis, h1_basis, holonomy, intersection
from homology.waist import WaistOrder, ordered_cylinders, waist_class
from origami.origami import Origami, stratum

__all__ = [
    "PerpBasis",
    "BasisStrategy",
    "WaistBasisStrategy",
    "CanonicalBasisStrategy",
    "waist_basis",
    "perp_subspace",
    "primitive_integer_vector",
]


@dataclass(frozen=True)
class PerpBasis:
    """An ordered basis of ker(holonomy), expressed over an ambient H1 basis."""

    labels: tuple[str, ...]
    classes: tuple[CycleClass, ...]
    ambient: HomologyBasis = field(compare=False)
    strategy: str = "canonical"

    @property
    def rank(self) -> int:
        return len(self.classes)

    @cached_property
    def coordinate_matrix(self) -> ImmutableMatrix:
        return self.ambient.matrix_of(self.classes)

    @cached_property
    def gram(self) -> ImmutableMatrix:
        size = self.rank
        gram = zeros(size, size)
        for k, column in enumerate(self.classes):
            for j, row in enumerate(self.classes):
                gram[j, k] = intersection(row, column)
        return ImmutableMatrix(gram)

    def express(self, gamma: CycleClass) -> ImmutableMatrix:
        """Coefficients of gamma in this basis.

        Raises:
            InvariantViolation: gamma is not in the span
        """
        target = self.ambient.coordinates(gamma)
        try:
            solution, params = Matrix(self.coordinate_matrix).gauss_jordan_solve(target)
        except ValueError:
            raise InvariantViolation("class does not lie in the perp subspace")
        if params.shape[0]:
            raise InvariantViolation("perp basis vectors are linearly dependent")
        return ImmutableMatrix(solution)


def primitive_integer_vector(vector: Sequence[Rational]) -> list[int]:
    """Scale a rational vector to coprime integers, first nonzero entry positive."""
    denominators = [Rational(x).q for x in vector]
    scale = lcm(*denominators) if denominators else 1
    integers = [int(Rational(x) * scale) for x in vector]
    common = gcd(*integers) or 1
    integers = [x // common for x in integers]
    leading = next((x for x in integers if x), 1)
    return [-x for x in integers] if leading < 0 else integers


def waist_basis(o: Origami, order: WaistOrder | None = None) -> HomologyBasis | None:
    """Horizontal then vertical waist classes, when they form a basis of H1."""
    horizontal = ordered_cylinders(o, (1, 0), order)
    vertical = ordered_cylinders(o, (0, 1), order)
    cycles = [waist_class(o, c) for c in horizontal] + [waist_class(o, c) for c in vertical]
    genus = stratum(o).genus
    if len(cycles) != 2 * genus:
        return None
    if h1_basis(o).matrix_of(cycles).rank() != 2 * genus:
        return None
    labels = [f"sigma{i}" for i in range(len(horizontal))] + [
        f"zeta{j}" for j in range(len(vertical))
    ]
    return HomologyBasis.from_cycles(o, cycles, labels)


def _canonical_perp(o: Origami) -> PerpBasis:
    ambient = h1_basis(o)
    hol = Matrix(2, ambient.rank, lambda r, k: holonomy(ambient.cycles[k]).as_tuple()[r])
    kernel = hol.nullspace()
    genus = stratum(o).genus
    if len(kernel) != 2 * genus - 2:
        raise InvariantViolation(
            f"holonomy kernel has rank {len(kernel)}, expected {2 * genus - 2}"
        )
    classes = tuple(ambient.combine(primitive_integer_vector(list(v))) for v in kernel)
    labels = tuple(f"p{k + 1}" for k in range(len(classes)))
    return PerpBasis(labels, classes, ambient, "canonical")


class BasisStrategy(ABC):
    name: str

    @abstractmethod
    def homology_basis(self, o: Origami, order: WaistOrder | None = None) -> HomologyBasis:
        pass

    @abstractmethod
    def perp_basis(self, o: Origami, order: WaistOrder | None = None) -> PerpBasis:
        pass


class CanonicalBasisStrategy(BasisStrategy):
    name = "canonical"

    def homology_basis(self, o: Origami, order: WaistOrder | None = None) -> HomologyBasis:
        return h1_basis(o)

    def perp_basis(self, o: Origami, order: WaistOrder | None = None) -> PerpBasis:
        return _canonical_perp(o)


class WaistBasisStrategy(BasisStrategy):
    """Waist curves sigma_i, zeta_j and their differences sigma_i - (c_i/c_0) sigma_0."""

    name = "waist"

    def homology_basis(self, o: Origami, order: WaistOrder | None = None) -> HomologyBasis:
        basis = waist_basis(o, order)
        if basis is None:
            logger.debug("Waist curves do not span H1, using the tree-cotree basis")
            return h1_basis(o)
        return basis

    def perp_basis(self, o: Origami, order: WaistOrder | None = None) -> PerpBasis:
        if waist_basis(o, order) is None:
            logger.debug("Waist curves do not span H1, using the canonical perp basis")
            return _canonical_perp(o)

        labels: list[str] = []
        classes: list[CycleClass] = []
        for direction, name in (((1, 0), "sigma"), ((0, 1), "zeta")):
            found = ordered_cylinders(o, direction, order)
            base = waist_class(o, found[0])
            for index, cyl in enumerate(found[1:], start=1):
                ratio = Rational(cyl.circumference, found[0].circumference)
                classes.append(waist_class(o, cyl) - ratio * base)
                labels.append(f"{name}_bar{index}")

        ambient = h1_basis(o)
        genus = stratum(o).genus
        if len(classes) != 2 * genus - 2 or (
            classes and ambient.matrix_of(classes).rank() != len(classes)
        ):
            logger.debug("Waist differences are not a perp basis, using the canonical one")
            return _canonical_perp(o)
        return PerpBasis(tuple(labels), tuple(classes), ambient, "waist")


def perp_subspace(
    o: Origami, strategy: BasisStrategy | None = None, order: WaistOrder | None = None
) -> PerpBasis:
    """Ordered basis of the classes with zero holonomy; empty for the torus."""
    return (strategy or WaistBasisStrategy()).perp_basis(o, order)
