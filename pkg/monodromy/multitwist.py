"""Parabolic affine multitwists and their action on homology.

In a periodic direction u the cylinder moduli h_c / c_c are commensurable;
with k the smallest shear making every t_c = k h_c / c_c an integer, the
affine map with derivative I + s k det(u, .) u twists cylinder c exactly
t_c times. On homology it acts as gamma -> gamma + s sum_c t_c <w_c, gamma> w_c.
"""

from dataclasses import dataclass, field
from math import gcd, lcm

from sympy import ImmutableMatrix, Matrix, zeros

from common.errors import InputError, InvariantViolation
from common.utils import logger
from homology.bases import BasisStrategy, WaistBasisStrategy, PerpBasis
from homology.chains import CycleClass
from homology.complex import HomologyBasis, holonomy, intersection
from homology.waist import WaistOrder, ordered_cylinders, waist_class
from origami.cylinders import Cylinder
from origami.origami import Origami
from origami.sl2z import Direction, Sl2zMatrix, normalize_direction

__all__ = [
    "MultitwistAction",
    "multitwist",
    "perp_matrix",
    "cohomology_matrix",
    "twist_parameters",
]


def twist_parameters(found: list[Cylinder]) -> tuple[int, tuple[int, ...]]:
    """Smallest shear k and the per-cylinder twist counts t_c."""
    shear = lcm(*(c.circumference // gcd(c.circumference, c.height) for c in found))
    counts = tuple(shear * c.height // c.circumference for c in found)
    return shear, counts


@dataclass(frozen=True)
class MultitwistAction:
    origami: Origami
    direction: Direction
    derivative: Sl2zMatrix
    shear: int
    sign: int
    cylinders: tuple[Cylinder, ...]
    twist_counts: tuple[int, ...]
    waists: tuple[CycleClass, ...]
    homology_basis: HomologyBasis = field(compare=False)
    perp_basis: PerpBasis = field(compare=False)
    matrix_h1: ImmutableMatrix = field(compare=False)
    matrix_perp: ImmutableMatrix = field(compare=False)

    def apply(self, gamma: CycleClass) -> CycleClass:
        return _twist(gamma, self.sign, self.twist_counts, self.waists)


def _twist(
    gamma: CycleClass, sign: int, counts: tuple[int, ...], waists: tuple[CycleClass, ...]
) -> CycleClass:
    image = gamma
    for count, waist in zip(counts, waists):
        crossing = intersection(waist, gamma)
        if crossing:
            image = image + (sign * count * crossing) * waist
    return image


def multitwist(
    o: Origami,
    direction: Direction,
    strategy: BasisStrategy | None = None,
    order: WaistOrder | None = None,
) -> MultitwistAction:
    """The parabolic multitwist fixing ``direction`` and its homology matrices.

    Matrices act on coefficient columns: column j holds the image of basis
    element j.

    Raises:
        DirectionError: Zero or non-primitive direction
        InvariantViolation: A symplectic or invariance check fails
    """
    strategy = strategy or WaistBasisStrategy()
    p, q = normalize_direction(direction)
    sign = 1 if p > 0 else -1

    found = ordered_cylinders(o, (p, q), order)
    shear, counts = twist_parameters(found)
    step = sign * shear
    derivative = Sl2zMatrix(1 - step * p * q, step * p * p, -step * q * q, 1 + step * p * q)
    waists = tuple(waist_class(o, c) for c in found)
    logger.debug(
        f"Multitwist in direction {(p, q)}: shear {shear}, twists {counts}, derivative {derivative}"
    )

    basis = strategy.homology_basis(o, order)
    images = [_twist(beta, sign, counts, waists) for beta in basis.cycles]
    matrix_h1 = basis.matrix_of(images)
    if matrix_h1.T * basis.gram * matrix_h1 != basis.gram:
        raise InvariantViolation(f"multitwist in direction {(p, q)} is not symplectic")

    hx, hy = derivative.rows()
    for beta, image in zip(basis.cycles, images):
        before = holonomy(beta).as_tuple()
        after = holonomy(image).as_tuple()
        expected = (
            hx[0] * before[0] + hx[1] * before[1],
            hy[0] * before[0] + hy[1] * before[1],
        )
        if after != expected:
            raise InvariantViolation(
                f"multitwist in direction {(p, q)} does not cover its derivative"
            )

    perp = strategy.perp_basis(o, order)
    if perp.rank:
        perp_images = [_twist(gamma, sign, counts, waists) for gamma in perp.classes]
        matrix_perp = ImmutableMatrix(Matrix.hstack(*(perp.express(g) for g in perp_images)))
    else:
        matrix_perp = ImmutableMatrix(zeros(0, 0))

    return MultitwistAction(
        origami=o,
        direction=(p, q),
        derivative=derivative,
        shear=shear,
        sign=sign,
        cylinders=tuple(found),
        twist_counts=counts,
        waists=waists,
        homology_basis=basis,
        perp_basis=perp,
        matrix_h1=matrix_h1,
        matrix_perp=matrix_perp,
    )


def perp_matrix(mt: MultitwistAction) -> ImmutableMatrix:
    """The action restricted to H1-perp, in the action's perp basis.

    Raises:
        InputError: On a torus, where H1-perp is zero
    """
    if mt.perp_basis.rank == 0:
        raise InputError("H1-perp is trivial in genus 1")
    return mt.matrix_perp


def cohomology_matrix(matrix: ImmutableMatrix) -> ImmutableMatrix:
    """Action on the dual space: the inverse transpose."""
    if matrix.shape == (0, 0):
        return matrix
    return ImmutableMatrix(matrix.inv().T)
