"""Parity of the spin structure of an origami.

A closed geodesic has index 0, so every cylinder core curve has q = 1. Core
curves in enough periodic directions span H1 mod 2, and q extends to every
class through q(a + b) = q(a) + q(b) + <a, b>. The parity is the Arf
invariant of q.
"""

from collections.abc import Sequence
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd

import numpy as np

from common.errors import InvariantViolation, OddZeroOrderError, SpinUndeterminedError
from common.utils import logger
from homology.chains import CycleClass
from homology.complex import HomologyBasis, h1_basis, intersection
from homology.waist import waist_class
from invariants import gf2
from invariants.gf2 import Bits
from origami.cylinders import cylinders
from origami.origami import Origami, stratum
from origami.sl2z import Direction

__all__ = [
    "CoreCurve",
    "QuadraticForm",
    "SpinData",
    "spin_directions",
    "quadratic_form",
    "arf",
    "spin_parity",
]


@dataclass(frozen=True)
class CoreCurve:
    direction: Direction
    representative: int
    cycle: CycleClass = field(compare=False)


def spin_directions(bound: int) -> list[Direction]:
    """Primitive directions with max(|p|, |q|) <= bound, shortest first."""
    found = [
        (p, q)
        for p in range(0, bound + 1)
        for q in range(-bound, bound + 1)
        if gcd(p, q) == 1 and (p > 0 or q == 1)
    ]
    return sorted(found, key=lambda d: (max(abs(d[0]), abs(d[1])), d[0], d[1]))


def _mod2_coordinates(basis: HomologyBasis, gamma: CycleClass) -> Bits:
    coordinates = basis.coordinates(gamma)
    if any(not value.is_integer for value in coordinates):
        raise InvariantViolation("integral class has fractional coordinates")
    return gf2.as_bits([int(value) for value in coordinates])


@dataclass(frozen=True)
class QuadraticForm:
    """q on H1(X; Z/2), stored by its values on a basis of core curves."""

    origami: Origami
    cores: tuple[CoreCurve, ...]
    values: tuple[int, ...]
    omega: Bits = field(compare=False)
    ambient: HomologyBasis = field(compare=False)

    @cached_property
    def _to_core_coordinates(self) -> Bits:
        rows = np.vstack([_mod2_coordinates(self.ambient, c.cycle) for c in self.cores])
        return gf2.inverse(rows)

    def coefficients(self, gamma: CycleClass) -> Bits:
        """Coefficients of gamma mod 2 over the core basis."""
        x = _mod2_coordinates(self.ambient, gamma).astype(np.int64)
        return gf2.as_bits(x @ self._to_core_coordinates.astype(np.int64))

    def evaluate(self, coefficients: Bits) -> int:
        total = int(np.dot(coefficients.astype(np.int64), np.asarray(self.values)))
        support = np.nonzero(coefficients)[0]
        for position, i in enumerate(support):
            for j in support[position + 1 :]:
                total += int(self.omega[i, j])
        return total % 2

    def __call__(self, gamma: CycleClass) -> int:
        return self.evaluate(self.coefficients(gamma))


def _collect_cores(
    o: Origami, ambient: HomologyBasis, directions: Sequence[Direction]
) -> tuple[list[CoreCurve], list[CoreCurve]]:
    """Independent cores spanning H1 mod 2, and every core looked at."""
    independent = gf2.IndependentSet(ambient.rank)
    seen: list[CoreCurve] = []
    for direction in directions:
        for cyl in cylinders(o, direction):
            core = CoreCurve(direction, cyl.representative, waist_class(o, cyl))
            seen.append(core)
            independent.offer(_mod2_coordinates(ambient, core.cycle), len(seen) - 1)
        if independent.rank == ambient.rank:
            break
    if independent.rank < ambient.rank:
        raise SpinUndeterminedError(
            f"core curves span rank {independent.rank} of {ambient.rank} mod 2"
        )
    return [seen[k] for k in independent.accepted], seen


def quadratic_form(
    o: Origami, directions: Sequence[Direction] | None = None, bound: int = 4
) -> QuadraticForm:
    """The quadratic form of the flat structure, checked on every collected core.

    Raises:
        SpinUndeterminedError: The cores do not span H1 mod 2
        InvariantViolation: Some core does not get the value 1
    """
    ambient = h1_basis(o)
    chosen, seen = _collect_cores(o, ambient, directions or spin_directions(bound))
    size = len(chosen)
    omega = np.zeros((size, size), dtype=np.uint8)
    for i in range(size):
        for j in range(i + 1, size):
            value = int(intersection(chosen[i].cycle, chosen[j].cycle)) % 2
            omega[i, j] = omega[j, i] = value

    form = QuadraticForm(o, tuple(chosen), tuple([1] * size), omega, ambient)
    for core in seen:
        if form(core.cycle) != 1:
            raise InvariantViolation(
                f"core curve in direction {core.direction} through square "
                f"{core.representative} has q = 0"
            )
    logger.debug(
        f"Quadratic form from {size} cores in directions "
        f"{sorted({c.direction for c in chosen})}, {len(seen)} cores checked"
    )
    return form


def arf(values: Sequence[int], omega: Bits) -> int:
    """Arf invariant of q given on a basis with mod 2 intersection matrix ``omega``.

    Symplectic Gram-Schmidt pairs the basis into (a_k, b_k) with <a_k, b_k> = 1;
    the invariant is sum q(a_k) q(b_k) mod 2.
    """
    size = len(values)
    form = gf2.as_bits(omega).astype(np.int64)
    weights = np.asarray(values, dtype=np.int64)

    def pair(u: Bits, w: Bits) -> int:
        return int(u.astype(np.int64) @ form @ w.astype(np.int64)) % 2

    def q(u: Bits) -> int:
        support = np.nonzero(u)[0]
        total = int(weights[support].sum())
        for position, i in enumerate(support):
            for j in support[position + 1 :]:
                total += int(form[i, j])
        return total % 2

    remaining = [row for row in np.eye(size, dtype=np.uint8)]
    total = 0
    while remaining:
        a = remaining.pop(0)
        partner = next((k for k, w in enumerate(remaining) if pair(a, w)), None)
        if partner is None:
            raise InvariantViolation("intersection form is degenerate mod 2")
        b = remaining.pop(partner)
        total += q(a) * q(b)
        remaining = [
            w ^ (a if pair(w, b) else 0) ^ (b if pair(w, a) else 0) for w in remaining
        ]
    return total % 2


@dataclass(frozen=True)
class SpinData:
    quadratic_form: QuadraticForm
    parity: int

    @property
    def label(self) -> str:
        return "odd" if self.parity else "even"


def spin_parity(
    o: Origami, directions: Sequence[Direction] | None = None, bound: int = 4
) -> SpinData:
    """Parity of the spin structure: 1 odd, 0 even.

    Raises:
        OddZeroOrderError: Some zero has odd order
        SpinUndeterminedError: The cores do not span H1 mod 2
    """
    signature = stratum(o)
    if any(order % 2 for order in signature.zero_orders):
        raise OddZeroOrderError(f"spin parity is undefined in {signature}")
    form = quadratic_form(o, directions, bound)
    parity = arf(form.values, form.omega)
    logger.debug(f"Spin parity of {o}: {parity}")
    return SpinData(form, parity)
