import pytest
from sympy import ImmutableMatrix, Matrix, Rational

from common.errors import InputError, InvariantViolation
from homology.bases import (
    CanonicalBasisStrategy,
    WaistBasisStrategy,
    perp_subspace,
    primitive_integer_vector,
    waist_basis,
)
from homology.chains import CycleClass, EdgeChain, boundary_1, boundary_2
from homology.complex import h1_basis, holonomy, intersection
from homology.waist import (
    WaistOrder,
    flux,
    ordered_cylinders,
    row_class,
    shared_square_intersection,
    waist_class,
)
from origami.cylinders import cylinders
from origami.origami import Origami, stratum
from tests.conftest import M_STAR_PERP_FORM

# Shared squares of sigma_i (rows) and zeta_j (columns) on M*
M_STAR_SHARED = [[0, 0, 1], [0, 1, 1], [1, 1, 1]]


class TestChains:
    """Test cases for the cellular chain complex."""

    def test_boundary_of_boundary_vanishes(self, corpus: list[Origami]) -> None:
        """Test d1 * d2 == 0 on every corpus origami."""
        for o in corpus:
            assert (boundary_1(o) * boundary_2(o)).is_zero_matrix

    def test_square_boundary(self, m_star: Origami) -> None:
        """Test d(square 1) = x1 + y_h(1) - x_v(1) - y1."""
        column = list(boundary_2(m_star)[:, 0])
        # h(1) = 1 so the two y1 terms cancel; v(1) = 4
        expected = EdgeChain.from_terms(6, x={1: 1, 4: -1})

        assert column == list(expected.vector)

    def test_open_chain_is_rejected(self, m_star: Origami) -> None:
        """Test that a single bottom edge between distinct vertices is not a cycle."""
        with pytest.raises(InvariantViolation):
            CycleClass(m_star, EdgeChain.from_terms(6, x={2: 1}))


class TestIntersection:
    """Test cases for the intersection form and H1 bases."""

    def test_torus_cores_meet_once(self, torus: Origami) -> None:
        """Test that the horizontal core meets the vertical one at +1."""
        # Given:
        sigma = CycleClass(torus, EdgeChain.from_terms(1, x={1: 1}))
        zeta = CycleClass(torus, EdgeChain.from_terms(1, y={1: 1}))

        # When:
        forward = intersection(sigma, zeta)
        backward = intersection(zeta, sigma)

        # Then:
        assert forward == 1
        assert backward == -1
        assert intersection(sigma, sigma) == 0

    def test_h1_basis_is_unimodular(self, corpus: list[Origami]) -> None:
        """Test rank 2g and an antisymmetric unimodular Gram matrix."""
        for o in corpus:
            basis = h1_basis(o)
            assert basis.rank == 2 * stratum(o).genus
            assert basis.gram.T == -basis.gram
            assert abs(basis.gram.det()) == 1

    def test_coordinates_recover_basis_combinations(self, m_star: Origami) -> None:
        """Test that coordinates invert combine."""
        basis = h1_basis(m_star)
        coefficients = [1, -2, 0, 3, 1, -1]

        gamma = basis.combine(coefficients)

        assert list(basis.coordinates(gamma)) == coefficients

    def test_different_surfaces_are_rejected(self, m_star: Origami, m_star_star: Origami) -> None:
        """Test that pairing across origamis raises."""
        with pytest.raises(InputError):
            intersection(h1_basis(m_star).cycles[0], h1_basis(m_star_star).cycles[0])


class TestWaistCurves:
    """Test cases for cylinder waist classes and their pairings."""

    def test_m_star_cylinders(self, m_star: Origami) -> None:
        """Test circumferences and representatives in both directions."""
        horizontal = cylinders(m_star, (1, 0))
        vertical = cylinders(m_star, (0, 1))

        assert [(c.circumference, c.height, c.representative) for c in horizontal] == [
            (1, 1, 1),
            (2, 1, 2),
            (3, 1, 4),
        ]
        assert [(c.circumference, c.height, c.representative) for c in vertical] == [
            (1, 1, 6),
            (2, 1, 3),
            (3, 1, 1),
        ]

    def test_merged_vertical_cylinder(self, m_star_star: Origami) -> None:
        """Test that the columns of squares 5 and 6 form one cylinder of height 2."""
        order = WaistOrder.parse("vertical=5,3,1")

        vertical = ordered_cylinders(m_star_star, (0, 1), order)

        assert [(c.circumference, c.height) for c in vertical] == [(1, 2), (2, 1), (2, 1)]
        assert vertical[0].squares == {5, 6}
        assert 3 in vertical[1].squares

    def test_waist_holonomy(self, corpus: list[Origami]) -> None:
        """Test that every waist class has holonomy circumference times direction."""
        for o in corpus[:20]:
            for direction in [(1, 0), (0, 1), (1, 1)]:
                for cyl in cylinders(o, direction):
                    vector = holonomy(waist_class(o, cyl)).as_tuple()
                    assert vector == (
                        cyl.circumference * direction[0],
                        cyl.circumference * direction[1],
                    )

    @pytest.mark.parametrize(
        "fixture,order,direction,expected",
        [
            ("m_star", None, (1, 1), {(1, 1, 0, 0, 0, 1), (0, 0, 1, 1, 1, 0)}),
            (
                "m_star_star",
                WaistOrder(vertical=(5, 3, 1)),
                (2, 1),
                {(2, 1, 0, 0, 0, 1), (0, 1, 2, 2, 1, 0)},
            ),
        ],
    )
    def test_slanted_waists_in_waist_basis(
        self,
        request: pytest.FixtureRequest,
        fixture: str,
        order: WaistOrder | None,
        direction: tuple[int, int],
        expected: set[tuple[int, ...]],
    ) -> None:
        """Test the slanted core curves written in sigma0..2, zeta0..2."""
        # Given:
        o = request.getfixturevalue(fixture)
        basis = waist_basis(o, order)
        assert basis is not None

        # When:
        found = {
            tuple(int(x) for x in basis.coordinates(waist_class(o, cyl)))
            for cyl in cylinders(o, direction)
        }

        # Then:
        assert found == expected

    def test_rows_give_the_waist_class(self, corpus: list[Origami]) -> None:
        """Test that every row of a cylinder carries the same homology class."""
        for o in corpus:
            basis = h1_basis(o)
            for direction in [(1, 0), (0, 1), (1, 1), (2, 1)]:
                for cyl in cylinders(o, direction):
                    first = basis.coordinates(waist_class(o, cyl))
                    for index in range(1, cyl.height):
                        assert basis.coordinates(row_class(o, cyl, index)) == first

    def test_shared_squares_match_general_pairing(self, small_origamis: list[Origami]) -> None:
        """Test the shared-square count against the general pairing on every origami with n <= 4."""
        compared = 0
        for o in small_origamis:
            if waist_basis(o) is None:
                continue
            waists = {c: waist_class(o, c) for d in [(1, 0), (0, 1)] for c in cylinders(o, d)}
            for sigma in cylinders(o, (1, 0)):
                for zeta in cylinders(o, (0, 1)):
                    expected = intersection(waists[sigma], waists[zeta])
                    assert shared_square_intersection(sigma, zeta) == expected
                    compared += 1
        assert compared > 0

    def test_shared_squares_give_intersections(self, m_star: Origami) -> None:
        """Test intersection, flux and the shared-square count on M*."""
        horizontal = cylinders(m_star, (1, 0))
        vertical = cylinders(m_star, (0, 1))

        for i, sigma in enumerate(horizontal):
            for j, zeta in enumerate(vertical):
                zeta_class = waist_class(m_star, zeta)
                expected = M_STAR_SHARED[i][j]
                assert intersection(waist_class(m_star, sigma), zeta_class) == expected
                assert flux(m_star, sigma, zeta_class) == expected
                assert shared_square_intersection(sigma, zeta) == expected

    def test_shared_squares_divide_by_heights(self, m_star_star: Origami) -> None:
        """Test the tall vertical cylinder against the bottom-right horizontal one."""
        sigma = cylinders(m_star_star, (1, 0))[2]
        zeta = ordered_cylinders(m_star_star, (0, 1), WaistOrder(vertical=(5, 3, 1)))[0]

        assert shared_square_intersection(sigma, zeta) == 1
        assert intersection(waist_class(m_star_star, sigma), waist_class(m_star_star, zeta)) == 1

    def test_shared_squares_need_both_directions(self, m_star: Origami) -> None:
        """Test the direction check."""
        horizontal = cylinders(m_star, (1, 0))
        with pytest.raises(InputError):
            shared_square_intersection(horizontal[0], horizontal[1])

    def test_waist_order_parse(self) -> None:
        """Test reading and printing cylinder orders."""
        order = WaistOrder.parse("vertical=5,3,1; horizontal=1,2,4")

        assert order.vertical == (5, 3, 1)
        assert order.horizontal == (1, 2, 4)
        assert str(order) == "horizontal=1,2,4; vertical=5,3,1"
        with pytest.raises(InputError):
            WaistOrder.parse("diagonal=1")
        with pytest.raises(InputError):
            WaistOrder.parse("vertical=a,b")

    def test_bad_order_is_rejected(self, m_star: Origami) -> None:
        """Test squares that do not name each cylinder exactly once."""
        with pytest.raises(InputError):
            ordered_cylinders(m_star, (1, 0), WaistOrder(horizontal=(2, 3, 1)))
        with pytest.raises(InputError):
            ordered_cylinders(m_star, (1, 0), WaistOrder(horizontal=(1, 2)))


class TestBases:
    """Test cases for the reporting bases."""

    def test_waist_basis_of_m_star(self, m_star: Origami) -> None:
        """Test the Gram matrix [[0, K], [-K^T, 0]] of the waist basis."""
        basis = waist_basis(m_star)
        shared = Matrix(M_STAR_SHARED)

        assert basis is not None
        assert basis.labels == ("sigma0", "sigma1", "sigma2", "zeta0", "zeta1", "zeta2")
        assert basis.gram[:3, 3:] == shared
        assert basis.gram[3:, :3] == -shared.T
        assert basis.gram[:3, :3].is_zero_matrix

    def test_waist_perp_basis_of_m_star(self, m_star: Origami) -> None:
        """Test the waist-difference basis and its intersection form."""
        perp = perp_subspace(m_star, WaistBasisStrategy())

        assert perp.labels == ("sigma_bar1", "sigma_bar2", "zeta_bar1", "zeta_bar2")
        assert perp.strategy == "waist"
        assert perp.gram == M_STAR_PERP_FORM
        for gamma in perp.classes:
            assert holonomy(gamma).as_tuple() == (0, 0)

    def test_m_star_star_perp_ratio(self, m_star_star: Origami) -> None:
        """Test that zeta_bar2 subtracts twice zeta0 when zeta2 has circumference 2."""
        order = WaistOrder(vertical=(5, 3, 1))
        vertical = ordered_cylinders(m_star_star, (0, 1), order)
        perp = perp_subspace(m_star_star, WaistBasisStrategy(), order)

        expected = waist_class(m_star_star, vertical[2]) - 2 * waist_class(m_star_star, vertical[0])

        assert perp.ambient.coordinates(perp.classes[3]) == perp.ambient.coordinates(expected)

    def test_canonical_perp_basis(self, corpus: list[Origami]) -> None:
        """Test rank 2g - 2, zero holonomy and a nondegenerate form."""
        strategy = CanonicalBasisStrategy()
        for o in corpus[:20]:
            genus = stratum(o).genus
            perp = perp_subspace(o, strategy)
            assert perp.rank == 2 * genus - 2
            for gamma in perp.classes:
                assert holonomy(gamma).as_tuple() == (0, 0)
            if perp.rank:
                assert perp.gram.det() != 0

    def test_torus_perp_is_empty(self, torus: Origami) -> None:
        """Test that H1-perp of the torus is zero."""
        assert perp_subspace(torus).rank == 0

    def test_express_rejects_tautological_class(self, m_star: Origami) -> None:
        """Test that a waist curve with holonomy is outside the perp span."""
        perp = perp_subspace(m_star)
        sigma = waist_class(m_star, cylinders(m_star, (1, 0))[0])

        with pytest.raises(InvariantViolation):
            perp.express(sigma)

    def test_primitive_integer_vector(self) -> None:
        """Test scaling to coprime integers with a positive leading entry."""
        assert primitive_integer_vector([Rational(-1, 2), Rational(3, 4), 0]) == [2, -3, 0]
        assert primitive_integer_vector([0, 4, 6]) == [0, 2, 3]

    def test_gram_is_immutable(self, m_star: Origami) -> None:
        """Test that bases hand out immutable Gram matrices."""
        assert isinstance(h1_basis(m_star).gram, ImmutableMatrix)
