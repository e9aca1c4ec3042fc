"""Absolute homology of an origami with its intersection form.

The intersection number is computed on a representative of the second
cycle that is closed at every corner separately (not just at every
vertex). Such a representative crosses the first cycle transversally
inside the squares, so the pairing reduces to a sum over squares.
"""

from collections.abc import Sequence
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Any

import networkx as nx
from sympy import ImmutableMatrix, Matrix, Rational, zeros

from common.errors import InputError, InvariantViolation
from common.utils import logger
from homology.chains import CycleClass, EdgeChain, boundary_1, boundary_2
from origami.origami import Origami, stratum

__all__ = [
    "HolonomyVector",
    "HomologyBasis",
    "holonomy",
    "intersection",
    "h1_basis",
    "label_closed",
]


@dataclass(frozen=True)
class HolonomyVector:
    horizontal: Rational
    vertical: Rational

    def as_tuple(self) -> tuple[Rational, Rational]:
        return (self.horizontal, self.vertical)


def holonomy(c: CycleClass) -> HolonomyVector:
    """Push the class forward to the torus: sum of x and y coefficients."""
    n = c.origami.n
    vector = c.chain.vector
    return HolonomyVector(
        horizontal=sum(vector[:n], Rational(0)),
        vertical=sum(vector[n:], Rational(0)),
    )


@lru_cache(maxsize=1024)
def label_closed(c: CycleClass) -> EdgeChain:
    """A homologous chain whose flow balances at every corner label.

    The defect at label j is what flows into the corner from x_{h^-1 j}
    and y_{v^-1 j} minus what leaves along x_j and y_j. Adding f times the
    boundary of square v^-1 h^-1 l moves f units of defect from l to c(l),
    c being the commutator, so walking each vertex cycle clears it.
    """
    o = c.origami
    n = o.n
    h_inv, v_inv = o.h.inverse(), o.v.inverse()
    b = c.chain
    defect = {
        j: b.x(h_inv(j)) + b.y(v_inv(j)) - b.x(j) - b.y(j) for j in range(1, n + 1)
    }

    d2 = boundary_2(o)
    vector = Matrix(b.vector)
    for cycle in o.vertices():
        carry = Rational(0)
        for label in cycle[:-1]:
            amount = defect[label] + carry
            if amount:
                square = v_inv(h_inv(label))
                vector += amount * d2[:, square - 1]
            carry = amount
        if defect[cycle[-1]] + carry != 0:
            raise InvariantViolation(f"chain is not closed at vertex {cycle}")
    return EdgeChain(n, ImmutableMatrix(vector))


def _pairing(o: Origami, a: EdgeChain, closed_b: EdgeChain) -> Rational:
    total = Rational(0)
    for i in range(1, o.n + 1):
        total += a.x(o.v(i)) * closed_b.y(i) - a.y(o.h(i)) * closed_b.x(i)
    return total


def intersection(c1: CycleClass, c2: CycleClass) -> Rational:
    """Algebraic intersection number; a horizontal core meets a vertical one at +1.

    Raises:
        InputError: When the cycles live on different origamis
    """
    if c1.origami != c2.origami:
        raise InputError("cannot intersect cycles on different origamis")
    return _pairing(c1.origami, c1.chain, label_closed(c2))


@dataclass(frozen=True)
class HomologyBasis:
    """An ordered basis of H1(X; Q) with its Gram matrix of intersections."""

    origami: Origami
    cycles: tuple[CycleClass, ...]
    labels: tuple[str, ...]
    gram: ImmutableMatrix = field(compare=False)

    @classmethod
    def from_cycles(
        cls, origami: Origami, cycles: Sequence[CycleClass], labels: Sequence[str]
    ) -> "HomologyBasis":
        size = len(cycles)
        gram = zeros(size, size)
        for k, column in enumerate(cycles):
            closed = label_closed(column)
            for j, row in enumerate(cycles):
                gram[j, k] = _pairing(origami, row.chain, closed)
        return cls(origami, tuple(cycles), tuple(labels), ImmutableMatrix(gram))

    @property
    def rank(self) -> int:
        return len(self.cycles)

    @cached_property
    def _gram_inverse(self) -> ImmutableMatrix:
        if self.gram.det() == 0:
            raise InvariantViolation("basis Gram matrix is degenerate")
        return ImmutableMatrix(self.gram.inv())

    def coordinates(self, gamma: CycleClass) -> ImmutableMatrix:
        """Column of coefficients c with gamma = sum c_k cycles[k]."""
        closed = label_closed(gamma)
        pairings = ImmutableMatrix(
            [_pairing(self.origami, beta.chain, closed) for beta in self.cycles]
        )
        return ImmutableMatrix(self._gram_inverse * pairings)

    def combine(self, coefficients: Sequence[Any]) -> CycleClass:
        chain = EdgeChain.zero(self.origami.n)
        for coefficient, beta in zip(coefficients, self.cycles):
            if coefficient:
                chain = chain + coefficient * beta.chain
        return CycleClass(self.origami, chain)

    def matrix_of(self, classes: Sequence[CycleClass]) -> ImmutableMatrix:
        """Coordinates of several classes, one column each."""
        if not classes:
            return ImmutableMatrix(zeros(self.rank, 0))
        return ImmutableMatrix(Matrix.hstack(*(self.coordinates(c) for c in classes)))


def _edge_ends(o: Origami, edge: int) -> tuple[int, int]:
    """Tail and head vertex positions of edge index ``edge`` (x edges first)."""
    vertex = o.vertex_index()
    n = o.n
    if edge < n:
        square = edge + 1
        return vertex[square], vertex[o.h(square)]
    square = edge - n + 1
    return vertex[square], vertex[o.v(square)]


def _edge_name(n: int, edge: int) -> str:
    return f"x{edge + 1}" if edge < n else f"y{edge - n + 1}"


@lru_cache(maxsize=128)
def h1_basis(o: Origami) -> HomologyBasis:
    """Integral basis of H1 from a tree-cotree decomposition.

    A spanning tree of the edge graph and a spanning tree of the dual graph
    over the remaining edges are chosen by edge index; each of the 2g
    leftover edges closes up through the primal tree into a basis cycle.

    Raises:
        InvariantViolation: Rank or unimodularity checks fail
    """
    n = o.n
    genus = stratum(o).genus

    primal: Any = nx.MultiGraph()
    primal.add_nodes_from(range(len(o.vertices())))
    for edge in range(2 * n):
        tail, head = _edge_ends(o, edge)
        primal.add_edge(tail, head, key=edge, weight=edge)
    tree = {
        key
        for _, _, key in nx.minimum_spanning_edges(
            primal, algorithm="kruskal", keys=True, data=False
        )
    }

    v_inv, h_inv = o.v.inverse(), o.h.inverse()
    dual: Any = nx.MultiGraph()
    dual.add_nodes_from(range(1, n + 1))
    for edge in range(2 * n):
        if edge in tree:
            continue
        if edge < n:
            square = edge + 1
            dual.add_edge(square, v_inv(square), key=edge, weight=edge)
        else:
            square = edge - n + 1
            dual.add_edge(square, h_inv(square), key=edge, weight=edge)
    cotree = {
        key
        for _, _, key in nx.minimum_spanning_edges(
            dual, algorithm="kruskal", keys=True, data=False
        )
    }

    leftover = [e for e in range(2 * n) if e not in tree and e not in cotree]
    if len(leftover) != 2 * genus:
        raise InvariantViolation(
            f"tree-cotree left {len(leftover)} edges, expected 2g = {2 * genus}"
        )

    tree_graph: Any = nx.Graph()
    tree_graph.add_nodes_from(range(len(o.vertices())))
    for edge in tree:
        tail, head = _edge_ends(o, edge)
        tree_graph.add_edge(tail, head, edge=edge, tail=tail)

    cycles: list[CycleClass] = []
    for edge in leftover:
        entries = [Rational(0)] * (2 * n)
        entries[edge] += 1
        tail, head = _edge_ends(o, edge)
        path = nx.shortest_path(tree_graph, head, tail)
        for start, end in zip(path, path[1:]):
            data = tree_graph.edges[start, end]
            entries[data["edge"]] += 1 if data["tail"] == start else -1
        cycles.append(CycleClass(o, EdgeChain(n, ImmutableMatrix(entries))))

    kernel_rank = 2 * n - boundary_1(o).rank()
    homology_rank = kernel_rank - boundary_2(o).rank()
    if homology_rank != 2 * genus:
        raise InvariantViolation(
            f"rank H1 = {homology_rank} disagrees with genus {genus}"
        )

    basis = HomologyBasis.from_cycles(o, cycles, [_edge_name(n, e) for e in leftover])
    if abs(basis.gram.det()) != 1:
        raise InvariantViolation(f"tree-cotree Gram matrix is not unimodular: {basis.gram}")
    logger.debug(f"H1 basis from leftover edges {basis.labels} for genus {genus}")
    return basis
