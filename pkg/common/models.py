"""Report and document models shared by the commands.

Every JSON document carries ``"schema": 1``. Matrix entries are integers
when integral and ``"p/q"`` strings otherwise, so output stays exact.
"""

from typing import Any

from pydantic import BaseModel, ConfigDict, Field
from sympy import Rational

SCHEMA_VERSION = 1

Entry = int | str
MatrixRows = list[list[Entry]]


def exact_entry(value: Any) -> Entry:
    number = Rational(value)
    return int(number) if number.is_integer else str(number)


def matrix_rows(matrix: Any) -> MatrixRows:
    """Rows of a sympy matrix as exact JSON entries."""
    return [[exact_entry(x) for x in matrix.row(r)] for r in range(matrix.rows)]


class Document(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    schema_version: int = Field(default=SCHEMA_VERSION, alias="schema")

    def to_json(self) -> str:
        return self.model_dump_json(by_alias=True, indent=2)


class StratumReport(BaseModel):
    name: str
    zero_orders: list[int]
    genus: int
    marked_regular_points: int


class CylinderReport(BaseModel):
    direction: list[int]
    representative: int
    circumference: int
    height: int
    rows: list[list[int]]


class SpinReport(BaseModel):
    parity: int | None = Field(default=None)
    label: str


class InvolutionReport(BaseModel):
    translation_class: list[str]
    image_of_one: int
    vertices: int
    edge_points: int
    face_points: int
    total: int


class AnalyzeReport(Document):
    origami: str
    squares: int
    stratum: StratumReport
    spin: SpinReport
    involution: InvolutionReport | None = Field(default=None)
    hyperelliptic: bool
    cylinders: dict[str, list[CylinderReport]] = Field(default_factory=dict)


class CylindersReport(Document):
    origami: str
    cylinders: dict[str, list[CylinderReport]]


class MultitwistReport(BaseModel):
    direction: list[int]
    derivative: list[list[int]]
    shear: int
    twist_counts: list[int]
    cylinders: list[CylinderReport]
    basis_labels: list[str]
    matrix_h1: MatrixRows
    cohomology_h1: MatrixRows
    equations: list[str]
    perp_labels: list[str]
    matrix_perp: MatrixRows
    cohomology_perp: MatrixRows


class MonodromyReport(Document):
    origami: str
    basis: str
    actions: list[MultitwistReport]


class GeneratorsDocument(Document):
    """Input of the density command; also what ``monodromy --perp --json`` writes."""

    model_config = ConfigDict(populate_by_name=True, extra="ignore")

    form: MatrixRows | None = Field(default=None)
    generators: dict[str, MatrixRows]
    origami: str | None = Field(default=None)
    directions: list[list[int]] | None = Field(default=None)


class DensityReport(Document):
    verdict: str
    dimension: int
    full_dimension: int
    max_word_length: int
    form: MatrixRows
    witness_log: list[str]
    algebra_basis: list[MatrixRows]
    statement: str


class BubbleReport(Document):
    input: str
    output: str
    slit: int
    refined: bool
    new_square: int
    before: StratumReport
    after: StratumReport
    removed_orders: list[int]
    added_orders: list[int]


class IsoReport(Document):
    first: str
    second: str
    relabeling: str | None = Field(default=None)


class CatalogEntry(BaseModel):
    name: str
    text: str
    provenance: str
    order: str | None = Field(default=None)


class CatalogReport(Document):
    entries: list[CatalogEntry]
    strata: dict[str, str]
