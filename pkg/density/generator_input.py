"""Reading generator matrices for the density command.

Two formats are accepted: the JSON document written by
``monodromy --perp --json``, or plain text with one matrix per block,
blocks separated by blank lines and entries by whitespace. Plain text
generators are named A, B, C, ... in order.
"""

from collections.abc import Sequence

from pydantic import ValidationError
from sympy import ImmutableMatrix, Rational

from common.errors import MatrixInputError
from common.models import GeneratorsDocument, MatrixRows
from common.utils import logger
from density.sp_matrix import SpMatrix, invariant_form

__all__ = ["parse_generators", "generator_name"]


def generator_name(index: int) -> str:
    return chr(ord("A") + index) if index < 26 else f"G{index}"


def _matrix(rows: Sequence[Sequence[object]], name: str) -> ImmutableMatrix:
    try:
        entries = [[Rational(str(x)) for x in row] for row in rows]
    except (TypeError, ValueError) as e:
        raise MatrixInputError(f"generator {name} has a non-rational entry: {e}")
    if not entries or any(len(row) != len(entries) for row in entries):
        raise MatrixInputError(f"generator {name} is not a square matrix")
    return ImmutableMatrix(entries)


def _from_text(text: str) -> dict[str, MatrixRows]:
    blocks: list[list[list[str]]] = [[]]
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            if blocks[-1]:
                blocks.append([])
            continue
        blocks[-1].append(line.replace(",", " ").split())
    return {
        generator_name(k): [list(row) for row in block]
        for k, block in enumerate(b for b in blocks if b)
    }


def parse_generators(text: str) -> dict[str, SpMatrix]:
    """Symplectic generators from JSON or whitespace text.

    Without an explicit form, the standard one is used when it is preserved,
    otherwise an invariant form is solved for.

    Raises:
        MatrixInputError: Malformed input, mixed sizes or no preserved form
    """
    stripped = text.strip()
    if not stripped:
        raise MatrixInputError("no generators given")

    form_rows: MatrixRows | None = None
    if stripped.startswith("{"):
        try:
            document = GeneratorsDocument.model_validate_json(stripped)
        except ValidationError as e:
            raise MatrixInputError(f"cannot read generator document: {e.errors()[0]['msg']}")
        raw = document.generators
        form_rows = document.form
    else:
        raw = _from_text(stripped)
    if not raw:
        raise MatrixInputError("no generators given")

    matrices = {name: _matrix(rows, name) for name, rows in raw.items()}
    sizes = {m.rows for m in matrices.values()}
    if len(sizes) != 1:
        raise MatrixInputError(f"generators of mixed sizes {sorted(sizes)}")

    form = (
        _matrix(form_rows, "form")
        if form_rows is not None
        else invariant_form(list(matrices.values()))
    )
    logger.debug(f"Read {len(matrices)} generators of size {sizes.pop()}")
    return {name: SpMatrix(m, form) for name, m in matrices.items()}
