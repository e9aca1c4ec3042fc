"""The bundled origami catalog and command line input resolution."""

from pathlib import Path

from common.errors import CatalogError
from common.models import CatalogEntry
from common.utils import logger, read_file
from origami.origami import Origami, parse_origami

__all__ = ["Catalog", "parse_catalog"]

_KEYS = {"origami", "provenance", "order"}


def parse_catalog(text: str) -> list[CatalogEntry]:
    """Read ``[name]`` sections of ``key = value`` lines.

    Raises:
        CatalogError: Duplicate names, unknown keys or missing fields
    """
    sections: list[tuple[str, dict[str, str]]] = []
    for number, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("[") and line.endswith("]"):
            sections.append((line[1:-1].strip(), {}))
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sections or not sep or key not in _KEYS:
            raise CatalogError(f"catalog line {number} is not understood: {line!r}")
        sections[-1][1][key] = value.strip()

    entries: list[CatalogEntry] = []
    for name, values in sections:
        if any(e.name == name for e in entries):
            raise CatalogError(f"catalog name {name!r} is used twice")
        if "origami" not in values:
            raise CatalogError(f"catalog entry {name!r} has no origami")
        entries.append(
            CatalogEntry(
                name=name,
                text=values["origami"],
                provenance=values.get("provenance", ""),
                order=values.get("order") or None,
            )
        )
    return entries


class Catalog:
    def __init__(self, entries: list[CatalogEntry]) -> None:
        self.entries = entries
        self._by_name = {e.name: e for e in entries}

    @classmethod
    def load(cls, path: str) -> "Catalog":
        try:
            text = read_file(path)
        except FileNotFoundError as e:
            raise CatalogError(str(e))
        entries = parse_catalog(text)
        logger.debug(f"Loaded {len(entries)} catalog entries from {path}")
        return cls(entries)

    def get(self, name: str) -> CatalogEntry:
        key = name.removeprefix("@")
        if key not in self._by_name:
            raise CatalogError(
                f"no catalog entry {key!r}; known entries: {', '.join(self._by_name)}"
            )
        return self._by_name[key]

    def origami(self, name: str) -> Origami:
        return parse_origami(self.get(name).text)

    def resolve(self, source: str) -> tuple[Origami, CatalogEntry | None]:
        """An origami from ``@name``, a file path or inline text."""
        if source.startswith("@"):
            entry = self.get(source)
            return parse_origami(entry.text), entry
        path = Path(source)
        if "=" not in source and path.is_file():
            return parse_origami(path.read_text(encoding="utf-8")), None
        return parse_origami(source), None
