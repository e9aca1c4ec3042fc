from pathlib import Path

from loguru import logger
from rich.console import Console

__all__ = [
    "ROOT",
    "LOG_DIR",
    "console",
    "logger",
    "read_file",
    "resolve_path",
]

ROOT = Path(__file__).parent.parent.resolve()
LOG_DIR = Path(".origami")
console = Console()

# stdout is reserved for reports
logger.remove()

LOG_FORMAT = (
    "<green>{time:YYYY-MM-DD HH:mm:ss.SSS}</green> | <level>{level: <8}</level> | "
    "<cyan>{name}:{function}:{line}</cyan> - {message}"
)
for sink_level in ("DEBUG", "INFO"):
    logger.add(
        LOG_DIR / f"{sink_level.lower()}.log",
        level=sink_level,
        format=LOG_FORMAT,
        colorize=False,
        backtrace=True,
        diagnose=sink_level == "DEBUG",
    )


def resolve_path(path: str | Path) -> Path:
    """First existing location of ``path``: as given, then under the project root.

    Bundled data such as ``data/catalog.txt`` is found even when the CLI runs
    from another directory.
    """
    candidate = Path(path)
    if candidate.is_absolute() or candidate.exists():
        return candidate
    bundled = ROOT / candidate
    if bundled.exists():
        return bundled
    raise FileNotFoundError(f"File not found: {path} (also looked in {ROOT})")


def read_file(path: str | Path) -> str:
    """UTF-8 text of a file located with ``resolve_path``."""
    resolved = resolve_path(path)
    logger.debug(f"Reading {resolved}")
    return resolved.read_text(encoding="utf-8")
