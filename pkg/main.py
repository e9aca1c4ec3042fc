#!/usr/bin/env python3
import argparse
from importlib.metadata import PackageNotFoundError, version

from rich.markup import escape

from command_processor import CommandProcessor
from common.containers import container
from common.errors import OrigamiError
from common.utils import console, logger


def _version() -> str:
    try:
        return version("origami-monodromy")
    except PackageNotFoundError:
        return "0.1.0"


def build_parser() -> argparse.ArgumentParser:
    """Command line grammar for every subcommand"""
    parser = argparse.ArgumentParser(
        prog="origami-monodromy",
        description="Exact computations on square-tiled surfaces and their affine multitwists.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {_version()}")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON document")

    origami_options = argparse.ArgumentParser(add_help=False)
    origami_options.add_argument(
        "--horizontal-order", help="horizontal cylinders by one square each, e.g. 1,2,4"
    )
    origami_options.add_argument(
        "--vertical-order", help="vertical cylinders by one square each, e.g. 5,3,1"
    )

    directions = argparse.ArgumentParser(add_help=False)
    directions.add_argument(
        "-d",
        dest="directions",
        action="append",
        metavar="p,q",
        help=(
            "direction vector p,q or slope a/b (repeatable); "
            "1/2 and 2,1 are the same direction, 1,2 is not"
        ),
    )

    commands = parser.add_subparsers(dest="command", required=True)

    analyze = commands.add_parser(
        "analyze", parents=[common, origami_options, directions], help="stratum, spin, involution"
    )
    analyze.add_argument("origami", help="@name, a file, or inline text")

    cylinders = commands.add_parser(
        "cylinders", parents=[common, origami_options, directions], help="cylinder tables"
    )
    cylinders.add_argument("origami")

    monodromy = commands.add_parser(
        "monodromy",
        parents=[common, origami_options, directions],
        help="multitwist matrices",
        description=(
            "Matrices of the affine multitwists in each direction. A direction p,q is the "
            "vector (p,q); a/b is the slope, i.e. the vector (b,a). The slope 1/2 twist of "
            "@Mstarstar is -d 2,1 or -d 1/2; -d 1,2 is the slope 2 direction."
        ),
    )
    monodromy.add_argument("origami")
    monodromy.add_argument(
        "--basis",
        choices=["waist", "paper", "canonical"],
        help="reporting basis; paper is another name for waist",
    )
    monodromy.add_argument(
        "--perp", action="store_true", help="only the action on H1-perp; with --json, density input"
    )

    density = commands.add_parser("density", parents=[common], help="Zariski density certificate")
    density.add_argument("matrices", nargs="?", default="-", help="generator file, or - for stdin")
    density.add_argument("--max-word-length", type=int, help="longest conjugating word")

    bubble = commands.add_parser("bubble", parents=[common], help="bubble a square handle")
    bubble.add_argument("origami")
    bubble.add_argument("--slit", type=int, required=True, help="square whose top edge is slit")

    iso = commands.add_parser("iso", parents=[common], help="relabeling between two origamis")
    iso.add_argument("first")
    iso.add_argument("second")

    commands.add_parser("catalog", parents=[common], help="bundled origamis")
    return parser


def main(argv: list[str] | None = None) -> int:
    """Main function"""
    args = build_parser().parse_args(argv)

    if getattr(args, "basis", None):
        container.config.basis.from_value(args.basis)
    if getattr(args, "max_word_length", None):
        container.config.max_word_length.from_value(args.max_word_length)

    processor = CommandProcessor()
    try:
        result = processor.process_command(args)
    except OrigamiError as e:
        logger.error(f"{type(e).__name__}: {e}")
        console.print(f"[red]Error: {escape(str(e))}[/red]")
        return e.exit_code
    except Exception as e:
        logger.exception(f"Unexpected failure in {args.command}")
        console.print(f"[red]Unexpected error: {escape(str(e))}[/red]")
        return 1

    if isinstance(result.output, str) and args.json:
        console.print(result.output, markup=False, highlight=False, soft_wrap=True)
    else:
        console.print(result.output)
    return result.exit_code


if __name__ == "__main__":
    raise SystemExit(main())
