"""
Command processor for the origami-monodromy CLI.
Turns parsed arguments into reports and the exit code to return.
"""

import sys
from argparse import Namespace
from collections.abc import Callable, Sequence
from dataclasses import dataclass, replace
from typing import Any

from rich.console import Group, RenderableType
from rich.table import Table
from sympy import ImmutableMatrix, Rational

from common.containers import container
from common.errors import (
    InputError,
    InvariantViolation,
    OddZeroOrderError,
    SpinUndeterminedError,
)
from common.models import (
    AnalyzeReport,
    BubbleReport,
    CatalogReport,
    CylinderReport,
    CylindersReport,
    DensityReport,
    GeneratorsDocument,
    InvolutionReport,
    IsoReport,
    MonodromyReport,
    MultitwistReport,
    SpinReport,
    StratumReport,
    matrix_rows,
)
from common.utils import logger, read_file
from density.generator_input import generator_name, parse_generators
from density.lie_closure import Verdict
from homology.bases import BasisStrategy
from homology.complex import h1_basis
from homology.waist import WaistOrder, ordered_cylinders
from invariants.involution import hyperelliptic_involution, is_hyperelliptic_component
from invariants.spin import spin_parity
from monodromy.multitwist import MultitwistAction, cohomology_matrix, multitwist, perp_matrix
from origami.catalog import Catalog
from origami.cylinders import Cylinder
from origami.origami import Origami, StratumSignature, iso, stratum
from origami.sl2z import Direction, parse_direction
from surgery.bubble import SlitSpec, split_report

__all__ = ["CommandResult", "CommandProcessor", "EXIT_INCONCLUSIVE"]

EXIT_INCONCLUSIVE = 3
DEFAULT_DIRECTIONS: tuple[Direction, ...] = ((1, 0), (0, 1))


@dataclass
class CommandResult:
    exit_code: int
    output: RenderableType


def stratum_report(signature: StratumSignature) -> StratumReport:
    return StratumReport(
        name=str(signature),
        zero_orders=list(signature.zero_orders),
        genus=signature.genus,
        marked_regular_points=signature.marked_regular_points,
    )


def cylinder_report(cyl: Cylinder) -> CylinderReport:
    return CylinderReport(
        direction=list(cyl.direction),
        representative=cyl.representative,
        circumference=cyl.circumference,
        height=cyl.height,
        rows=[list(row) for row in cyl.rows],
    )


def format_combination(coefficients: Sequence[Any], labels: Sequence[str]) -> str:
    """``zeta2 + 3 sigma1 - 2 sigma0`` from a coefficient column."""
    terms: list[str] = []
    for coefficient, label in zip(coefficients, labels):
        value = Rational(coefficient)
        if value == 0:
            continue
        magnitude = abs(value)
        term = label if magnitude == 1 else f"{magnitude} {label}"
        if not terms:
            terms.append(term if value > 0 else f"-{term}")
        else:
            terms.append(f"+ {term}" if value > 0 else f"- {term}")
    return " ".join(terms) or "0"


def twist_equations(name: str, matrix: ImmutableMatrix, labels: Sequence[str]) -> list[str]:
    return [
        f"{name}({label}) = {format_combination(list(matrix.col(j)), labels)}"
        for j, label in enumerate(labels)
    ]


def _matrix_table(title: str, matrix: ImmutableMatrix, labels: Sequence[str]) -> Table:
    table = Table(title=title, show_header=True, header_style="bold cyan")
    table.add_column("")
    for label in labels:
        table.add_column(label, justify="right")
    for r, label in enumerate(labels):
        table.add_row(label, *(str(x) for x in matrix.row(r)))
    return table


def _cylinder_table(direction: Direction, found: Sequence[Cylinder]) -> Table:
    table = Table(title=f"Cylinders in direction {direction}", header_style="bold cyan")
    for column in ("#", "square", "circumference", "height", "rows"):
        table.add_column(column, justify="right" if column != "rows" else "left")
    for index, cyl in enumerate(found):
        rows = " ".join("(" + ",".join(map(str, row)) + ")" for row in cyl.rows)
        table.add_row(
            str(index), str(cyl.representative), str(cyl.circumference), str(cyl.height), rows
        )
    return table


class CommandProcessor:
    """
    Runs one command of the CLI against the configured container.
    """

    def __init__(self) -> None:
        self.commands: dict[str, Callable[[Namespace], CommandResult]] = {
            "analyze": self.analyze,
            "cylinders": self.show_cylinders,
            "monodromy": self.monodromy,
            "density": self.density,
            "bubble": self.bubble,
            "iso": self.isomorphism,
            "catalog": self.show_catalog,
        }

    @property
    def catalog(self) -> Catalog:
        catalog: Catalog = container.catalog()
        return catalog

    def process_command(self, args: Namespace) -> CommandResult:
        """
        Run the command named by ``args.command``.

        Args:
            args (Namespace): Parsed command line arguments

        Returns:
            CommandResult: Exit code and what to print
        """
        logger.info(f"Running command {args.command}")
        return self.commands[args.command](args)

    def _origami(self, source: str, args: Namespace) -> tuple[Origami, WaistOrder]:
        o, entry = self.catalog.resolve(source)
        order = WaistOrder.parse(entry.order) if entry and entry.order else WaistOrder()
        horizontal = getattr(args, "horizontal_order", None)
        vertical = getattr(args, "vertical_order", None)
        if horizontal:
            order = replace(order, horizontal=WaistOrder.parse(f"horizontal={horizontal}").horizontal)
        if vertical:
            order = replace(order, vertical=WaistOrder.parse(f"vertical={vertical}").vertical)
        return o, order

    @staticmethod
    def _directions(args: Namespace) -> list[Direction]:
        given = getattr(args, "directions", None) or []
        return [parse_direction(d) for d in given] or list(DEFAULT_DIRECTIONS)

    def analyze(self, args: Namespace) -> CommandResult:
        """Stratum, spin parity, -Id involution and cylinder tables"""
        o, order = self._origami(args.origami, args)
        signature = stratum(o)
        if h1_basis(o).rank != 2 * signature.genus:
            raise InvariantViolation("rank of H1 does not match the genus")

        try:
            spin_data = spin_parity(o, bound=container.config.spin_direction_bound())
            spin = SpinReport(parity=spin_data.parity, label=spin_data.label)
        except OddZeroOrderError:
            spin = SpinReport(label="undefined")
        except SpinUndeterminedError as e:
            logger.info(f"Spin parity undetermined: {e}")
            spin = SpinReport(label="undetermined")

        witness = hyperelliptic_involution(o)
        involution = None
        if witness is not None:
            involution = InvolutionReport(
                translation_class=[str(x) for x in witness.translation_class],
                image_of_one=witness.image_of_one,
                vertices=witness.fixed_points.vertices,
                edge_points=witness.fixed_points.edge_points,
                face_points=witness.fixed_points.face_points,
                total=witness.fixed_points.total,
            )

        found = {d: ordered_cylinders(o, d, order) for d in self._directions(args)}
        report = AnalyzeReport(
            origami=o.canonical_text(),
            squares=o.n,
            stratum=stratum_report(signature),
            spin=spin,
            involution=involution,
            hyperelliptic=is_hyperelliptic_component(o),
            cylinders={f"{p},{q}": [cylinder_report(c) for c in cs] for (p, q), cs in found.items()},
        )
        if args.json:
            return CommandResult(0, report.to_json())

        summary = Table(title="Origami", show_header=False)
        summary.add_column("field", style="bold")
        summary.add_column("value")
        summary.add_row("origami", report.origami)
        summary.add_row("stratum", report.stratum.name)
        summary.add_row("genus", str(signature.genus))
        summary.add_row("marked points", str(signature.marked_regular_points))
        summary.add_row("spin parity", spin.label)
        summary.add_row(
            "-Id involution",
            "none" if involution is None else f"{involution.total} fixed points",
        )
        summary.add_row("hyperelliptic component", "yes" if report.hyperelliptic else "no")
        tables: list[RenderableType] = [summary]
        tables.extend(_cylinder_table(d, cs) for d, cs in found.items())
        return CommandResult(0, Group(*tables))

    def show_cylinders(self, args: Namespace) -> CommandResult:
        """Cylinder decomposition in each requested direction"""
        o, order = self._origami(args.origami, args)
        found = {d: ordered_cylinders(o, d, order) for d in self._directions(args)}
        if args.json:
            report = CylindersReport(
                origami=o.canonical_text(),
                cylinders={f"{p},{q}": [cylinder_report(c) for c in cs] for (p, q), cs in found.items()},
            )
            return CommandResult(0, report.to_json())
        return CommandResult(0, Group(*(_cylinder_table(d, cs) for d, cs in found.items())))

    def monodromy(self, args: Namespace) -> CommandResult:
        """Multitwist matrices on H1 and H1-perp, with their cohomology duals"""
        o, order = self._origami(args.origami, args)
        strategy: BasisStrategy = container.basis_strategy()
        directions = self._directions(args)
        actions = [multitwist(o, d, strategy, order) for d in directions]
        perp = [perp_matrix(mt) for mt in actions] if args.perp else []
        if args.perp and args.json:
            document = GeneratorsDocument(
                form=matrix_rows(actions[0].perp_basis.gram),
                generators={generator_name(k): matrix_rows(m) for k, m in enumerate(perp)},
                origami=o.canonical_text(),
                directions=[list(d) for d in directions],
            )
            return CommandResult(0, document.to_json())

        reports = [self._multitwist_report(generator_name(k), mt) for k, mt in enumerate(actions)]
        if args.json:
            return CommandResult(
                0,
                MonodromyReport(
                    origami=o.canonical_text(), basis=strategy.name, actions=reports
                ).to_json(),
            )

        rendered: list[RenderableType] = []
        for k, mt in enumerate(actions):
            name = generator_name(k)
            rendered.append(
                f"[bold]{name}[/bold]: direction {mt.direction}, derivative {mt.derivative}, "
                f"shear {mt.shear}, twists {list(mt.twist_counts)}"
            )
            if not args.perp:
                labels = mt.homology_basis.labels
                rendered.append(_matrix_table(f"{name} on H1", mt.matrix_h1, labels))
                rendered.extend(twist_equations(name, mt.matrix_h1, labels))
            if mt.perp_basis.rank:
                labels = mt.perp_basis.labels
                rendered.append(_matrix_table(f"{name} on H1-perp", mt.matrix_perp, labels))
                rendered.append(
                    _matrix_table(
                        f"{name} on H1-perp, cohomology", cohomology_matrix(mt.matrix_perp), labels
                    )
                )
        return CommandResult(0, Group(*rendered))

    @staticmethod
    def _multitwist_report(name: str, mt: MultitwistAction) -> MultitwistReport:
        labels = list(mt.homology_basis.labels)
        return MultitwistReport(
            direction=list(mt.direction),
            derivative=mt.derivative.rows(),
            shear=mt.shear,
            twist_counts=list(mt.twist_counts),
            cylinders=[cylinder_report(c) for c in mt.cylinders],
            basis_labels=labels,
            matrix_h1=matrix_rows(mt.matrix_h1),
            cohomology_h1=matrix_rows(cohomology_matrix(mt.matrix_h1)),
            equations=twist_equations(name, mt.matrix_h1, labels),
            perp_labels=list(mt.perp_basis.labels),
            matrix_perp=matrix_rows(mt.matrix_perp),
            cohomology_perp=matrix_rows(cohomology_matrix(mt.matrix_perp)),
        )

    def density(self, args: Namespace) -> CommandResult:
        """Zariski density certificate for symplectic generators"""
        try:
            text = sys.stdin.read() if args.matrices == "-" else read_file(args.matrices)
        except FileNotFoundError as e:
            raise InputError(str(e))
        generators = parse_generators(text)
        certificate = container.lie_closure(generators=generators).run()
        exit_code = 0 if certificate.verdict is Verdict.DENSE else EXIT_INCONCLUSIVE
        report = DensityReport(
            verdict=certificate.verdict.value,
            dimension=certificate.dimension,
            full_dimension=(certificate.form.rows // 2) * (certificate.form.rows + 1),
            max_word_length=certificate.max_word_length,
            form=matrix_rows(certificate.form),
            witness_log=certificate.witness_log,
            algebra_basis=[matrix_rows(b) for b in certificate.algebra_basis],
            statement=certificate.statement,
        )
        if args.json:
            return CommandResult(exit_code, report.to_json())
        summary = Table(title="Lie algebra closure", show_header=False)
        summary.add_column("field", style="bold")
        summary.add_column("value")
        summary.add_row("verdict", report.verdict)
        summary.add_row("dimension", f"{report.dimension} of {report.full_dimension}")
        summary.add_row("word length bound", str(report.max_word_length))
        summary.add_row("witnesses", ", ".join(report.witness_log) or "none")
        return CommandResult(exit_code, Group(summary, report.statement))

    def bubble(self, args: Namespace) -> CommandResult:
        """Bubble a square handle into the slit on top of a square"""
        o, _ = self._origami(args.origami, args)
        result = split_report(o, SlitSpec(args.slit))
        report = BubbleReport(
            input=o.canonical_text(),
            output=result.origami.canonical_text(),
            slit=args.slit,
            refined=result.refined,
            new_square=result.new_square,
            before=stratum_report(result.before),
            after=stratum_report(result.after),
            removed_orders=list(result.removed_orders),
            added_orders=list(result.added_orders),
        )
        if args.json:
            return CommandResult(0, report.to_json())
        table = Table(title="Square handle", show_header=False)
        table.add_column("field", style="bold")
        table.add_column("value")
        table.add_row("refined 2x2", "yes" if report.refined else "no")
        table.add_row("new square", str(report.new_square))
        table.add_row("stratum", f"{report.before.name} -> {report.after.name}")
        table.add_row("genus", f"{report.before.genus} -> {report.after.genus}")
        return CommandResult(0, Group(report.output, table))

    def isomorphism(self, args: Namespace) -> CommandResult:
        """Relabeling taking the first origami to the second"""
        first, _ = self._origami(args.first, args)
        second, _ = self._origami(args.second, args)
        pi = iso(first, second)
        report = IsoReport(
            first=first.canonical_text(),
            second=second.canonical_text(),
            relabeling=None if pi is None else str(pi),
        )
        if args.json:
            return CommandResult(0, report.to_json())
        return CommandResult(0, report.relabeling or "none")

    def show_catalog(self, args: Namespace) -> CommandResult:
        """Bundled origamis with their strata"""
        entries = self.catalog.entries
        strata = {e.name: str(stratum(self.catalog.origami(e.name))) for e in entries}
        if args.json:
            return CommandResult(0, CatalogReport(entries=entries, strata=strata).to_json())
        table = Table(title="Catalog", header_style="bold cyan")
        for column in ("name", "stratum", "origami", "provenance"):
            table.add_column(column)
        for e in entries:
            table.add_row(f"@{e.name}", strata[e.name], e.text, e.provenance)
        return CommandResult(0, table)
