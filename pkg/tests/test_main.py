import io
import json
from pathlib import Path
from typing import Any
from unittest.mock import Mock

import pytest
from pytest_mock import MockerFixture

from command_processor import CommandProcessor, format_combination
from common.containers import container
from tests.conftest import A_STAR, B_STAR, C_STAR, M_STAR_PERP_FORM


def _printed_json(mock_print: Mock) -> Any:
    """The JSON document handed to console.print by the last call."""
    return json.loads(mock_print.call_args.args[0])


def _rows(matrix: Any) -> list[list[int]]:
    return [[int(x) for x in row] for row in matrix.tolist()]


class TestMainModule:
    """Test cases for the command line entry point."""

    def test_analyze_json(self, mock_console_print: Mock) -> None:
        """Test stratum, spin and involution of M* as JSON."""
        import main

        # When:
        exit_code = main.main(["analyze", "@Mstar", "--json"])

        # Then:
        assert exit_code == 0
        report = _printed_json(mock_console_print)
        assert report["schema"] == 1
        assert report["stratum"]["name"] == "H(4)"
        assert report["stratum"]["genus"] == 3
        assert report["spin"] == {"parity": 1, "label": "odd"}
        assert report["involution"] is None
        assert report["hyperelliptic"] is False
        assert [c["circumference"] for c in report["cylinders"]["1,0"]] == [1, 2, 3]
        assert [c["representative"] for c in report["cylinders"]["0,1"]] == [6, 3, 1]

    def test_analyze_hyperelliptic(self, mock_console_print: Mock) -> None:
        """Test the even spin and the eight fixed points of M**."""
        import main

        exit_code = main.main(["analyze", "@Mstarstar", "--json", "-d", "1,1"])

        assert exit_code == 0
        report = _printed_json(mock_console_print)
        assert report["spin"]["label"] == "even"
        assert report["involution"]["total"] == 8
        assert report["hyperelliptic"] is True
        assert list(report["cylinders"]) == ["1,1"]

    def test_analyze_odd_zeros(self, mock_console_print: Mock) -> None:
        """Test that spin is reported as undefined in H(1,1)."""
        import main

        exit_code = main.main(["analyze", "h=(1,2,3,4); v=(1,3)", "--json"])

        assert exit_code == 0
        report = _printed_json(mock_console_print)
        assert report["stratum"]["name"] == "H(1,1)"
        assert report["spin"] == {"parity": None, "label": "undefined"}

    def test_analyze_tables(self, mock_console_print: Mock) -> None:
        """Test that the rich rendering path prints once without errors."""
        import main

        assert main.main(["analyze", "@L"]) == 0
        mock_console_print.assert_called_once()

    def test_analyze_from_file(self, mock_console_print: Mock, tmp_path: Path) -> None:
        """Test reading an origami file given by path."""
        import main

        source = tmp_path / "torus.txt"
        source.write_text("# one square\nh=(1)\nv=(1)\n", encoding="utf-8")

        assert main.main(["analyze", str(source), "--json"]) == 0
        assert _printed_json(mock_console_print)["squares"] == 1

    def test_monodromy_equations(self, mock_console_print: Mock) -> None:
        """Test the twist equations reported for the horizontal multitwist of M*."""
        import main

        exit_code = main.main(["monodromy", "@Mstar", "--json", "-d", "1,0"])

        assert exit_code == 0
        report = _printed_json(mock_console_print)
        action = report["actions"][0]
        assert report["basis"] == "waist"
        assert action["derivative"] == [[1, 6], [0, 1]]
        assert action["twist_counts"] == [6, 3, 2]
        assert "A(zeta0) = 2 sigma2 + zeta0" in action["equations"]
        assert "A(zeta2) = 6 sigma0 + 3 sigma1 + 2 sigma2 + zeta2" in action["equations"]
        assert action["matrix_perp"] == _rows(A_STAR)

    def test_monodromy_perp_document(self, mock_console_print: Mock) -> None:
        """Test the density input written by monodromy --perp --json."""
        import main

        exit_code = main.main(
            ["monodromy", "@Mstar", "--perp", "--json", "-d", "1,0", "-d", "0,1", "-d", "1/1"]
        )

        assert exit_code == 0
        document = _printed_json(mock_console_print)
        assert document["form"] == _rows(M_STAR_PERP_FORM)
        assert document["generators"] == {
            "A": _rows(A_STAR),
            "B": _rows(B_STAR),
            "C": _rows(C_STAR),
        }
        assert document["directions"] == [[1, 0], [0, 1], [1, 1]]

    def test_monodromy_canonical_basis(self, mock_console_print: Mock) -> None:
        """Test that --basis switches the configured strategy."""
        import main

        assert main.main(["monodromy", "@L", "--json", "--basis", "canonical"]) == 0
        assert _printed_json(mock_console_print)["basis"] == "canonical"

    @pytest.mark.parametrize("name", ["paper", "waist"])
    def test_monodromy_waist_basis_names(self, mock_console_print: Mock, name: str) -> None:
        """Test that paper and waist select the same waist-difference basis."""
        import main

        # When:
        exit_code = main.main(["monodromy", "@Mstar", "--json", "--basis", name, "-d", "1,0"])

        # Then:
        assert exit_code == 0
        report = _printed_json(mock_console_print)
        assert report["basis"] == "waist"
        assert report["actions"][0]["matrix_perp"] == _rows(A_STAR)

    def test_monodromy_help_explains_directions(
        self, capsys: pytest.CaptureFixture[str]
    ) -> None:
        """Test that the help text tells slope 1/2 apart from the vector 1,2."""
        import main

        with pytest.raises(SystemExit):
            main.main(["monodromy", "--help"])

        text = " ".join(capsys.readouterr().out.split())
        assert "-d 2,1 or -d 1/2" in text
        assert "paper" in text

    def test_monodromy_tables(self, mock_console_print: Mock) -> None:
        """Test the rich rendering of the multitwist matrices."""
        import main

        assert main.main(["monodromy", "@Mstarstar"]) == 0
        mock_console_print.assert_called_once()

    def test_perp_pipes_into_density(self, mock_console_print: Mock, tmp_path: Path) -> None:
        """Test monodromy --perp --json feeding the density command."""
        import main

        # Given:
        main.main(["monodromy", "@Mstarstar", "--perp", "--json", "-d", "1,0", "-d", "0,1", "-d", "2,1"])
        generators = tmp_path / "generators.json"
        generators.write_text(mock_console_print.call_args.args[0], encoding="utf-8")

        # When:
        exit_code = main.main(["density", str(generators), "--json"])

        # Then:
        assert exit_code == 0
        report = _printed_json(mock_console_print)
        assert report["verdict"] == "dense"
        assert report["dimension"] == report["full_dimension"] == 10

    def test_density_from_stdin(self, mock_console_print: Mock, mocker: MockerFixture) -> None:
        """Test plain text generators read from standard input."""
        import main

        mocker.patch("sys.stdin", io.StringIO("1 1\n0 1\n\n1 0\n1 1\n"))

        assert main.main(["density", "-", "--json"]) == 0
        assert _printed_json(mock_console_print)["dimension"] == 3

    def test_density_inconclusive(self, mock_console_print: Mock, tmp_path: Path) -> None:
        """Test exit code 3 when no dense verdict is reached."""
        import main

        matrices = tmp_path / "identity.txt"
        matrices.write_text("1 0\n0 1\n", encoding="utf-8")

        assert main.main(["density", str(matrices)]) == 3

    def test_density_word_length_flag(self, mock_console_print: Mock, tmp_path: Path) -> None:
        """Test that --max-word-length reaches the closure."""
        import main

        matrices = tmp_path / "single.txt"
        matrices.write_text("1 1\n0 1\n", encoding="utf-8")

        assert main.main(["density", str(matrices), "--json", "--max-word-length", "2"]) == 3
        assert _printed_json(mock_console_print)["max_word_length"] == 2

    def test_density_missing_file(self, mock_console_print: Mock, tmp_path: Path) -> None:
        """Test that a missing generator file is an input error."""
        import main

        assert main.main(["density", str(tmp_path / "missing.txt")]) == 2

    @pytest.mark.parametrize(
        "argv",
        [
            ["analyze", "h=(1,2"],
            ["analyze", "h=(1,2); v=(); n=3"],
            ["analyze", "h=(1,\u00b2); v=(); n=2"],
            ["analyze", "@nowhere"],
            ["cylinders", "@Mstar", "-d", "2,2"],
            ["bubble", "@Mstar", "--slit", "9"],
            ["monodromy", "@torus", "--perp"],
        ],
    )
    def test_input_errors_exit_two(self, mock_console_print: Mock, argv: list[str]) -> None:
        """Test that bad input is reported in red with exit code 2."""
        import main

        assert main.main(argv) == 2
        assert "Error" in mock_console_print.call_args.args[0]

    def test_bubble(self, mock_console_print: Mock) -> None:
        """Test the open slit of a two-square cylinder."""
        import main

        assert main.main(["bubble", "h=(1,2); v=()", "--slit", "1", "--json"]) == 0
        report = _printed_json(mock_console_print)
        assert report["output"] == "h=(1,2); v=(1,3); n=3"
        assert report["after"]["name"] == "H(2)"
        assert report["added_orders"] == [2]
        assert report["refined"] is False

    def test_iso(self, mock_console_print: Mock) -> None:
        """Test a relabeling and its absence."""
        import main

        assert main.main(["iso", "@Mstar", "h=(1,2)(3,4,5); v=(6,3,1)(2,4); n=6", "--json"]) == 0
        assert _printed_json(mock_console_print)["relabeling"] is not None

        assert main.main(["iso", "@Mstar", "@Mstarstar"]) == 0
        assert mock_console_print.call_args.args[0] == "none"

    def test_catalog(self, mock_console_print: Mock) -> None:
        """Test the bundled entries and their strata."""
        import main

        assert main.main(["catalog", "--json"]) == 0
        report = _printed_json(mock_console_print)
        assert [e["name"] for e in report["entries"]] == ["Mstar", "Mstarstar", "torus", "L"]
        assert report["strata"] == {"Mstar": "H(4)", "Mstarstar": "H(4)", "torus": "H(∅)", "L": "H(2)"}

    def test_unexpected_error(self, mock_console_print: Mock, mocker: MockerFixture) -> None:
        """Test that an unexpected exception is logged and exits with 1."""
        import main

        mocker.patch.object(CommandProcessor, "process_command", side_effect=RuntimeError("boom"))

        assert main.main(["catalog"]) == 1
        assert "boom" in mock_console_print.call_args.args[0]

    def test_configuration_is_reset(self) -> None:
        """Test that flags from earlier tests do not leak into the container."""
        assert container.config.basis() == "waist"
        assert container.config.max_word_length() == 8


class TestFormatting:
    """Test cases for twist equation text."""

    def test_format_combination(self) -> None:
        """Test signs, unit coefficients and the zero class."""
        labels = ["sigma0", "sigma1", "zeta2"]

        assert format_combination([-2, 3, 1], labels) == "-2 sigma0 + 3 sigma1 + zeta2"
        assert format_combination([0, -1, 0], labels) == "-sigma1"
        assert format_combination([0, 0, 0], labels) == "0"
