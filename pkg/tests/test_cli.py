import pytest

from boxsat.cli import (
    EXIT_OK,
    EXIT_PARSE,
    EXIT_TIMEOUT,
    EXIT_USAGE,
    EXIT_VERIFY,
    main,
)

from conftest import EXAMPLE1_TEXT

FIG10_EDGES = "0 1\n1 2\n2 3\n3 0\n0 2\n"


@pytest.fixture
def example1_path(tmp_path):
    p = tmp_path / "example1.cnf"
    p.write_text(EXAMPLE1_TEXT)
    return str(p)


@pytest.fixture
def fig10_path(tmp_path):
    p = tmp_path / "fig10.edges"
    p.write_text(FIG10_EDGES)
    return str(p)


class TestCount:
    def test_example1(self, example1_path, capsys):
        assert main(["count", example1_path]) == EXIT_OK
        out = capsys.readouterr().out
        assert "s MODELS 3" in out
        assert "c loadtime" in out and "c runtime" in out

    def test_ordering_and_ratio_flags(self, example1_path, capsys):
        code = main(
            [
                "count",
                example1_path,
                "--ordering",
                "minfill",
                "--insertion-ratio",
                "0.0",
                "--no-lambda-skip",
            ]
        )
        assert code == EXIT_OK
        assert "s MODELS 3" in capsys.readouterr().out

    def test_verify_ok(self, example1_path, capsys):
        assert main(["count", example1_path, "--verify"]) == EXIT_OK
        assert "c verify ok" in capsys.readouterr().out

    def test_verify_mismatch_exit_code(self, example1_path, capsys, monkeypatch):
        import boxsat.cli as cli

        monkeypatch.setattr(cli, "brute_count", lambda cnf: 99)
        assert main(["count", example1_path, "--verify"]) == EXIT_VERIFY
        out = capsys.readouterr().out
        assert "s MODELS 3" in out  # reported count is unchanged
        assert "MISMATCH" in out

    def test_stdin_input(self, capsys, monkeypatch):
        import io
        import sys

        monkeypatch.setattr(sys, "stdin", io.StringIO(EXAMPLE1_TEXT))
        assert main(["count", "-"]) == EXIT_OK
        assert "s MODELS 3" in capsys.readouterr().out

    def test_timeout(self, tmp_path, capsys):
        big = tmp_path / "big.cnf"
        big.write_text("p cnf 18 0\n")
        code = main(["count", str(big), "--timeout", "0.0001"])
        assert code == EXIT_TIMEOUT
        assert "s MODELS" not in capsys.readouterr().out

    def test_determinism(self, example1_path, capsys):
        main(["enumerate", example1_path])
        first = [
            l
            for l in capsys.readouterr().out.splitlines()
            if l.startswith(("s ", "v "))
        ]
        main(["enumerate", example1_path])
        second = [
            l
            for l in capsys.readouterr().out.splitlines()
            if l.startswith(("s ", "v "))
        ]
        assert first == second


class TestEnumerate:
    def test_streams_models(self, example1_path, capsys):
        assert main(["enumerate", example1_path]) == EXIT_OK
        out = capsys.readouterr().out
        v_lines = [l for l in out.splitlines() if l.startswith("v ")]
        assert sorted(v_lines) == [
            "v 1 -2 3 0",
            "v 1 2 -3 0",
            "v 1 2 3 0",
        ]
        assert "s MODELS 3" in out


class TestUsageErrors:
    def test_ratio_out_of_range(self, example1_path):
        assert main(["count", example1_path, "--insertion-ratio", "1.5"]) == EXIT_USAGE

    def test_unknown_ordering(self, example1_path):
        assert main(["count", example1_path, "--ordering", "random"]) == EXIT_USAGE

    def test_missing_subcommand(self):
        assert main([]) == EXIT_USAGE

    def test_missing_file(self):
        assert main(["count", "/nonexistent/file.cnf"]) == EXIT_USAGE

    def test_gen_size_too_small(self, fig10_path):
        assert main(["gen", fig10_path, "--query", "path", "--size", "1"]) == EXIT_USAGE


class TestParseErrors:
    def test_bad_cnf(self, tmp_path):
        bad = tmp_path / "bad.cnf"
        bad.write_text("p cnf 2 1\n7 0\n")
        assert main(["count", str(bad)]) == EXIT_PARSE

    def test_bad_edge_list(self, tmp_path):
        bad = tmp_path / "bad.edges"
        bad.write_text("0 zebra\n")
        assert main(["gen", str(bad), "--query", "clique", "--size", "3"]) == EXIT_PARSE


class TestGen:
    def test_gen_then_count(self, fig10_path, tmp_path, capsys):
        out_path = tmp_path / "fig10.cnf"
        code = main(
            ["gen", fig10_path, "--query", "clique", "--size", "3", "--out", str(out_path)]
        )
        assert code == EXIT_OK
        assert main(["count", str(out_path), "--verify"]) == EXIT_OK
        assert "s MODELS 2" in capsys.readouterr().out

    def test_gen_to_stdout(self, fig10_path, capsys):
        assert main(["gen", fig10_path, "--query", "path", "--size", "2"]) == EXIT_OK
        out = capsys.readouterr().out
        assert out.startswith("c query path size=2\n") or "p cnf" in out

    def test_gen_respects_cap(self, fig10_path):
        code = main(
            ["gen", fig10_path, "--query", "clique", "--size", "3", "--max-vars", "4"]
        )
        assert code == EXIT_USAGE


class TestStats:
    def test_shape(self, example1_path, capsys):
        assert main(["stats", example1_path, "--ordering", "naive-degree"]) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "n 3"
        assert lines[1] == "m 3"
        assert any(l.startswith("degree ") for l in lines)
        assert lines[-1] == "ordering naive-degree 2 1 3"
