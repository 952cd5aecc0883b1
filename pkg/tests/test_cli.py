import io
import subprocess
import sys

import pytest

from jkss import figures
from jkss.cli import main
from jkss.diagram import parse_diagram
from jkss.laurent import X, Y, normalize_x, parse_poly, render_poly


def run(capsys, *argv):
    status = main(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


def fig(name):
    return str(figures.path(name))


@pytest.fixture
def empty_file(tmp_path):
    p = tmp_path / "empty.txt"
    p.write_text("# nothing here\n")
    return str(p)


class TestCompute:
    def test_figure6a(self, capsys):
        assert run(capsys, "compute", fig("fig6a")) == (0, "0\n", "")

    def test_figure5_virtual(self, capsys):
        status, out, _ = run(capsys, "compute", "--virtual", fig("fig5"))
        assert status == 0
        assert out.strip() == render_poly(normalize_x((X - 1) * (Y + 1) * (X + Y) * Y ** -1))

    def test_empty_diagram(self, capsys, empty_file):
        assert run(capsys, "compute", empty_file)[1] == "1*x^0*y^0\n"

    def test_raw_and_canonical(self, capsys):
        raw = parse_poly(run(capsys, "compute", "--raw", fig("fig6b"))[1].strip())
        canon = parse_poly(run(capsys, "compute", "--canonical", fig("fig6b"))[1].strip())
        assert normalize_x(raw) == canon

    def test_batch_keeps_input_order(self, capsys):
        names = ["fig6b", "fig6a", "fig5", "fig7", "hopf"]
        serial = run(capsys, "compute", *map(fig, names))[1]
        parallel = run(capsys, "compute", "--jobs", "3", *map(fig, names))[1]
        assert serial == parallel
        lines = serial.splitlines()
        assert len(lines) == 5 and lines[1] == "0"

    def test_stdin(self, capsys, monkeypatch):
        monkeypatch.setattr(sys, "stdin", io.StringIO(figures.text("fig6a")))
        assert run(capsys, "compute", "-")[1] == "0\n"

    def test_virtual_on_barred_is_exit_2(self, capsys):
        status, out, err = run(capsys, "compute", "--virtual", fig("fig6b"))
        assert status == 2 and out == "" and "bars" in err

    def test_invalid_diagram_is_exit_2(self, capsys, tmp_path):
        p = tmp_path / "bad.txt"
        p.write_text("crossing 1 +\nedge 1.0 1.0\n")
        assert run(capsys, "compute", str(p))[0] == 2

    def test_syntax_error_is_exit_1(self, capsys, tmp_path):
        p = tmp_path / "bad.txt"
        p.write_text("crossing one +\n")
        status, _, err = run(capsys, "compute", str(p))
        assert status == 1 and "line 1" in err

    def test_missing_file_is_exit_1(self, capsys, tmp_path):
        assert run(capsys, "compute", str(tmp_path / "nope.txt"))[0] == 1

    def test_conflicting_flags_are_usage_errors(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["compute", "--raw", "--canonical", fig("fig5")])
        assert info.value.code == 1


class TestCover:
    def test_figure7(self, capsys, tmp_path):
        out = tmp_path / "cover.txt"
        assert run(capsys, "cover", fig("fig7"), "-o", str(out))[0] == 0
        cover = parse_diagram(out.read_text())
        assert len(cover) == 4

    def test_pipeline_equality(self, capsys, tmp_path):
        for name in ("fig5", "fig6b", "fig7"):
            out = tmp_path / f"{name}.cover"
            run(capsys, "cover", fig(name), "-o", str(out))
            lifted = run(capsys, "compute", "--virtual", "--raw", str(out))[1]
            direct = run(capsys, "compute", "--raw", fig(name))[1]
            assert lifted == direct

    def test_stdout(self, capsys):
        status, out, _ = run(capsys, "cover", fig("fig5"))
        assert status == 0 and len(parse_diagram(out)) == 4


class TestCompare:
    def test_figure6_distinct(self, capsys):
        assert run(capsys, "compare", fig("fig6a"), fig("fig6b"))[1] == "DISTINCT\n"

    def test_self(self, capsys):
        assert run(capsys, "compare", fig("fig7"), fig("fig7"))[1] == "EQUAL_UP_TO_X_POWER\n"

    def test_walked_copy(self, capsys, tmp_path):
        walked = tmp_path / "walked.txt"
        walked.write_text(run(capsys, "walk", fig("fig7"), "--steps", "30", "--seed", "4")[1])
        assert run(capsys, "compare", fig("fig7"), str(walked))[1] == "EQUAL_UP_TO_X_POWER\n"

    def test_invalid_is_exit_2(self, capsys, tmp_path):
        p = tmp_path / "bad.txt"
        p.write_text("crossing 1 +\n")
        assert run(capsys, "compare", fig("fig7"), str(p))[0] == 2


class TestRandomWalkSelftest:
    def test_random_empty(self, capsys):
        assert run(capsys, "random", "--crossings", "0", "--bars", "0") == (0, "", "")

    def test_random_deterministic(self, capsys):
        args = ("random", "--crossings", "5", "--bars", "3", "--seed", "2")
        first = run(capsys, *args)[1]
        assert first == run(capsys, *args)[1]
        assert len(parse_diagram(first)) == 5

    def test_random_bad_arguments(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["random", "--crossings", "-1"])
        assert info.value.code == 1
        assert run(capsys, "random", "--crossings", "0", "--bars", "2")[0] == 1

    def test_walk_pipeline(self, capsys, tmp_path, monkeypatch):
        walked = run(capsys, "walk", fig("fig6b"), "--steps", "50", "--seed", "3")[1]
        monkeypatch.setattr(sys, "stdin", io.StringIO(walked))
        assert run(capsys, "compute", "-")[1] == run(capsys, "compute", fig("fig6b"))[1]

    def test_selftest(self, capsys):
        status, out, _ = run(capsys, "selftest", "--seed", "7", "--count", "10")
        assert status == 0
        assert out.count("PASS") == len(out.splitlines())

    def test_no_command_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as info:
            main([])
        assert info.value.code == 1


@pytest.mark.slow
def test_selftest_full_size():
    result = subprocess.run(
        [sys.executable, "-m", "jkss.cli", "selftest", "--seed", "7", "--count", "100"],
        capture_output=True,
        text=True,
    )
    assert result.returncode == 0, result.stdout


def test_module_entry_point():
    result = subprocess.run(
        [sys.executable, "-m", "jkss.cli", "compare", fig("fig6a"), fig("fig6b")],
        capture_output=True,
        text=True,
    )
    assert result.returncode == 0 and result.stdout == "DISTINCT\n"
