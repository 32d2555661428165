import json

import pytest

from src.cli.commands import EXIT_FOUND, EXIT_OK, EXIT_USAGE, build_parser, run
from src.data.loader import parse_family, parse_sequence


@pytest.fixture
def workdir(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv("FRANKL_LOG_LEVEL", raising=False)
    (tmp_path / "point.txt").write_text("n 2\n1\n")
    (tmp_path / "top.txt").write_text("n 3\n3\n1,2,3\n")
    (tmp_path / "open.txt").write_text("n 3\n1\n2\n")
    return tmp_path


def test_check(workdir, capsys):
    assert run(["check", "point.txt"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "abundant elements: 1\n" in out
    assert "union-closed: yes" in out
    assert "counting identity: holds" in out


def test_check_open_family_is_not_a_counterexample(workdir, capsys):
    assert run(["check", "open.txt"]) == EXIT_OK
    assert "union-closed: no" in capsys.readouterr().out


def test_basis_and_closure(workdir, capsys):
    assert run(["closure", "open.txt"]) == EXIT_OK
    assert parse_family(capsys.readouterr().out).members == (1, 2, 3)
    assert run(["basis", "top.txt"]) == EXIT_OK
    assert parse_family(capsys.readouterr().out).members == (4, 7)


def test_decompose(workdir, capsys):
    (workdir / "a3.txt").write_text("n 3\n" + "".join(f"{s}\n" for s in ["1", "2", "3", "1,2", "1,3", "2,3", "1,2,3"]))
    assert run(["decompose", "a3.txt", "--set", "1,2,3"]) == EXIT_OK
    assert parse_family(capsys.readouterr().out).members == (1, 2, 4)


def test_complement(workdir, capsys):
    assert run(["complement", "top.txt"]) == EXIT_OK
    assert parse_family(capsys.readouterr().out).members == (1, 2, 3, 5, 6)


def test_sequence_build_and_validate(workdir, capsys):
    assert run(["seq", "top.txt", "--kind", "ideal", "--element", "1", "--out", "ideal.txt"]) == EXIT_OK
    sequence = parse_sequence((workdir / "ideal.txt").read_text())
    assert sequence.deletions == (2, 6, 1, 3, 5)
    assert run(["validate-seq", "ideal.txt"]) == EXIT_OK
    assert "valid: yes" in capsys.readouterr().out


def test_invalid_sequence_exit(workdir, capsys):
    (workdir / "bad.txt").write_text("n 2\n1,2\ndelete 1\ndelete 2\nkind ideal:1\n")
    assert run(["validate-seq", "bad.txt"]) == EXIT_FOUND
    assert "valid: no" in capsys.readouterr().out


def test_sequence_by_size(workdir, capsys):
    assert run(["seq", "top.txt", "--kind", "uc", "--strategy", "by-size"]) == EXIT_OK
    assert parse_sequence(capsys.readouterr().out).deletions == (1, 2, 3, 5, 6)


def test_ideal_needs_an_element(workdir, capsys):
    assert run(["seq", "top.txt", "--kind", "ideal"]) == EXIT_USAGE
    assert "--element" in capsys.readouterr().err


def test_precondition_errors_exit_two(workdir, capsys):
    (workdir / "closed.txt").write_text("n 2\n1\n1,2\n")
    assert run(["seq", "closed.txt", "--kind", "optimal", "--element", "1"]) == EXIT_USAGE
    assert capsys.readouterr().err.startswith("error:")


def test_minimal_on_empty_complement_lists_every_element(workdir, capsys):
    (workdir / "a2.txt").write_text("n 2\n1\n2\n1,2\n")
    assert run(["pred", "minimal", "a2.txt"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "|D^1| = 0" in out and "|D^2| = 0" in out
    assert "minimal elements: 1, 2" in out


def test_predicates(workdir, capsys):
    assert run(["pred", "vincolated", "top.txt", "--set", "1"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "vincolated: yes" in out
    assert "witness: Y = {3}, X | Y = {1,3}" in out
    assert run(["pred", "vincolated-to", "top.txt", "--set", "1", "--to", "1,3"]) == EXIT_OK
    assert "vincolated-to: yes" in capsys.readouterr().out
    assert run(["pred", "minimal", "top.txt"]) == EXIT_OK
    assert "minimal elements: 3" in capsys.readouterr().out
    assert run(["pred", "shape", "point.txt"]) == EXIT_OK
    assert "shape: singleton-and-pair" in capsys.readouterr().out


def test_enumerate(workdir, capsys):
    assert run(["enumerate", "-n", "2", "--count-only"]) == EXIT_OK
    assert capsys.readouterr().out == "6\n"
    assert run(["enumerate", "-n", "2", "--oracle"]) == EXIT_OK
    assert capsys.readouterr().out == "6\n"
    assert run(["enumerate", "-n", "1"]) == EXIT_OK
    assert capsys.readouterr().out == "n 1\n1\n"


def test_enumerate_limit(workdir, capsys):
    assert run(["enumerate", "-n", "5", "--count-only"]) == EXIT_USAGE
    assert "long-run" in capsys.readouterr().err


def test_sample_is_deterministic(workdir, capsys):
    args = ["sample", "-n", "6", "--sets", "4", "--seed", "11"]
    assert run(args) == EXIT_OK
    first = capsys.readouterr().out
    assert run(args) == EXIT_OK
    assert capsys.readouterr().out == first


def test_audit_json(workdir, capsys):
    code = run(["audit", "-n", "2", "--claims", "T1", "--format", "json", "--no-progress", "--csv", "summary.csv"])
    assert code == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["claims"]["T1"]["instances_checked"] == 6
    assert (workdir / "summary.csv").read_text().startswith("claim,instances_checked")


def test_audit_unknown_claim(workdir, capsys):
    assert run(["audit", "-n", "2", "--claims", "T9", "--no-progress"]) == EXIT_USAGE
    assert "unknown claim" in capsys.readouterr().err


def test_missing_file(workdir, capsys):
    assert run(["check", "nowhere.txt"]) == EXIT_USAGE
    assert "cannot read" in capsys.readouterr().err


def test_malformed_file(workdir, capsys):
    (workdir / "broken.txt").write_text("n 2\n1,5\n")
    assert run(["basis", "broken.txt"]) == EXIT_USAGE
    assert "line 2" in capsys.readouterr().err


def test_bad_environment(workdir, monkeypatch, capsys):
    monkeypatch.setenv("FRANKL_JOBS", "many")
    assert run(["enumerate", "-n", "1"]) == EXIT_USAGE
    assert "FRANKL_JOBS" in capsys.readouterr().err


def test_global_flags_precede_the_command():
    args = build_parser().parse_args(["--strip-empty", "--verbose", "basis", "f.txt"])
    assert args.strip_empty and args.verbose
    assert args.command == "basis"
