import subprocess
import sys

import pytest

from frobcob import Scalar, cli, cylinder, format_cobordism, identity

from conftest import Z2, fixture_text


@pytest.fixture
def alg(tmp_path):
    def write(name):
        path = tmp_path / name
        path.write_text(fixture_text(name), encoding="utf-8")
        return str(path)
    return write


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, out


# ------------------------------------------------------------------- check

def test_check_valid(alg, capsys):
    code, out = run(capsys, "check", alg("c2.alg"))
    assert code == 0
    assert out == "frobenius: ok, action: ok\n"


def test_check_broken_frobenius(alg, capsys):
    code, out = run(capsys, "check", alg("broken.alg"))
    assert code == 1
    assert out.startswith("FAIL: frobenius: commutativity:")


def test_check_broken_action(alg, capsys):
    code, out = run(capsys, "check", alg("badaction.alg"))
    assert code == 1
    assert out.startswith("FAIL: action: module condition:")


def test_check_missing_file(capsys):
    code, out = run(capsys, "check", "/nonexistent/path.alg")
    assert code == 2
    assert out.startswith("FAIL: io:")


# -------------------------------------------------------------------- eval

def test_eval_labeled_cylinder(alg, capsys):
    code, out = run(capsys, "eval", alg("c2.alg"), "cyl[(1)]")
    assert code == 0
    assert out == "V^1 -> V^1 (d=2)\n0,1;1,0\n"


def test_eval_handle(alg, capsys):
    code, out = run(capsys, "eval", alg("c2.alg"), "copants ; pants")
    assert code == 0
    assert out == "V^1 -> V^1 (d=2)\n2,0;0,2\n"


def test_eval_closed_component_scalar(alg, capsys):
    code, out = run(capsys, "eval", alg("c4a2.alg"), "closed[1;(1)]")
    assert code == 0
    assert out == "V^0 -> V^0 (d=4)\n0\n"


def test_eval_components_format(alg, capsys):
    code, out = run(capsys, "eval", alg("c2.alg"), "copants ; pants",
                    "--format", "components")
    assert code == 0
    lines = out.split("\n")
    assert lines[0] == "V^1 -> V^1 (d=2)"
    assert lines[1].startswith("cob 1->1 group=Z/2 {")
    assert "comp 0: 2,0;0,2" in out


def test_eval_parse_error_is_exit_2(alg, capsys):
    code, out = run(capsys, "eval", alg("c2.alg"), "pants ; pants")
    assert code == 2
    assert out.startswith("FAIL: parse: 1:7: expected")


def test_eval_rejects_invalid_algebra(alg, capsys):
    code, out = run(capsys, "eval", alg("broken.alg"), "id")
    assert code == 1
    assert out.startswith("FAIL: frobenius: commutativity:")
    assert "(at " in out


# ------------------------------------------------------------------- canon

def test_canon_collapses_to_identity(capsys):
    code, out = run(capsys, "canon", "Z/2", "cup | id ; pants")
    assert code == 0
    assert out == format_cobordism(identity(1, Z2)) + "\n"


def test_canon_merges_genus_and_labels(capsys):
    code, out = run(capsys, "canon", "Z/4", "cyl[(1)] ; (copants ; pants) ; cyl[(2)]")
    assert code == 0
    expected = "cob 1->1 group=Z/4 {\n  comp genus=1 in={0} out={0} label=(3)\n}"
    assert out == expected + "\n"


def test_canon_bad_group(capsys):
    code, out = run(capsys, "canon", "Z^0", "id")
    assert code == 2
    assert out.startswith("FAIL: parse:")


# ----------------------------------------------------------------- compose

def test_compose_diagram_order(capsys):
    code, out = run(capsys, "compose", "Z/2", "copants", "pants")
    assert code == 0
    assert out == format_cobordism(cylinder(Z2.identity(), genus=1)) + "\n"


def test_compose_shape_mismatch(capsys):
    code, out = run(capsys, "compose", "Z/2", "pants", "cup")
    assert code == 2
    assert out.startswith("FAIL: compose:")


# --------------------------------------------------------------- roundtrip

def test_roundtrip_valid_report(alg, capsys):
    code, out = run(capsys, "roundtrip", alg("c2.alg"), "--iters", "5")
    assert code == 0
    assert out == ("frobenius: ok\naction: ok\nextraction: ok\n"
                   "placements: 2 passed, 0 failed\n"
                   "functoriality: 5 passed, 0 failed\n"
                   "monoidality: 5 passed, 0 failed\n"
                   "slicing: 5 passed, 0 failed\n")


def test_roundtrip_zero_iterations(alg, capsys):
    code, out = run(capsys, "roundtrip", alg("c2.alg"), "--iters", "0")
    assert code == 0
    assert "functoriality: 0 passed, 0 failed" in out


def test_roundtrip_flags_bad_action_with_witness(alg, capsys):
    code, out = run(capsys, "roundtrip", alg("badaction.alg"), "--iters", "5")
    assert code == 1
    assert "FAIL: action: module condition:" in out
    assert "FAIL: placements:" in out
    assert 'witness: word: "cyl[(1)] | id ; pants"' in out


def test_roundtrip_flags_broken_frobenius(alg, capsys):
    code, out = run(capsys, "roundtrip", alg("broken.alg"), "--iters", "5")
    assert code == 1
    assert "FAIL: frobenius: commutativity:" in out


def test_roundtrip_is_byte_deterministic(alg, capsys):
    path = alg("c4a2.alg")
    outs = set()
    for _ in range(2):
        code, out = run(capsys, "roundtrip", path, "--seed", "7", "--iters", "10")
        assert code == 0
        outs.add(out)
    assert len(outs) == 1


def test_failure_lines_are_greppable(alg, capsys):
    code, out = run(capsys, "roundtrip", alg("badaction.alg"), "--iters", "5")
    assert code == 1
    for line in out.strip().split("\n"):
        ok_line = ": ok" in line or (" passed, 0 failed" in line and "FAIL" not in line)
        assert line.startswith("FAIL: ") != ok_line


# ---------------------------------------------------------------- selftest

def test_selftest_over_shipped_fixtures(capsys):
    code, out = run(capsys, "selftest", "--iters", "3")
    assert code == 0
    lines = out.strip().split("\n")
    assert len(lines) == 8
    assert all(line.startswith("fixture ") for line in lines)
    assert sum("fails as expected" in line for line in lines) == 2
    assert "fixture c2.alg: ok" in lines
    assert any(line.startswith("fixture badaction.alg: fails as expected (action:")
               for line in lines)
    assert any(line.startswith("fixture broken.alg: fails as expected (frobenius:")
               for line in lines)


def test_selftest_is_byte_deterministic(capsys):
    outs = set()
    for _ in range(2):
        code, out = run(capsys, "selftest", "--seed", "3", "--iters", "3")
        assert code == 0
        outs.add(out)
    assert len(outs) == 1


# ------------------------------------------------------------------- usage

def test_no_arguments_is_usage_error(capsys):
    assert cli.main([]) == 2
    assert "usage" in capsys.readouterr().err


def test_unknown_subcommand_is_usage_error(capsys):
    assert cli.main(["frobnicate"]) == 2


def test_missing_positional_is_usage_error(capsys):
    assert cli.main(["eval"]) == 2


def test_console_entry_point(alg):
    proc = subprocess.run(
        [sys.executable, "-m", "frobcob", "check", alg("c2.alg")],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout == "frobenius: ok, action: ok\n"
