import io
import json
import subprocess
import sys

import pytest

from freebycyclic import __version__
from freebycyclic.cli import EXIT_INPUT, EXIT_NOT_HHG, EXIT_OK, main
from freebycyclic.fixtures import fixture_path


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def test_decide_quad():
    code, out = run("decide", "quad.tt")
    assert code == EXIT_OK
    assert out.splitlines()[0] == "HHG: yes (quadratic growth)"


def test_decide_gersten_text():
    code, out = run("decide", "gersten.tt")
    assert code == EXIT_OK
    assert out.splitlines() == ["HHG: no (linear growth)",
                                "excessive linearity: axis a, E=['b', 'c'], T=['x']"]


def test_exit_verdict():
    assert run("decide", "gersten.tt", "--exit-verdict")[0] == EXIT_NOT_HHG
    assert run("decide", "notrich1.tt", "--exit-verdict")[0] == EXIT_OK


def test_decide_json_is_deterministic():
    first = run("decide", "gersten.tt", "--json")[1]
    second = run("decide", "gersten.tt", "--json")[1]
    assert first == second
    data = json.loads(first)
    assert data["hhg"] is False and data["excessive"]["E"] == ["b", "c"]


def test_decide_all():
    code, out = run("decide", "notrich2.tt", "--all", "--json")
    assert len(json.loads(out)["all_excessive"]) == 1


def test_decide_by_path_and_power():
    path = str(fixture_path("gersten.tt"))
    code, out = run("decide", path, "--power", "2", "--json")
    assert code == EXIT_OK
    assert json.loads(out)["hhg"] is False


def test_power_must_be_positive(capsys):
    with pytest.raises(SystemExit):
        run("decide", "quad.tt", "--power", "0")


def test_classify():
    code, out = run("classify", "quad.tt")
    assert out.splitlines() == ["a  0", "b  1", "c  2", "overall: 2", "EG strata: none"]
    code, out = run("classify", "eg.tt")
    assert "EG strata: {a, b}" in out


def test_validate():
    code, out = run("validate", "gersten.tt")
    assert code == EXIT_OK and out.splitlines()[-1] == "valid"
    data = json.loads(run("validate", "gersten.tt", "--json")[1])
    assert data["ok"] and data["pi1"]["passed"]


def test_validate_rejects(tmp_path):
    p = tmp_path / "bad.tt"
    p.write_text("vertex x\nedge a x x\nedge b x x\nedge c x x\n"
                 "map a = a\nmap b = b a\nmap c = c a\n")
    code, out = run("validate", str(p))
    assert code == EXIT_INPUT and out.splitlines()[-1] == "invalid"
    assert run("decide", str(p))[0] == EXIT_INPUT


def test_validate_not_homotopy_equivalence(tmp_path):
    p = tmp_path / "proper.tt"
    p.write_text("vertex x\nedge a x x\nedge b x x\nmap a = a\nmap b = b a ~b\n")
    code, out = run("validate", str(p))
    assert code == EXIT_INPUT


def test_parse_error_exit_code(tmp_path, capsys):
    p = tmp_path / "broken.tt"
    p.write_text("vertex x\nedge a x\n")
    code, _ = run("decide", str(p))
    assert code == EXIT_INPUT
    assert "line 2" in capsys.readouterr().err


def test_missing_file(capsys):
    assert run("decide", "no-such-file.tt")[0] == EXIT_INPUT


def test_nielsen_json():
    data = json.loads(run("nielsen", "gersten.tt", "--json")[1])
    assert data["fix_rank"] == {"x": 3}
    assert data["classes"][0]["E"] == ["b", "c"]
    assert data["vertex_spaces"][0]["new_loops"] == ["mu_b", "mu_c"]


def test_nielsen_with_oracle():
    code, out = run("nielsen", "notrich1.tt", "--oracle", "--max-len", "6")
    assert code == EXIT_OK and "agrees" in out


def test_oracle_subcommand():
    code, out = run("oracle", "gersten.tt", "--max-len", "5")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0].startswith("x: fix_rank 3, oracle 3 (")
    assert lines[1] == "agree"


def test_delta_text_and_dot(tmp_path):
    dot = tmp_path / "d.dot"
    code, out = run("delta", "gersten.tt", "--dot", str(dot))
    assert out.splitlines()[0] == "black 1, white 1, edges 3, pruned 0, unbranched: no"
    assert dot.read_text().startswith("graph delta {")


def test_delta_from_delta():
    code, out = run("delta", "--from-delta", "cat0nonhhg.delta")
    assert code == EXIT_OK
    assert "unbranched: no" in out.splitlines()[0]


def test_delta_json_round_trip(tmp_path):
    out = run("delta", "notrich2.tt", "--json")[1]
    p = tmp_path / "d.json"
    p.write_text(out)
    assert run("delta", "--from-delta", str(p), "--json")[1] == out


def test_delta_restricts_to_linear_part():
    data = json.loads(run("delta", "quad.tt", "--json")[1])
    assert [e["via"] for e in data["edges"]] == ["b", "CENTRAL"]


def test_witness():
    code, out = run("witness", "gersten.tt")
    lines = out.splitlines()
    assert lines[0] == "basepoint x, axis a"
    assert lines[1] == "block b: <a, ~b a b, ~b c a ~c b> x <a · t>"
    assert lines[-1] == "triple intersection contains <a, a a · t> = Z^2"
    code, out = run("witness", "notrich1.tt")
    assert "unbranched" in out


def test_version():
    proc = subprocess.run([sys.executable, "-m", "freebycyclic.cli", "--version"],
                          capture_output=True, text=True)
    assert proc.stdout.strip() == f"freebycyclic {__version__}"


def test_console_script_json_byte_identical():
    cmd = [sys.executable, "-m", "freebycyclic.cli", "decide", "gersten.tt", "--json"]
    a = subprocess.run(cmd, capture_output=True)
    b = subprocess.run(cmd, capture_output=True)
    assert a.returncode == 0 and a.stdout == b.stdout
