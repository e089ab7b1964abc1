import io
import json
import subprocess
import sys

import pytest

from aodesolve.cli import main, read_config

from fixtures import EX33, EX35, EX52, EX53


def run(args):
    out = io.StringIO()
    code = main(args, out=out)
    return code, out.getvalue()


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return _write


def test_dimension_ex33a(write):
    code, text = run(["dimension", write("ex3_3a.sys", EX33[0])])
    assert code == 0 and text.strip() == "1"


def test_exists_inconsistent(write):
    code, text = run(["exists", write("inconsistent.sys", "y - 1 = 0\ny + 1 = 0")])
    assert code == 0 and text.splitlines()[0] == "no-solution"


def test_solve_json_example_52(write):
    path = write("example5_2.sys", EX52)
    code, text = run(["solve", path, "--json"])
    assert code == 0
    doc = json.loads(text)
    assert doc["schema"] == 1 and doc["command"] == "solve"
    (system,) = doc["systems"]
    assert system["equations"] == ["y^2 - 2*x", "z^3*x - 1"]
    assert system["type"] == "IV" and system["shift_family"] is True
    assert doc["minimal_polynomial_systems"]


def test_json_is_byte_deterministic(write):
    path = write("ex53.sys", EX53)
    first = run(["solve", path, "--json"])[1]
    second = run(["solve", path, "--json"])[1]
    assert first == second
    assert run(["decompose", path, "--json", "--timing"])[1] == run(["decompose", path, "--json"])[1]


def test_decompose_modes(write):
    path = write("ex35.sys", EX35)
    alg = json.loads(run(["decompose", path, "--algebraic", "--json"])[1])
    dif = json.loads(run(["decompose", path, "--json"])[1])
    assert len(alg["systems"]) == 2 and len(dif["systems"]) == 3
    assert [s["type"] for s in dif["systems"]] == ["I", "II", "III"]


def test_puiseux_text(write):
    code, text = run(["puiseux", write("s.sys", "y^2 - x^3 = 0"), "--order", "6"])
    assert code == 0 and "x^(3/2)" in text and "pass" in text


def test_puiseux_at_infinity(write):
    code, text = run(["puiseux", write("s.sys", "x*y - 1 = 0"), "--order", "4", "--at", "inf", "--json"])
    doc = json.loads(text)
    assert code == 0 and doc["point"] == "inf"


def test_invert(write):
    code, text = run(["invert", write("s.sys", "y*y' - 1 = 0"), "--components", "1"])
    assert code == 0 and text.strip() == "y' + y^3 = 0"


def test_exit_codes(write, capsys):
    assert run(["dimension", write("bad.sys", "y +* 1 = 0")])[0] == 1
    assert run(["dimension", "/nonexistent/file.sys"])[0] == 1
    with pytest.raises(SystemExit) as e:
        main(["frobnicate", "x.sys"])
    assert e.value.code == 1
    assert run(["decompose", write("e.sys", EX52), "--fuel", "2"])[0] == 2
    assert run(["solve", write("d.sys", "y'' - y = 0")])[0] == 3
    assert "precondition" in capsys.readouterr().err


def test_config_file(write):
    conf = write("c.conf", "# caps\nfuel = 2\nmax_extension = 4\n")
    assert read_config(conf) == {"fuel": 2, "max-extension": 4}
    path = write("e.sys", EX52)
    assert run(["decompose", path, "--config", conf])[0] == 2
    assert run(["decompose", path, "--config", conf, "--fuel", "5000"])[0] == 0
    assert run(["decompose", path, "--config", write("b.conf", "colour = red\n")])[0] == 1


def test_log_file(write, tmp_path):
    log = tmp_path / "run.log"
    assert run(["decompose", write("s.sys", EX35), "--log", str(log)])[0] == 0
    assert "simple" in log.read_text()


def test_module_entry_point(write):
    path = write("s.sys", "y*y' - 1 = 0")
    proc = subprocess.run([sys.executable, "-m", "aodesolve.cli", "exists", path],
                          capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0 and proc.stdout.startswith("nonconstant-exists")
