import json
import subprocess
import sys


from whqram.cli import main, random_table
from whqram.spectrum import fwht

from conftest import DATA


def run_cli(args, capsys):
    code = main([str(a) for a in args])
    out, err = capsys.readouterr()
    return code, out, err


def test_worked_example_oracle3(tmp_path, capsys):
    qasm = tmp_path / "o3.qasm"
    report = tmp_path / "report.json"
    code, out, _ = run_cli(
        ["--input", DATA / "worked_example.json", "--oracle", 3, "--verify", "--emit-qasm", qasm, "--report", report],
        capsys,
    )
    assert code == 0
    summary = json.loads(out)
    assert summary["report"]["rz_count"] == 6
    assert summary["report"]["ancilla_count"] == 0
    assert summary["verify"]["passed"]
    assert qasm.read_text() == (DATA / "worked_example_o3.qasm").read_text()
    doc = json.loads(report.read_text())
    assert doc["cost"]["rotations_billed"] == 6
    assert doc["cost"]["epsilon"] == "1/1000"


def test_zero_function(tmp_path, capsys):
    report = tmp_path / "r.json"
    code, out, _ = run_cli(["--input", DATA / "zero.json", "--oracle", 2, "--verify", "--report", report], capsys)
    assert code == 0
    assert json.loads(out)["report"]["rz_count"] == 0
    assert "zero spectrum" in json.loads(report.read_text())["cost"]["note"]


def test_oracle4_ineligible(capsys):
    code, _, err = run_cli(["--input", DATA / "middle_degree.json", "--oracle", 4], capsys)
    assert code != 0
    assert json.loads(err)["error"] == "oracle4-ineligible"


def test_oracle4_parity(capsys):
    code, out, _ = run_cli(["--input", DATA / "parity3.json", "--oracle", 4, "--verify"], capsys)
    assert code == 0 and json.loads(out)["report"]["ancilla_count"] == 1


def test_l_out_of_range(capsys):
    code, _, err = run_cli(["--input", DATA / "worked_example.json", "--oracle", 1, "--l", 3], capsys)
    assert code != 0 and json.loads(err)["error"] == "l-out-of-range"


def test_malformed_input(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"n": 2, "d": 1, "values": [0, 1]}')
    code, _, err = run_cli(["--input", bad, "--oracle", 3], capsys)
    assert code != 0 and json.loads(err)["error"] == "malformed-input"
    code, _, err = run_cli(["--input", tmp_path / "missing.json", "--oracle", 3], capsys)
    assert json.loads(err)["error"] == "malformed-input"


def test_qubit_cap(tmp_path, capsys):
    qasm = tmp_path / "big.qasm"
    code, _, err = run_cli(["--random", "4,3,5,7", "--oracle", 1, "--l", 4, "--verify", "--emit-qasm", qasm], capsys)
    assert code != 0 and json.loads(err)["error"] == "qubit-cap-exceeded"
    assert qasm.exists()


def test_value_register_corrections_fail_verification(capsys):
    code, _, err = run_cli(["--input", DATA / "worked_example.json", "--oracle", 3, "--verify", "--value-register-corrections"], capsys)
    assert code == 1 and json.loads(err)["error"] == "verification-failed"


def test_needs_exactly_one_source(capsys):
    code, _, err = run_cli(["--oracle", 3], capsys)
    assert json.loads(err)["error"] == "bad-arguments"


def test_random_tables_are_deterministic_and_sparse():
    a = random_table(4, 3, 5, 11)
    assert a == random_table(4, 3, 5, 11)
    assert fwht(a).sparsity == 5
    assert a.is_integral


def test_output_is_deterministic(tmp_path, capsys):
    texts = []
    for i in range(2):
        path = tmp_path / f"{i}.qasm"
        run_cli(["--random", "3,2,4,5", "--oracle", 2, "--emit-qasm", path], capsys)
        texts.append(path.read_text())
    assert texts[0] == texts[1]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "whqram", "--input", str(DATA / "worked_example.json"), "--oracle", "2"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["design"] == "O2"
