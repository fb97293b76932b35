import json
import subprocess
import sys

import pytest

from oracles import DATA
from qutritnf.cli import main
from qutritnf.exactmat import PhasedOp, gate_matrix


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_normalize_plain(capsys):
    code, out, _ = run(capsys, "normalize", "TTT")
    assert code == 0
    assert out.splitlines() == ["Z2", "t_count: 0", "h_count: 0", "phase: xi^3"]


def test_normalize_empty(capsys):
    code, out, _ = run(capsys, "normalize", "")
    assert code == 0
    assert out.splitlines()[:2] == ["", "t_count: 0"]


def test_normalize_json_is_deterministic(capsys):
    _, a, _ = run(capsys, "normalize", "--json", "HSHTHSHT2HSHTS")
    _, b, _ = run(capsys, "normalize", "--json", "HSHTHSHT2HSHTS")
    assert a == b
    rep = json.loads(a)
    assert rep["t_count"] == 3 and rep["h_count"] == 3 and rep["denom_exp"] == 5


def test_normalize_parse_error(capsys):
    code, _, err = run(capsys, "normalize", "HQ")
    assert code == 2 and "position 1" in err


def test_normalize_expand(capsys):
    _, out, _ = run(capsys, "normalize", "--expand", "HSHT")
    assert out.splitlines()[0] == "HSH T"


def test_tcount(capsys):
    code, out, _ = run(capsys, "tcount", "TSHSHTSXTS2HSHT2SXTZSHS")
    assert code == 0 and out.strip() == "2"


def test_matrix(capsys):
    code, out, _ = run(capsys, "matrix", "T")
    assert code == 0
    assert PhasedOp.from_json(json.loads(out)) == gate_matrix("T")
    _, out, _ = run(capsys, "matrix", "H")
    assert json.loads(out)["i_pow"] == 1
    _, out, _ = run(capsys, "matrix", "HSH")
    assert PhasedOp.from_json(json.loads(out)) == gate_matrix("H0'")


def test_synth_member(capsys):
    code, out, _ = run(capsys, "synth", "-i", str(DATA / "example_member.json"), "--expand")
    assert code == 0 and out.strip() == "S2HSH T SHSH T S2HSH T2"
    _, out, _ = run(capsys, "synth", "-i", str(DATA / "example_member.json"))
    assert out.strip() == "H2' T H1' T H2' T2"


def test_synth_identity(capsys):
    code, out, _ = run(capsys, "synth", "-i", str(DATA / "identity.json"))
    assert code == 0 and out == "\n"


def test_synth_non_member(capsys):
    code, out, _ = run(capsys, "synth", "-i", str(DATA / "example_perturbed.json"))
    assert code == 1
    assert "k=6" in out and "PeelFailed at step 0" in out
    code, out, _ = run(capsys, "synth", "--json", "-i", str(DATA / "example_perturbed.json"))
    rep = json.loads(out)
    assert rep["member"] is False and rep["denom_exp"] == 6
    assert rep["peeling"]["reason"] == "PeelFailed"


def test_synth_malformed(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"entries": [[1, 2]]}')
    code, _, err = run(capsys, "synth", "-i", str(bad))
    assert code == 2 and "error" in err
    code, _, _ = run(capsys, "synth", "-i", str(tmp_path / "missing.json"))
    assert code == 2


@pytest.mark.parametrize("a, b, code, phase", [
    ("TTT", "ZZ", 0, "xi^3"),
    ("XT", "TXZSS", 0, "xi"),
    ("S", "SS", 1, None),
])
def test_equal(capsys, a, b, code, phase):
    got, out, _ = run(capsys, "equal", a, b)
    assert got == code
    if phase:
        assert out.strip() == f"equal, phase {phase}"


def test_equal_with_file(capsys):
    code, _, _ = run(capsys, "equal", str(DATA / "identity.json"), "HHHH")
    assert code == 0


def test_output_file(capsys, tmp_path):
    target = tmp_path / "out.txt"
    assert main(["tcount", "-o", str(target), "T"]) == 0
    assert target.read_text().strip() == "1"


def test_selftest(capsys):
    code, out, _ = run(capsys, "selftest", "--max-t", "0")
    assert code == 0
    assert "216 elements" in out and "selftest passed" in out


def test_selftest_dump_tables(capsys):
    code, out, _ = run(capsys, "selftest", "--dump-tables")
    assert code == 0
    assert len(json.loads(out)["classify_hp"]) == 216


def test_usage_error():
    with pytest.raises(SystemExit) as e:
        main(["frobnicate"])
    assert e.value.code == 2


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "qutritnf", "normalize", "XT"],
                       capture_output=True, text=True, check=False)
    assert r.returncode == 0
    assert r.stdout.splitlines()[0] == "T S2 X Z2"
