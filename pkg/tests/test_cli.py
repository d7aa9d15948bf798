import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from comodkit.cli import replay_witness, run

ROOT = Path(__file__).resolve().parent.parent
CORPUS = ROOT / "corpus"


def call_raw(*argv):
    out = io.StringIO()
    code = run(["--no-timing", *map(str, argv)], out)
    return code, out.getvalue()


def call(*argv):
    code, text = call_raw(*argv)
    return code, json.loads(text) if text else None


def broken_matrix2(tmp_path):
    d = json.loads((CORPUS / "matrix2.json").read_text())
    d["eps"][1] = "1"
    path = tmp_path / "broken.json"
    path.write_text(json.dumps(d))
    return path


def test_classify_sweedler():
    code, rep = call("classify", CORPUS / "sweedler.json")
    assert code == 0 and rep["status"] == "ok"
    r = rep["results"]
    assert (r["cosemisimple"], r["quasiFrobenius"], r["coFrobenius"], r["symmetric"]) == (False, True, True, False)
    assert r["nakayamaPermutation"] == [1, 0]
    assert rep["input_digest"].startswith("sha256:")


def test_classify_serial_qf_reports_dimension_counterexample():
    code, rep = call("classify", CORPUS / "serial_qf_1_2.json")
    assert code == 0
    assert rep["results"]["coFrobenius"] is False
    assert "dimension_counterexample_simple" in rep["results"]["witnesses"]


def test_nakayama_on_cosemisimple_regular():
    code, rep = call("nakayama", CORPUS / "matrix2.json", "--comodule", "regular", "--direction", "right")
    assert code == 0 and rep["results"]["isomorphic_to_input"] is True
    assert rep["results"]["output_dim"] == 4


def test_nakayama_left_on_sweedler_simple():
    code, rep = call("nakayama", CORPUS / "sweedler.json", "--comodule", "S0", "--direction", "left")
    assert code == 0
    assert rep["results"]["output_dim"] == 1 and rep["results"]["isomorphic_to_input"] is False


def test_unknown_comodule_is_input_error():
    code, rep = call("nakayama", CORPUS / "sweedler.json", "--comodule", "nope")
    assert code == 3 and rep["status"] == "input-error"


def test_validate_ok():
    code, rep = call("validate", CORPUS / "taft9.json")
    assert code == 0 and rep["status"] == "ok"


def test_validate_violation_has_replayable_witness(tmp_path):
    path = broken_matrix2(tmp_path)
    code, rep = call("validate", path)
    assert code == 1 and rep["status"] == "violated"
    assert rep["results"]["axiom"] == "counit"
    assert "index" in rep["results"]["witness"]
    assert replay_witness(path.read_text(), rep)


def test_float_is_input_error_with_position(tmp_path, capsys):
    path = tmp_path / "float.json"
    path.write_text('{"schema": 1, "field": {"kind": "rationals"}, "dim": 1,\n'
                    ' "delta": [[0, 0, 0, 0.5]], "eps": ["1"]}')
    code, rep = call("validate", path)
    assert code == 3
    assert rep["results"]["position"] == "line 2 column 22"
    assert "error:" in capsys.readouterr().err


def test_missing_file_is_input_error():
    code, rep = call("validate", "/nonexistent.json")
    assert code == 3 and rep["status"] == "input-error"


def test_integrals_and_pairing_and_radford():
    code, rep = call("integrals", CORPUS / "sweedler.json", "--side", "r")
    assert code == 0 and rep["results"]["dim"] == 1 and rep["results"]["side"] == "right"
    code, rep = call("pairing", CORPUS / "matrix2.json", "--symmetric")
    assert code == 0 and rep["results"]["nakayama_order"] == 1
    code, rep = call("radford", CORPUS / "sweedler.json")
    assert code == 0 and rep["results"]["modular_grouplike"] == ["0", "0", "1", "0"]


def test_integrals_need_a_product():
    code, rep = call("integrals", CORPUS / "matrix2.json")
    assert code == 3


def test_coquasi_command():
    code, rep = call("coquasi", CORPUS / "coquasi_z2.json")
    assert code == 0
    r = rep["results"]
    assert r["preantipode"] == [["1", "0"], ["0", "-1"]]
    assert r["left_cointegrals"] == r["right_cointegrals"] == 1


def test_verify_suite_family():
    code, rep = call("verify-suite", "--family", "sweedler")
    assert code == 0 and rep["results"]["failures"] == []
    assert all(rep["results"]["instances"][0]["checks"].values())


def test_verify_suite_unknown_family():
    code, rep = call("verify-suite", "--family", "nope")
    assert code == 3


def test_corpus_emit_bad_spec(capsys):
    code, _ = call_raw("corpus", "emit", "taft:n=3,p=5,q=2")
    assert code == 3 and "error:" in capsys.readouterr().err


def test_emit_validate_classify_round_trip_is_byte_stable(tmp_path):
    outputs = []
    for _ in range(2):
        code, text = call_raw("corpus", "emit", "serial-qf:dims=1-2-1")
        assert code == 0
        path = tmp_path / "p.json"
        path.write_text(text)
        reports = []
        for cmd in ("validate", "classify"):
            code, report = call_raw(cmd, path)
            assert code == 0
            reports.append(report)
        outputs.append((text, reports))
    assert outputs[0] == outputs[1]
    assert outputs[0][0] == (CORPUS / "serial_qf_1_2_1.json").read_text()


def test_timing_is_reported_by_default():
    buf = io.StringIO()
    run(["validate", str(CORPUS / "sweedler.json")], buf)
    assert "timing" in json.loads(buf.getvalue())


@pytest.mark.parametrize("argv, code", [
    (["validate", str(CORPUS / "sweedler.json")], 0),
    (["validate", "/nonexistent.json"], 3),
])
def test_module_entry_point_exit_codes(argv, code):
    proc = subprocess.run([sys.executable, "-m", "comodkit.cli", *argv], capture_output=True, text=True)
    assert proc.returncode == code
