import json
import subprocess
import sys

import pytest

from polymorph import parse_function
from polymorph.cli import parse_function_file, run


@pytest.fixture
def capsys(capsys, caplog):
    # error messages go through logging; expose them alongside stderr
    capsys.caplog = caplog
    return capsys


def call(capsys, *argv):
    capsys.caplog.clear()
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err + capsys.caplog.text


def call_json(capsys, *argv):
    code, out, err = call(capsys, *argv)
    return code, json.loads(out)


@pytest.fixture
def fn_files(tmp_path):
    paths = {}
    for name, text in {"maj3": "n=3 table=e8", "and2": "n=2 table=8", "xor2": "n=2 table=6", "or2": "n=2 table=e"}.items():
        p = tmp_path / f"{name}.fn"
        p.write_text(text + "\n")
        paths[name] = str(p)
    return paths


class TestFunctionFiles:
    def test_inline_and_file(self, fn_files):
        assert parse_function_file(fn_files["maj3"]) == parse_function("n=3 table=e8")
        assert parse_function_file("n=2 table=8").table.tolist() == [0, 0, 0, 1]

    def test_length_mismatch(self, capsys):
        code, out, err = call(capsys, "fourier", "--f", "n=2 table=ff1")
        assert code == 2 and "ff1" in err and out == ""

    def test_bad_hex(self, capsys):
        code, _, err = call(capsys, "fourier", "--f", "n=2 table=g")
        assert code == 2 and "g" in err


class TestSubcommands:
    def test_agreement_doctrinal(self, capsys, fn_files):
        code, rep = call_json(capsys, "agreement", "--f", fn_files["maj3"], "--g", fn_files["and2"], "--method", "exhaustive")
        assert code == 0 and (rep["numerator"], rep["denominator"]) == (58, 64)
        assert rep["config"]["seed"] == 0

    def test_agreement_monte_carlo_deterministic(self, capsys, fn_files):
        args = ("agreement", "--f", fn_files["maj3"], "--g", fn_files["and2"], "--method", "monte-carlo", "--samples", "5000", "--seed", "3")
        _, a = call_json(capsys, *args)
        _, b = call_json(capsys, *args, "--threads", "4")
        assert a["probability"] == b["probability"] and abs(a["probability"] - 58 / 64) <= a["halfwidth"]

    def test_fourier_xor(self, capsys, fn_files):
        code, rep = call_json(capsys, "fourier", "--f", fn_files["xor2"])
        assert code == 0 and rep["coefficients"] == [{"set": [1, 2], "value": 1.0}]

    def test_check_and_label(self, capsys):
        code, rep = call_json(capsys, "check", "--f", "n=2 table=8", "--g", "n=2 table=8")
        assert code == 0 and rep["exact"] and rep["case"] == "AndFamily"

    def test_classify(self, capsys):
        code, rep = call_json(capsys, "classify", "--g", "n=2 table=8", "--n", "1")
        assert code == 0 and rep["count"] == 3 and all(r["case"] for r in rep["results"])

    def test_enumerate(self, capsys):
        code, rep = call_json(capsys, "enumerate", "--kind", "skew", "--g", "n=2 table=6", "--n", "2")
        assert code == 0 and rep["equal"] and rep["count"] == rep["family_count"]

    def test_enumerate_size_limit(self, capsys):
        code, _, err = call(capsys, "enumerate", "--kind", "skew", "--g", "n=2 table=8", "--n", "4")
        assert code == 3 and "size limit" in err

    def test_scan_csv(self, capsys):
        code, out, _ = call(capsys, "scan", "--g", "n=3 table=e8")
        lines = out.strip().splitlines()
        assert code == 0 and len(lines) == 257 and "," in lines[0]

    def test_regularity_tree(self, capsys):
        code, rep = call_json(capsys, "regularity", "--f", "n=3 table=aa", "--tau", "0.5")
        assert code == 0 and rep["structure"] == "[1 . .]" and rep["depth"] == 1
        assert set(rep) >= {"rounds", "depth", "potential_trace", "regular_fraction_per_bias"}

    def test_regularity_junta(self, capsys):
        code, rep = call_json(capsys, "regularity", "--f", "n=3 table=aa", "--mode", "junta", "--tau", "0.5")
        assert code == 0 and rep["structure"] == "{1}"

    def test_threshold_quad(self, capsys, fn_files):
        code, rep = call_json(capsys, "threshold", "--g", fn_files["or2"], "--method", "quad-and", "--tol", "1e-9")
        assert code == 0 and abs(rep["value"] - 0.8149753595) < 1e-9 and rep["error_bound"] <= 1e-9

    def test_threshold_quad_wrong_g(self, capsys, fn_files):
        code, _, _ = call(capsys, "threshold", "--g", fn_files["xor2"], "--method", "quad-and")
        assert code == 2

    def test_threshold_borell(self, capsys):
        code, rep = call_json(capsys, "threshold", "--g", "n=3 table=e8")
        assert code == 0 and rep["kind"] == "upper-borell" and 0.83 < rep["value"] < 0.84

    def test_construct_with_csv(self, capsys, tmp_path):
        csv = tmp_path / "decay.csv"
        code, rep = call_json(capsys, "construct", "--g", "n=2 table=6", "--N", "51", "--samples", "2000", "--decay-csv", str(csv))
        assert code == 0 and rep["decay_csv"] == str(csv)
        assert csv.read_text().startswith("N,level,max_abs\n4,1,")

    def test_construct_csv_stdout(self, capsys):
        code, out, _ = call(capsys, "construct", "--g", "n=2 table=6", "--N", "5", "--decay-csv", "-")
        assert code == 0 and out.splitlines()[0] == "N,level,max_abs"

    def test_construct_bad_q(self, capsys):
        assert call(capsys, "construct", "--g", "n=2 table=6", "--q", "cube")[0] == 2

    def test_connectivity(self, capsys):
        code, rep = call_json(capsys, "connectivity", "--g", "n=2 table=e")
        assert code == 0 and rep["decomposition"] == [[1, 2]] and rep["connected"]

    def test_connectivity_parity_rejected(self, capsys):
        code, _, err = call(capsys, "connectivity", "--g", "n=2 table=6")
        assert code == 2 and "parity" in err

    def test_reproduce_single(self, capsys):
        code, rep = call_json(capsys, "reproduce", "--criterion", "6")
        assert code == 0 and rep["passed"] and rep["criteria"][0]["numerator"] == 58

    def test_reproduce_bad_id(self, capsys):
        assert call(capsys, "reproduce", "--criterion", "x")[0] == 2
        assert call(capsys, "reproduce", "--criterion", "99")[0] == 2

    def test_unknown_flag(self, capsys):
        with pytest.raises(SystemExit) as e:
            run(["fourier", "--f", "n=1 table=2", "--bogus"])
        assert e.value.code == 2


def test_module_entry_point():
    r = subprocess.run(
        [sys.executable, "-m", "polymorph", "agreement", "--f", "n=3 table=e8", "--g", "n=2 table=8"],
        capture_output=True, text=True, check=False,
    )
    assert r.returncode == 0 and json.loads(r.stdout)["numerator"] == 58
