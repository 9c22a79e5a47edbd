import json
from fractions import Fraction

import pytest

from hamop.cli import main
from hamop.specfile import dump_operator_spec
from hamop.catalog import mokhov_operator

from test_specfile import op5_file


def write(tmp_path, name, data):
    p = tmp_path / name
    p.write_text(json.dumps(data) if isinstance(data, dict) else data)
    return str(p)


def test_verify_pass_exit0(tmp_path, capsys):
    path = write(tmp_path, "op5.json", op5_file())
    assert main(["verify", path]) == 0
    out = capsys.readouterr().out
    assert "verdict: pass" in out


def test_verify_fail_exit1_with_killing_witness(tmp_path, capsys):
    # changing gt^{11} to -3u1 breaks the Killing condition: the residual at
    # (1,1,2) becomes 2*c^{12}_2 + c^{11}_1 = -1
    data = op5_file()
    data["metrics"][1]["linear"][0]["coeff"] = "-3/1"
    path = write(tmp_path, "bad.json", data)
    assert main(["verify", path]) == 1
    out = capsys.readouterr().out
    assert "FAIL killing" in out
    assert "(1, 1, 2)" in out and "-1/1" in out


def test_verify_malformed_exit2(tmp_path, capsys):
    path = write(tmp_path, "broken.json", "{ not json")
    assert main(["verify", path]) == 2


def test_verify_json_deterministic(tmp_path):
    path = write(tmp_path, "op5.json", op5_file())
    out1 = tmp_path / "r1.json"
    out2 = tmp_path / "r2.json"
    assert main(["verify", path, "--output", "json", "--seed", "5", "--out", str(out1)]) == 0
    assert main(["verify", path, "--output", "json", "--seed", "5", "--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    payload = json.loads(out1.read_text())
    assert payload["verdict"] == "pass"
    assert payload["timing_ms"] is None
    assert payload["segre"]["segre_type"] == "[2]"


def test_verify_timing_flag(tmp_path):
    path = write(tmp_path, "op5.json", op5_file())
    out = tmp_path / "t.json"
    assert main(["verify", path, "--output", "json", "--timing", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["timing_ms"] is not None


def test_verify_sampled_mode_flag(tmp_path):
    path = write(tmp_path, "op5.json", op5_file())
    out = tmp_path / "s.json"
    assert main(["verify", path, "--mode", "sampled", "--output", "json", "--out", str(out)]) == 0
    payload = json.loads(out.read_text())
    assert payload["mode"] == "sampled"


def test_classify_operator5(tmp_path, capsys):
    path = write(tmp_path, "op5.json", op5_file())
    assert main(["classify", path]) == 0
    out = capsys.readouterr().out
    assert "segre type: [2]" in out
    assert "1/1*u2" in out  # interpolated eigenvalue polynomial
    assert "mokhov-n2" in out


def test_classify_direct_sum_reducible_hint(tmp_path, capsys):
    from hamop.catalog import direct_sum
    from hamop.metrics import LinearMetric, OperatorSpec

    one = OperatorSpec([LinearMetric.constant([[1]]), LinearMetric.constant([[4]])])
    s = direct_sum(mokhov_operator(2), one)
    path = write(tmp_path, "sum.json", dump_operator_spec(s))
    assert main(["classify", path]) == 0
    out = capsys.readouterr().out
    assert "may be reducible" in out


def test_classify_accepts_failing_spec(tmp_path, capsys):
    data = op5_file()
    data["metrics"][1]["linear"][0]["coeff"] = "-3/1"
    path = write(tmp_path, "bad.json", data)
    assert main(["classify", path]) == 0


def test_catalog_unknown_id(tmp_path, capsys):
    assert main(["catalog", "--id", "unknown"]) == 2
    err = capsys.readouterr().err
    assert "available" in err and "mokhov-n2" in err


def test_catalog_list_with_filter(capsys):
    assert main(["catalog", "--n", "4", "--d", "2"]) == 0
    out = capsys.readouterr().out
    assert "s22-case1" in out and "mokhov-n4" in out
    assert "mokhov-n3" not in out


def test_catalog_emit_round_trip(tmp_path, capsys):
    out = tmp_path / "entry.json"
    assert main(["catalog", "--id", "mokhov", "--n", "3", "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["n"] == 3
    path = write(tmp_path, "emitted.json", data)
    assert main(["verify", path]) == 0


def test_catalog_emit_with_params_round_trip(tmp_path, capsys):
    out = tmp_path / "thm3.json"
    assert main(["catalog", "--id", "thm3-case1", "--out", str(out)]) == 0
    assert main(["verify", str(out)]) == 0


def test_normalize_commands(capsys):
    assert main(["normalize", "--n", "5", "--xi", "1,2,3,4"]) == 0
    out = capsys.readouterr().out
    assert "normal form: mu(5;0)" in out
    assert main(["normalize", "--n", "7", "--xi", "1,1/2,3,-2,5,7"]) == 0
    out = capsys.readouterr().out
    assert "mu(7;0) + 67/24*mu(7;2)" in out
    # constant-eigenvalue mode demanded when xi_0 = 0
    assert main(["normalize", "--n", "5", "--xi", "0,1,3,4"]) == 2
    err = capsys.readouterr().err
    assert "--alpha" in err
    assert main(["normalize", "--n", "5", "--xi", "0,1,3,4", "--alpha", "1"]) == 0
    out = capsys.readouterr().out
    assert "mu(5;1)" in out and "gt0" in out
    # wrong count
    assert main(["normalize", "--n", "5", "--xi", "1,2"]) == 2


def test_frobenius_command(capsys):
    assert main(["frobenius", "--n", "4"]) == 0
    out = capsys.readouterr().out
    assert "intersection form equals mu(4;0): True" in out
    assert main(["frobenius", "--n", "2"]) == 0
    out = capsys.readouterr().out
    assert "1, 1, -1" in out  # scalings (n-1, n-1, 1-n) at n = 2
    assert main(["frobenius", "--n", "1"]) == 2


def test_env_seed(monkeypatch, tmp_path):
    monkeypatch.setenv("HAMOP_SEED", "42")
    path = write(tmp_path, "op5.json", op5_file())
    out = tmp_path / "r.json"
    assert main(["verify", path, "--output", "json", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["seed"] == 42
