import json
import subprocess
import sys
from pathlib import Path

import pytest

from sympref.cli import main


def run_cli(args, tmp_path, name="out.json"):
    out = tmp_path / name
    code = main(args + ["--out", str(out)])
    payload = json.loads(out.read_text()) if out.exists() else None
    return code, payload


def test_group_analyze_z2(tmp_path):
    code, payload = run_cli(["group-analyze", "--group", "Z2_sp2"], tmp_path)
    assert code == 0
    assert payload["order"] == 2
    table = payload["poincare_table"]
    assert table["0"] == 1 and table["2"] == 1
    assert all(v == 0 for k, v in table.items() if k not in ("0", "2"))


def test_group_analyze_z4(tmp_path):
    code, payload = run_cli(["group-analyze", "--group", "Z4_sp2"], tmp_path)
    assert code == 0
    assert payload["poincare_table"]["0"] == 1
    assert payload["poincare_table"]["2"] == 3


def test_group_analyze_trivial(tmp_path):
    code, payload = run_cli(["group-analyze", "--group", "trivial"], tmp_path)
    assert code == 0
    table = payload["poincare_table"]
    assert table["0"] == 1
    assert all(v == 0 for k, v in table.items() if k != "0")


def test_group_analyze_csv(tmp_path):
    out = tmp_path / "table.csv"
    code = main(["group-analyze", "--group", "Z4_sp2", "--format", "csv",
                 "--out", str(out)])
    assert code == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "k,dim"
    assert "2,3" in lines


def test_group_analyze_class_data(tmp_path):
    code, payload = run_cli(["group-analyze", "--group", "Z6_sp2"], tmp_path)
    assert code == 0
    assert payload["order"] == 6
    sizes = [c["size"] for c in payload["classes"]]
    cents = [c["centralizer_order"] for c in payload["classes"]]
    assert all(s * c == 6 for s, c in zip(sizes, cents))
    assert payload["poincare_table"]["2"] == 5


def test_bad_group_exit_code(tmp_path):
    code = main(["group-analyze", "--group", "no_such_group",
                 "--out", str(tmp_path / "x.json")])
    assert code == 2


def test_cap_exit_code(tmp_path, monkeypatch):
    # order 8 rotation cannot close inside a cap of 3 elements
    blob = {
        "n": 1, "cyclotomic_order": 8,
        "generators": [[["1*z", "0"], ["0", "1*z^7"]]],
    }
    path = tmp_path / "g.json"
    path.write_text(json.dumps(blob))
    import sympref.cli as cli_mod
    import sympref.sympgroup as sg

    real = cli_mod.group_from_json
    monkeypatch.setattr(cli_mod, "group_from_json",
                        lambda data: real(data, cap=3))
    code = main(["group-analyze", "--group", str(path),
                 "--out", str(tmp_path / "x.json")])
    assert code == 3


def test_group_from_json_file(tmp_path):
    blob = {
        "n": 1, "cyclotomic_order": 1,
        "generators": [[["-1", "0"], ["0", "-1"]]],
    }
    path = tmp_path / "pm1.json"
    path.write_text(json.dumps(blob))
    code, payload = run_cli(["group-analyze", "--group", str(path)], tmp_path)
    assert code == 0
    assert payload["order"] == 2


def test_cohomology_parity(tmp_path):
    code, payload = run_cli([
        "cohomology", "--group", "Z2_sp2", "--roundtrip", "--seed", "5"], tmp_path)
    assert code == 0
    by_k_sigma = {el["k_sigma"]: el for el in payload["elements"]}
    parity = by_k_sigma[1]
    assert parity["noncoboundary_witness_omega"] is True
    assert parity["window_dims"] == {"0": 0, "1": 0, "2": 1}
    assert parity["roundtrip_verified"] is True
    ident = by_k_sigma[0]
    assert ident["window_dims"] == {"0": 1, "1": 0, "2": 0}
    for el in payload["elements"]:
        for deg in el["degrees"]:
            assert deg["all_verified"]


def test_cohomology_single_element(tmp_path):
    code, payload = run_cli([
        "cohomology", "--group", "Z4_sp2", "--element", "1"], tmp_path)
    assert code == 0
    assert len(payload["elements"]) == 1
    assert payload["elements"][0]["window_dims"]["2"] == 1


def test_cohomology_bad_element(tmp_path):
    code = main(["cohomology", "--group", "Z4_sp2", "--element", "99",
                 "--out", str(tmp_path / "x.json")])
    assert code == 2


def test_sra_flagship(tmp_path):
    code, payload = run_cli([
        "sra", "--group", "Z2_sp2", "--lambda", "all=1"], tmp_path)
    assert code == 0
    assert payload["checks"]["confluence"]["all_resolve"]
    assert payload["checks"]["nf"]["relations_hold"]
    assert payload["checks"]["berezin"]["failures"] == 0
    assert payload["checks"]["hbar0"]["ok"]
    assert payload["checks"]["specialize"]["commutes"]
    assert payload["cocycle"]["nontrivial"]


def test_sra_lambda_zero(tmp_path):
    code, payload = run_cli([
        "sra", "--group", "Z2_sp2", "--checks", "confluence,hbar0"], tmp_path)
    assert code == 0
    assert payload["cocycle"]["zero"] is True
    assert payload["checks"]["hbar0"]["ok"]


def test_sra_z4_distinct_weights(tmp_path):
    code, payload = run_cli([
        "sra", "--group", "Z4_sp2", "--lambda", "c1=1,c2=2,c3=3",
        "--checks", "confluence,nf"], tmp_path)
    assert code == 0
    assert payload["checks"]["confluence"]["all_resolve"]
    assert payload["cocycle"]["nontrivial"]


def test_sra_confluence_failure_exit_code(tmp_path):
    code, payload = run_cli([
        "sra", "--group", "Z2_sp2", "--lambda", "all=1",
        "--checks", "confluence", "--corrupt-kappa"], tmp_path)
    assert code == 4
    assert not payload["checks"]["confluence"]["all_resolve"]


def test_sra_bad_lambda_key(tmp_path):
    code = main(["sra", "--group", "Z2_sp2", "--lambda", "c0=1",
                 "--out", str(tmp_path / "x.json")])
    assert code == 2


def test_deterministic_output_bytes(tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    for path in (a, b):
        code = main(["cohomology", "--group", "Z4_sp2", "--seed", "9",
                     "--out", str(path)])
        assert code == 0
    assert a.read_bytes() == b.read_bytes()


def test_console_entry_point_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "sympref.cli", "group-analyze", "--group", "trivial"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["order"] == 1


def test_csv_rejected_outside_tables(tmp_path):
    code = main(["sra", "--group", "Z2_sp2", "--format", "csv",
                 "--out", str(tmp_path / "x.csv")])
    assert code == 2
