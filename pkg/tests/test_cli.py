"""CLI contract: determinism, exit codes, formats, report schemas."""

import json

import pytest

from tworb.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_orbits_n2(capsys):
    code, out = run_cli(capsys, "orbits", "--n", "2")
    assert code == 0
    report = json.loads(out)
    assert report["schema"] == "tworb/1"
    rows = report["rows"]
    assert [r["type"] for r in rows] == [[2], [1, 1]]
    assert sorted(r["dim_orbit"] for r in rows) == [0, 4]


def test_orbits_n0_single_row(capsys):
    code, out = run_cli(capsys, "orbits", "--n", "0")
    assert code == 0
    rows = json.loads(out)["rows"]
    assert len(rows) == 1 and rows[0]["type"] == []


def test_orbits_n4_five_rows(capsys):
    code, out = run_cli(capsys, "orbits", "--n", "4")
    rows = json.loads(out)["rows"]
    assert len(rows) == 5  # p(4)


def test_orbits_row_fields(capsys):
    _, out = run_cli(capsys, "orbits", "--n", "3")
    report = json.loads(out)
    assert "local_factor" in report["note"] or report["note"]
    row = report["rows"][0]  # type (3)
    assert row["type"] == [3]
    assert set(row) >= {"dim_orbit", "half_dim", "c", "centralizer_dim",
                        "springer_dim", "table", "local_factor", "series"}
    assert row["table"] == [{"i": 1, "j": 3, "e": 1, "s_coeff": 2},
                            {"i": 2, "j": 3, "e": 1, "s_coeff": 1}]
    assert set(row["local_factor"]) == {"num", "den"}
    assert len(row["series"]) == 4  # default series order 3


def test_json_output_is_byte_identical_across_reruns(capsys):
    _, first = run_cli(capsys, "verify", "porb", "--n-max", "2",
                       "--seed", "42")
    _, second = run_cli(capsys, "verify", "porb", "--n-max", "2",
                        "--seed", "42")
    assert first == second
    _, third = run_cli(capsys, "verify", "porb", "--n-max", "2",
                       "--seed", "43")
    assert json.loads(third)["config"]["seed"] == 43


def test_verify_identity_passes(capsys):
    code, out = run_cli(capsys, "verify", "identity", "--n-max", "12")
    assert code == 0
    report = json.loads(out)
    assert report["failed"] == 0 and report["passed"] > 0


def test_verify_centralizer_small(capsys):
    code, out = run_cli(capsys, "verify", "centralizer", "--n-max", "3",
                        "--field", "rational", "--tau", "2")
    assert code == 0
    assert json.loads(out)["failed"] == 0


def test_verify_census_q2(capsys):
    code, out = run_cli(capsys, "verify", "census", "--n", "2", "--q", "2")
    assert code == 0
    report = json.loads(out)
    bucket = [c for c in report["cases"] if c["case"] == "bucket-structure"]
    assert bucket and bucket[0]["ok"]


def test_verify_uX_finite(capsys):
    code, out = run_cli(capsys, "verify", "uX", "--n-max", "3", "--field",
                        "finite", "--q", "2")
    assert code == 0


def test_verify_scaling_small(capsys):
    code, out = run_cli(capsys, "verify", "scaling", "--n-max", "3")
    assert code == 0


def test_verify_igusa(capsys):
    code, out = run_cli(capsys, "verify", "igusa")
    assert code == 0
    assert json.loads(out)["failed"] == 0


def test_verify_dimhy(capsys):
    code, out = run_cli(capsys, "verify", "dimHY", "--n-max", "4")
    assert code == 0


def test_unknown_suite_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "nonsense"])
    assert exc.value.code == 2


def test_bad_q_exits_2(capsys):
    assert main(["verify", "census", "--q", "6"]) == 2


def test_bad_budget_exits_2(capsys):
    assert main(["orbits", "--n", "2", "--trials", "0"]) == 2


def test_square_tau_exits_2(capsys):
    assert main(["orbits", "--n", "2", "--tau", "4"]) == 2


def test_induce_borel(capsys):
    code, out = run_cli(capsys, "induce", "--levi", "1,1", "--types", "1;1")
    assert code == 0
    report = json.loads(out)
    assert report["induced_type"] == [2] and report["ok"]


def test_induce_p_equals_h(capsys):
    code, out = run_cli(capsys, "induce", "--levi", "3", "--types", "2,1")
    assert code == 0
    assert json.loads(out)["induced_type"] == [2, 1]


def test_induce_22(capsys):
    code, out = run_cli(capsys, "induce", "--levi", "2,2",
                        "--types", "1,1;1,1")
    assert code == 0
    assert json.loads(out)["induced_type"] == [2, 2]


def test_induce_default_types_are_zero_orbits(capsys):
    code, out = run_cli(capsys, "induce", "--levi", "1,1,1")
    assert code == 0
    report = json.loads(out)
    assert report["types"] == [[1], [1], [1]]
    assert report["induced_type"] == [3]


def test_seed_env_fallback(capsys, monkeypatch):
    monkeypatch.setenv("TWORB_SEED", "777")
    _, out = run_cli(capsys, "orbits", "--n", "1")
    assert json.loads(out)["config"]["seed"] == 777
    monkeypatch.delenv("TWORB_SEED")
    _, out = run_cli(capsys, "orbits", "--n", "1")
    assert json.loads(out)["config"]["seed"] == 0


def test_csv_format(capsys):
    code, out = run_cli(capsys, "orbits", "--n", "2", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 3  # header + 2 rows
    assert "type" in lines[0]


def test_pretty_format(capsys):
    code, out = run_cli(capsys, "verify", "igusa", "--format", "pretty")
    assert code == 0
    assert "PASS" in out


def test_module_entry_point():
    import subprocess
    import sys

    proc = subprocess.run(
        [sys.executable, "-m", "tworb", "orbits", "--n", "1"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["schema"] == "tworb/1"
