"""End-to-end command-line behavior: exit codes, output, report files."""

import json

import pytest

from galkappa import report
from galkappa.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# -- algebra -------------------------------------------------------------------


def test_algebra_verify_bundled(capsys):
    code, out, _ = run(capsys, "algebra", "verify", "planar_galilei")
    assert code == 0
    assert "jacobi identity: PASS" in out


def test_algebra_verify_failing_file(tmp_path, capsys):
    bad = tmp_path / "broken.alg"
    bad.write_text(
        "generators: A B C\n[A, B] = i*C\n[A, C] = i*C\n[B, C] = i*A\n"
    )
    code, out, _ = run(capsys, "algebra", "verify", str(bad))
    assert code == 1
    assert "FAIL at" in out


def test_algebra_verify_malformed_file(tmp_path, capsys):
    bad = tmp_path / "syntax.alg"
    bad.write_text("[A, B] = i*C\n")
    code, _, err = run(capsys, "algebra", "verify", str(bad))
    assert code == 2
    assert "line 1:" in err


def test_algebra_unknown_bundled_name(capsys):
    code, _, err = run(capsys, "algebra", "cohomology", "nonexistent")
    assert code == 2
    assert "available" in err


def test_algebra_cohomology_planar(capsys):
    code, out, _ = run(capsys, "algebra", "cohomology", "planar_galilei")
    assert code == 0
    assert "independent central classes: 3" in out


def test_algebra_cohomology_other_dimensions(capsys):
    for name, h2 in (
        ("galilei_1d", 2),
        ("so3", 0),
        ("abelian4", 6),
        ("galilei_3p1", 1),
        ("planar_galilei_mass", 2),
        ("planar_galilei_literal", 5),
    ):
        code, out, _ = run(capsys, "algebra", "cohomology", name)
        assert code == 0
        assert f"independent central classes: {h2}" in out


# -- realize -------------------------------------------------------------------


@pytest.mark.parametrize("model", ["schrodinger", "levyleblond", "multispinor"])
def test_realize_passes(model, capsys):
    code, out, _ = run(capsys, "realize", model)
    assert code == 0
    assert "result: PASS" in out
    assert "extracted second extension parameter: 0" in out
    assert "extracted mass: m" in out


def test_realize_multispinor_rank_flag(capsys):
    code, out, _ = run(capsys, "realize", "multispinor", "--rank", "3",
                       "--spin-s", "-1")
    assert code == 0
    assert "result: PASS" in out


def test_realize_bad_rank_is_usage_error(capsys):
    code, _, err = run(capsys, "realize", "multispinor", "--rank", "5")
    assert code == 2
    assert "rank" in err


def test_realize_bad_spin_is_usage_error(capsys):
    code, _, err = run(capsys, "realize", "levyleblond", "--spin-s", "3")
    assert code == 2
    assert "spin" in err


def test_realize_shift_symbolic(capsys):
    code, out, _ = run(capsys, "realize", "schrodinger", "--shift", "c")
    assert code == 0
    assert "extracted second extension parameter: -c" in out


def test_realize_shift_rational(capsys):
    code, out, _ = run(capsys, "realize", "schrodinger", "--shift=-3/2")
    assert code == 0
    assert "extracted second extension parameter: 3/2" in out


def test_realize_lambda_keeps_table(capsys):
    code, out, _ = run(capsys, "realize", "levyleblond", "--lambda", "lam")
    assert code == 0
    assert "result: PASS" in out


def test_realize_bad_parameter_literal(capsys):
    code, _, err = run(capsys, "realize", "schrodinger", "--shift", "zebra")
    assert code == 2
    assert "exact scalar" in err


def test_realize_strict_literal_table_fails(capsys):
    code, out, _ = run(capsys, "realize", "schrodinger", "--strict-literal-table")
    assert code == 1
    assert "[K1,H] FAIL" in out
    assert "[K2,H] FAIL" in out
    assert "result: FAIL" in out


# -- fieldcheck ----------------------------------------------------------------


def test_fieldcheck_conservation(capsys):
    code, out, _ = run(capsys, "fieldcheck", "conservation")
    assert code == 0
    assert out.count("pass") == 4  # both indices, both spins


def test_fieldcheck_conservation_narrowed(capsys):
    code, out, _ = run(capsys, "fieldcheck", "conservation",
                       "--index", "2", "--spin-s", "-1")
    assert code == 0
    assert out.count("pass") == 1


def test_fieldcheck_conservation_literal_variant(capsys):
    code, out, _ = run(capsys, "fieldcheck", "conservation",
                       "--variant", "literal", "--index", "1", "--spin-s", "1")
    assert code == 1
    assert "FAIL" in out
    assert "residual:" in out


def test_fieldcheck_boost(capsys):
    code, out, _ = run(capsys, "fieldcheck", "boost")
    assert code == 0
    assert "spin +1: intertwining matrix" in out
    assert "spin -1: intertwining matrix" in out


def test_fieldcheck_rotation(capsys):
    code, out, _ = run(capsys, "fieldcheck", "rotation")
    assert code == 0
    assert "[0, 0]" in out  # the rotation generator commutes outright


def test_fieldcheck_multispinor_eqs(capsys):
    code, out, _ = run(capsys, "fieldcheck", "multispinor-eqs", "--rank", "4")
    assert code == 0
    assert "3 symmetric component(s) unconstrained" in out
    assert "second-row scale 1/4" in out


def test_fieldcheck_multispinor_bad_rank(capsys):
    code, _, err = run(capsys, "fieldcheck", "multispinor-eqs", "--rank", "7")
    assert code == 2
    assert "rank" in err


# -- numcheck ------------------------------------------------------------------


def test_numcheck_defaults(capsys):
    code, out, _ = run(capsys, "numcheck")
    assert code == 0
    assert "result: PASS" in out
    assert "[K1,K2] residual exact zero" in out


def test_numcheck_small_grid_still_passes(capsys):
    # any low block strictly inside the cut misses the edge defects
    code, out, _ = run(capsys, "numcheck", "--nmax", "4", "--low", "3")
    assert code == 0
    assert "result: PASS" in out


def test_numcheck_unprojected_edge_fails(capsys):
    code, out, _ = run(capsys, "numcheck", "--nmax", "8", "--low", "8")
    assert code == 1
    assert "result: FAIL" in out
    assert "FAIL" in out


def test_numcheck_zero_mass_is_usage_error(capsys):
    code, _, err = run(capsys, "numcheck", "--m", "0")
    assert code == 2
    assert "mass" in err


def test_numcheck_bad_low_cutoff(capsys):
    code, _, err = run(capsys, "numcheck", "--nmax", "8", "--low", "12")
    assert code == 2
    assert "low cutoff" in err


def test_unknown_flag_exits_two(capsys):
    code, _, _ = run(capsys, "realize", "schrodinger", "--frobnicate")
    assert code == 2


# -- reports -------------------------------------------------------------------


def test_report_written_when_env_set(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv(report.REPORT_DIR_ENV, str(tmp_path))
    code, out, _ = run(capsys, "realize", "schrodinger")
    assert code == 0
    path = tmp_path / "realize-schrodinger.json"
    assert path.exists()
    assert f"report written: {path}" in out
    payload = json.loads(path.read_text())
    assert payload["passed"] is True
    assert payload["command"] == "realize schrodinger"
    anchors = [c["anchor"] for c in payload["checks"]]
    assert anchors == [
        "structure-table", "second-extension-parameter", "mass-parameter",
    ]


def test_report_bytes_are_deterministic(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv(report.REPORT_DIR_ENV, str(tmp_path))
    path = tmp_path / "numcheck.json"
    run(capsys, "numcheck", "--nmax", "6", "--low", "3")
    first = path.read_bytes()
    run(capsys, "numcheck", "--nmax", "6", "--low", "3")
    assert path.read_bytes() == first


def test_report_payload_round_trips(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv(report.REPORT_DIR_ENV, str(tmp_path))
    run(capsys, "algebra", "cohomology", "planar_galilei")
    payload = json.loads((tmp_path / "algebra-cohomology.json").read_text())
    assert json.loads(report.render(payload)) == payload
    detail = payload["checks"][0]["detail"]
    assert detail["h2"] == 3
    assert detail["cocycle_dim"] - detail["coboundary_dim"] == 3


def test_no_report_without_env(tmp_path, monkeypatch, capsys):
    monkeypatch.delenv(report.REPORT_DIR_ENV, raising=False)
    code, out, _ = run(capsys, "numcheck", "--nmax", "6", "--low", "3")
    assert code == 0
    assert "report written" not in out
