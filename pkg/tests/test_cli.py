import json

import pytest  # type: ignore

from cylab import hodge
from cylab.main import EXIT_BREACH, EXIT_OK, EXIT_USAGE, main
from cylab.resolution.runner import STEP_LIMIT_ENV


def run(capsys, *argv: str) -> tuple[int, dict]:
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip().startswith("{") else {}


@pytest.mark.parametrize("n", ["4", "1", "-3"])
def test_invalid_n_is_usage_error(capsys, n):
    code, payload = run(capsys, "hodge", "--n", n)

    assert code == EXIT_USAGE
    assert payload["error"] == "InvalidN"
    assert "n must be odd ≥ 3" in payload["message"]


def test_argparse_errors(capsys):
    assert main([]) == EXIT_USAGE
    assert main(["hodge"]) == EXIT_USAGE
    assert main(["unknown"]) == EXIT_USAGE
    capsys.readouterr()


def test_hodge_command(capsys):
    code, payload = run(capsys, "hodge", "--n", "3")

    assert code == EXIT_OK
    assert payload["hodge_row"] == [1, 3, 3, 1]
    assert payload["unit_group_order"] == 2
    assert payload["orbit_of_1"] == [1, 2]
    assert payload["w_unif"] is True
    assert payload["kunneth_middle_dim"] == 8


def test_internal_inconsistency_is_a_breach(capsys, monkeypatch):
    broken = hodge.EigenData(r=3, dims=(hodge.EigenDims(1, 1, 1), hodge.EigenDims(2, 3, 1)))
    monkeypatch.setattr(hodge, "eigenspace_dims", lambda r: broken)

    code, payload = run(capsys, "hodge", "--n", "3")

    assert code == EXIT_BREACH
    assert payload["error"] == "InvariantBreach"


def test_higgs_command(capsys):
    code, payload = run(capsys, "higgs", "--n", "5")

    assert code == EXIT_OK
    assert payload["hodge_row"] == [1, 5, 3, 3, 5, 1]
    assert payload["yukawa_length"] == 1
    assert payload["maximal"] is True
    assert payload["assumptions"]


def test_gamma_command(capsys):
    code, payload = run(capsys, "gamma", "--n", "3", "--t", "2,3,5")

    assert code == EXIT_OK
    assert payload["s"] == ["-5/3", "-5", "5"]
    assert payload["normalization"]["s"] == ["-5/3", "-5", "5"]

    code, payload = run(capsys, "gamma", "--n", "3", "--t", "2,2,5")
    assert code == EXIT_USAGE
    assert payload["error"] == "InvalidModuliPoint"

    code, _ = run(capsys, "gamma", "--n", "3", "--t", "2,3")
    assert code == EXIT_USAGE

    code, payload = run(capsys, "gamma", "--n", "3", "--t", "2.5,3,5")
    assert code == EXIT_USAGE
    assert "rational literal" in payload["message"]


def test_kummer_command(capsys, tmp_path):
    code, payload = run(capsys, "kummer", "--s", "2,3,5")

    assert code == EXIT_OK
    assert payload["smooth"] is True
    assert payload["general_position"] is True
    assert payload["groups"] == {"r": 3, "m": 6, "order_G1": 243, "order_N1": 81}

    path = tmp_path / "degenerate.json"
    path.write_text(
        json.dumps(
            {
                "n": 3,
                "m": 6,
                "columns": [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [1, 1, 1, 1], [1, 1, 0, 0]],
            }
        )
    )
    code, payload = run(capsys, "kummer", "--arrangement", str(path))

    assert code == EXIT_OK
    assert payload["smooth"] is False
    assert payload["singular_pairs"]

    assert run(capsys, "kummer")[0] == EXIT_USAGE
    assert run(capsys, "kummer", "--arrangement", str(tmp_path / "missing.json"))[0] == EXIT_USAGE


def test_resolve_command(capsys, tmp_path):
    code, payload = run(capsys, "resolve", "--n", "3", "--dot-dir", str(tmp_path))

    assert code == EXIT_OK
    assert payload["discrepancy"] == 0
    assert payload["exceptional_count"] == 74
    assert payload["final_max_f"] == [0, 0, 0]
    assert payload["h11_model"]["h11"] == 75
    assert payload["h11_model"]["matches_expected"] is False
    assert payload["h11_model"]["census"]
    assert len(list(tmp_path.glob("step_*.dot"))) == payload["blowups"] + 1


def test_resolve_options(capsys, monkeypatch):
    assert run(capsys, "resolve", "--n", "3", "--m", "6")[0] == EXIT_USAGE
    assert run(capsys, "resolve", "--n", "3", "--m", "6", "--r", "2")[0] == EXIT_USAGE

    code, payload = run(capsys, "resolve", "--n", "1", "--m", "4", "--r", "2", "--trace")
    assert code == EXIT_OK
    assert "killed_strata" in payload["steps"][0]

    monkeypatch.setenv(STEP_LIMIT_ENV, "2")
    code, payload = run(capsys, "resolve", "--n", "3")
    assert code == EXIT_BREACH
    assert payload["error"] == "StepLimitExceeded"

    monkeypatch.setenv(STEP_LIMIT_ENV, "many")
    assert run(capsys, "resolve", "--n", "3")[0] == EXIT_USAGE


def test_report_is_deterministic(capsys, tmp_path):
    out = tmp_path / "report.json"
    code, first = run(capsys, "report", "--n", "7", "--seed", "5", "--out", str(out))
    _, second = run(capsys, "report", "--n", "7", "--seed", "5")

    assert code == EXIT_OK
    assert first == second
    assert json.loads(out.read_text()) == first
    assert first["hodge"]["hodge_row"] == [1, 7, 3, 5, 5, 3, 7, 1]
    assert first["gamma_checks"] == {"samples": 20, "agree": 20}
    assert "skipped" in first["resolution"]


def test_report_for_threefolds(capsys, caplog):
    with caplog.at_level("WARNING"):
        code, payload = run(capsys, "report", "--n", "3")

    assert code == EXIT_OK
    assert payload["kummer"]["smooth"] is True
    assert payload["higgs"]["yukawa_length"] == 1
    assert payload["resolution"]["exceptional_count"] == 74
    assert payload["resolution"]["h11_model"]["expected_new_classes"] == 50
    census = payload["resolution"]["h11_model"]["census"]
    assert sum(len(entry["components"]) for entry in census) == 74
    assert "expected 50" in caplog.text
    assert payload["resolution"]["oracle"] == "every step"


def test_selftest_command(capsys):
    code, payload = run(capsys, "selftest", "--quick", "--json")

    assert code == EXIT_OK
    statuses = {result["name"]: result["status"] for result in payload["results"]}
    assert statuses.pop("resolution n=5 (oracle at the end)") == "skipped"
    assert set(statuses.values()) == {"pass"}


def test_selftest_catches_injected_fault(capsys):
    code, payload = run(capsys, "selftest", "--quick", "--json", "--inject-fault", "multiplicity")

    assert code == EXIT_BREACH
    failed = [result["name"] for result in payload["results"] if result["status"] == "fail"]
    assert failed == ["resolution n=3 (oracle every step)"]
