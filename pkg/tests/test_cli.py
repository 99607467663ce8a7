import json

import pytest

from sskit.cli import build_parser, main, resolve_seed
from sskit.report import DEFAULT_SEED, RunConfig, SUITES, report_to_json, run_suite


def _args(*extra):
    return ["verify", "nerve", "--algebra", "abelian-2", *extra]


def test_verify_passes_and_prints_checks(capsys):
    code = main(_args())
    out = capsys.readouterr().out
    assert code == 0
    assert "suite nerve: PASS" in out
    assert out.count("[PASS]") >= 5
    assert "[FAIL]" not in out


def test_json_to_stdout(capsys):
    code = main(_args("--json", "-"))
    out = capsys.readouterr().out
    assert code == 0
    body = out[out.index("{"):]
    report = json.loads(body)
    assert report["suite"] == "nerve"
    assert report["pass"] is True
    assert report["config"]["algebra"] == "abelian-2"


def test_json_to_file(tmp_path, capsys):
    path = tmp_path / "report.json"
    assert main(_args("--json", str(path))) == 0
    capsys.readouterr()
    report = json.loads(path.read_text())
    assert all(c["pass"] for c in report["checks"])


def test_deterministic_reports():
    cfg = RunConfig(algebra="abelian-2")
    a = report_to_json(run_suite("nerve", cfg))
    b = report_to_json(run_suite("nerve", cfg))
    assert a == b


def test_seed_changes_are_respected(capsys):
    cfg1 = RunConfig(algebra="abelian-2", seed=1)
    cfg2 = RunConfig(algebra="abelian-2", seed=2)
    r1 = run_suite("nerve", cfg1)
    r2 = run_suite("nerve", cfg2)
    assert r1["config"]["seed"] != r2["config"]["seed"]
    assert r1["pass"] and r2["pass"]


def test_resolve_seed_precedence(monkeypatch):
    monkeypatch.delenv("SSKIT_SEED", raising=False)
    assert resolve_seed(7) == 7
    assert resolve_seed(None) == DEFAULT_SEED
    monkeypatch.setenv("SSKIT_SEED", "123")
    assert resolve_seed(None) == 123
    assert resolve_seed(7) == 7


def test_unknown_suite_rejected_by_parser():
    with pytest.raises(SystemExit):
        build_parser().parse_args(["verify", "nonsense"])


def test_bad_fd_step_is_config_error(capsys):
    assert main(_args("--fd-step", "-1")) == 2


def test_missing_algebra_file_is_config_error(capsys):
    assert main(["verify", "nerve", "--algebra", "/does/not/exist.json"]) == 2


def test_tol_scale_flag_parsed():
    args = build_parser().parse_args(_args("--tol-scale", "10"))
    assert args.tol_scale == 10.0


def test_all_suites_registered():
    assert set(SUITES) == {"nerve", "loop", "manin", "double", "simplicial",
                           "imform", "transgression", "morita", "hypercover"}
