"""Command line behavior: rendering, exit codes, config plumbing, and
the --server path agreeing with in-process runs."""

import pytest
from fastapi.testclient import TestClient

import towerbound.cli as cli_module
from towerbound.cli import main
from towerbound.report import parse_csv, parse_json
from towerbound.service import app


def test_bound_headline_value(capsys):
    assert main(["bound", "3", "1", "--level", "5^1"]) == 0
    out = capsys.readouterr().out
    assert "500" in out
    assert "1-1/q" in out


def test_bound_degree_out_of_range_is_usage(capsys):
    assert main(["bound", "3", "5"]) == 3
    assert "error:" in capsys.readouterr().err


def test_bound_middle_degree_reports_volume(capsys):
    assert main(["bound", "3", "2"]) == 0
    out = capsys.readouterr().out
    assert "volume exponent 8" in out


def test_bound_malformed_level_is_usage(capsys):
    assert main(["bound", "3", "1", "--level", "12^1"]) == 3


def test_bound_json_round_trips(capsys):
    assert main(["bound", "4", "2", "--level", "3^1", "--format", "json"]) == 0
    report = parse_json(capsys.readouterr().out)
    headline = [r for r in report.rows if r["kind"] == "headline"]
    assert headline[0]["value"] == "26244"
    assert headline[0]["factor"] == "1+1/q"


def test_shapes_table(capsys):
    assert main(["shapes", "3"]) == 0
    out = capsys.readouterr().out
    assert "3*1" in out
    assert "1*3" in out


def test_hodge_table(capsys):
    assert main(["hodge", "4", "--format", "csv"]) == 0
    report = parse_csv(capsys.readouterr().out)
    assert report.command == "hodge"
    assert report.assertions.failed == 0


def test_verify_shapes_passes(capsys):
    assert main(["verify", "shapes", "--rank-max", "6"]) == 0
    out = capsys.readouterr().out
    assert "pass" in out


def test_verify_tiny_guard_exits_skipped(capsys):
    assert main(["verify", "indices", "--guard", "1024"]) == 2
    out = capsys.readouterr().out
    assert "skip" in out


def test_verify_unknown_scope_is_usage(capsys):
    assert main(["verify", "bogus"]) == 3
    assert "error:" in capsys.readouterr().err


def test_bad_format_is_usage(capsys):
    assert main(["bound", "3", "1", "--format", "xml"]) == 3


def test_report_json_parses(capsys):
    args = ["report", "--format", "json", "--scope", "shapes", "--rank-max", "5"]
    assert main(args) == 0
    report = parse_json(capsys.readouterr().out)
    assert report.command == "verify"
    assert report.params["scope"] == "shapes"
    assert report.assertions.failed == 0


def test_help_exits_zero(capsys):
    assert main(["--help"]) == 0
    assert "bound" in capsys.readouterr().out


def test_config_guard_applies(tmp_path, capsys):
    cfg = tmp_path / "towerbound.conf"
    cfg.write_text("guard=1024\n")
    assert main(["--config", str(cfg), "verify", "indices", "--modulus-cap", "9"]) == 2


def test_config_cache_dir_populates(tmp_path, capsys):
    cache_dir = tmp_path / "cache"
    cfg = tmp_path / "towerbound.conf"
    cfg.write_text(f"cache-dir={cache_dir}\nguard={2**20}\n")
    args = ["--config", str(cfg), "verify", "indices", "--modulus-cap", "4"]
    assert main(args) == 0
    first = {p.name for p in cache_dir.iterdir()}
    assert first
    capsys.readouterr()
    assert main(args) == 0
    assert {p.name for p in cache_dir.iterdir()} == first


def test_config_unknown_key_is_usage(tmp_path, capsys):
    cfg = tmp_path / "towerbound.conf"
    cfg.write_text("speed=11\n")
    assert main(["--config", str(cfg), "shapes", "3"]) == 3


class _HttpxShim:
    """Stand-in for the httpx module that routes to a TestClient."""

    def __init__(self, client: TestClient):
        self._client = client

    def post(self, url, json=None, timeout=None):
        path = url.removeprefix("http://testserver")
        return self._client.post(path, json=json)


@pytest.fixture
def server(monkeypatch):
    monkeypatch.setattr(cli_module, "httpx", _HttpxShim(TestClient(app)))
    return "http://testserver"


def test_server_mode_matches_in_process(server, capsys):
    assert main(["bound", "3", "1", "--level", "5^1", "--format", "json"]) == 0
    local = capsys.readouterr().out
    args = ["--server", server, "bound", "3", "1", "--level", "5^1"]
    assert main(args + ["--format", "json"]) == 0
    assert capsys.readouterr().out == local


def test_server_mode_usage_error(server, capsys):
    assert main(["--server", server, "bound", "3", "5"]) == 3
    assert "error:" in capsys.readouterr().err


def test_server_mode_verify(server, capsys):
    args = ["--server", server, "verify", "cohomology", "--rank-max", "4"]
    assert main(args) == 0
    assert "pass" in capsys.readouterr().out
