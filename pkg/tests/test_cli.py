"""CLI smoke: the full stage sequence on the replay fixture, and exits."""

import json

import pytest

from lemmabench.cli import main


@pytest.fixture(scope="module")
def cli_out(fixtures_dir, tmp_path_factory):
    out = tmp_path_factory.mktemp("cli-out")
    config = str(fixtures_dir / "replay" / "config.json")
    return config, out


def _run(config, out, command, *extra, capsys=None):
    return main([command, "--config", config, "--out", str(out), *extra])


def test_full_stage_sequence(cli_out, capsys):
    config, out = cli_out
    for command in ("ingest", "split", "induce", "train-baseline"):
        assert _run(config, out, command) == 0
    assert _run(config, out, "run", "--cache-mode", "replay") == 0
    assert _run(config, out, "score") == 0
    assert _run(config, out, "compare") == 0
    assert _run(config, out, "report") == 0

    captured = capsys.readouterr()
    assert "es_fix: 80 sentences, 640 tokens" in captured.out
    assert "baseline on es_fix-test: word accuracy 0.9200" in captured.out
    assert "Lemmatization report" in captured.out
    assert captured.err == ""
    assert (out / "reports" / "report.txt").exists()


def test_report_stdout_matches_frozen_report(cli_out, fixtures_dir, capsys):
    config, out = cli_out
    assert _run(config, out, "report") == 0
    expected = (fixtures_dir / "replay" / "expected" / "report.txt").read_text("utf-8")
    assert capsys.readouterr().out == expected


def test_missing_config_exits_2(tmp_path, capsys):
    assert main(["ingest", "--config", str(tmp_path / "absent.json")]) == 2
    assert capsys.readouterr().err.startswith("error:")


def test_invalid_config_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"split": {"train": 1, "dev": 1, "test": 1}}), "utf-8")
    assert main(["ingest", "--config", str(bad)]) == 2
    assert "config missing section" in capsys.readouterr().err


def test_replay_cache_miss_exits_2(fixtures_dir, tmp_path, capsys):
    # a config whose fingerprints are absent from the cache must fail loudly
    raw = json.loads((fixtures_dir / "replay" / "config.json").read_text("utf-8"))
    raw["corpus"]["path"] = str(fixtures_dir / "corpora" / "es_fix.conllu")
    raw["cache_dir"] = str(fixtures_dir / "replay" / "cache")
    raw["provider"]["model"] = "some-other-model"  # changes every fingerprint
    config = tmp_path / "config.json"
    config.write_text(json.dumps(raw), "utf-8")
    out = tmp_path / "out"
    for command in ("ingest", "split", "induce", "train-baseline"):
        assert main([command, "--config", str(config), "--out", str(out)]) == 0
    capsys.readouterr()
    assert main(["run", "--config", str(config), "--out", str(out)]) == 2
    assert "error:" in capsys.readouterr().err


def test_stage_out_of_order_exits_2(cli_out, tmp_path, capsys):
    config, _ = cli_out
    # score before any predictions exist: friendly error, not a traceback
    assert main(["score", "--config", config, "--out", str(tmp_path / "empty")]) == 2
    assert "error:" in capsys.readouterr().err


def test_unknown_command_is_argparse_error(cli_out):
    config, out = cli_out
    with pytest.raises(SystemExit):
        main(["frobnicate", "--config", config])


def test_run_rejects_bad_cache_mode(cli_out):
    config, out = cli_out
    with pytest.raises(SystemExit):
        main(["run", "--config", config, "--cache-mode", "offline"])
