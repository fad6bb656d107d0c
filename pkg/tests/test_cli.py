import json
import os

import pytest

from utilities.constants import *
from utilities.errors import ConfigError
from utilities.arguments import parse_generate_args, parse_train_args
from utilities.configs import resolve_config
from utilities.logging import PIPELINE_HEADER, PIPELINE_TIMING_COLUMNS, read_pipeline_log

import generate
import solve
import train
import predict
import evaluate
import report


def _read(path):
    with open(path, "rb") as f:
        return f.read()


def _generate_args(workdir, seed=1):
    return ["--kind", "mclsp", "--n", "3", "--n-items", "1", "--horizon", "3", "--seed", str(seed), "--workdir", workdir]


def test_generate_is_deterministic(tmp_path):
    a = str(tmp_path / "a")
    b = str(tmp_path / "b")
    assert generate.main(_generate_args(a)) == EXIT_OK
    assert generate.main(_generate_args(b)) == EXIT_OK

    name = os.path.join(DIR_INSTANCES, SET_NAME_DEF + ".jsonl")
    assert _read(os.path.join(a, name)) == _read(os.path.join(b, name))

    with open(os.path.join(a, MANIFEST_NAME)) as f:
        manifest = json.load(f)
    assert manifest[DIR_INSTANCES + "/" + SET_NAME_DEF + ".jsonl"] == "generate"
    assert os.path.isfile(os.path.join(a, DIR_CONFIGS, "generate.json"))


def test_flags_override_file_and_environment(tmp_path, monkeypatch):
    config_f = tmp_path / "run.json"
    config_f.write_text(json.dumps({"seed": 5, "n": 4}))

    monkeypatch.setenv(ENV_SEED, "9")
    assert resolve_config("generate", parse_generate_args([])).seed == 9
    assert resolve_config("generate", parse_generate_args(["-config", str(config_f)])).seed == 5

    config = resolve_config("generate", parse_generate_args(["-config", str(config_f), "--seed", "2"]))
    assert config.seed == 2
    assert config.n == 4


def test_unknown_config_keys_are_rejected(tmp_path):
    config_f = tmp_path / "run.json"
    config_f.write_text(json.dumps({"epochs": 3, "learning_speed": 1}))

    with pytest.raises(ConfigError):
        resolve_config("train", parse_train_args(["-config", str(config_f)]))

    code = train.main(["-config", str(config_f), "--workdir", str(tmp_path)])
    assert code == EXIT_VALIDATION


def test_bad_environment_seed(monkeypatch, tmp_path):
    monkeypatch.setenv(ENV_SEED, "seven")
    assert generate.main(["--workdir", str(tmp_path)]) == EXIT_VALIDATION


def test_evaluate_without_checkpoint(tmp_path, capsys):
    workdir = str(tmp_path)
    assert generate.main(_generate_args(workdir)) == EXIT_OK

    assert evaluate.main(["--workdir", workdir]) == EXIT_VALIDATION
    assert "model checkpoint not found" in capsys.readouterr().out


def test_missing_instances_name_the_path(tmp_path, capsys):
    assert solve.main(["--workdir", str(tmp_path), "--set", "nothing"]) == EXIT_VALIDATION
    assert "nothing.jsonl" in capsys.readouterr().out


def test_report_medians(tmp_path):
    workdir = str(tmp_path)
    metrics_f = os.path.join(workdir, DIR_METRICS, SET_NAME_DEF + "_metrics.csv")
    os.makedirs(os.path.dirname(metrics_f))

    gaps = (0.04, 0.01, 0.025)
    with open(metrics_f, "w") as f:
        f.write(",".join(PIPELINE_HEADER) + "\n")
        for i, gap in enumerate(gaps):
            row = {k: "" for k in PIPELINE_HEADER}
            row.update({"id": str(i), "gap": repr(gap), "accuracy": "0.9", "status": STATUS_OPTIMAL})
            f.write(",".join(row[k] for k in PIPELINE_HEADER) + "\n")

    assert report.main(["--workdir", workdir]) == EXIT_OK

    with open(os.path.join(workdir, DIR_METRICS, SET_NAME_DEF + "_summary.json")) as f:
        summary = json.load(f)
    assert summary["count"] == 3
    assert summary["median"]["gap"] == pytest.approx(0.025)
    assert summary["mean"]["gap"] == pytest.approx(0.025)
    assert summary["median"]["time_factor"] is None
    assert summary["status"] == {STATUS_OPTIMAL: 3}


def _experiment(workdir):
    assert generate.main(_generate_args(workdir, seed=3)) == EXIT_OK
    assert solve.main(["--workdir", workdir, "--time-limit", "60"]) == EXIT_OK
    assert train.main(["--workdir", workdir, "--epochs", "2", "--hidden", "3", "--seed", "3"]) == EXIT_OK
    assert predict.main(["--workdir", workdir]) == EXIT_OK
    assert evaluate.main(["--workdir", workdir, "--time-limit", "60", "--p-fix", "0.8"]) == EXIT_OK
    assert report.main(["--workdir", workdir]) == EXIT_OK


def _metrics_without_timing(workdir):
    rows = read_pipeline_log(os.path.join(workdir, DIR_METRICS, SET_NAME_DEF + "_metrics.csv"))
    return [{k: v for k, v in r.items() if k not in PIPELINE_TIMING_COLUMNS} for r in rows]


def test_full_experiment_replays(tmp_path):
    a = str(tmp_path / "a")
    b = str(tmp_path / "b")
    _experiment(a)
    _experiment(b)

    for rel in (
        os.path.join(DIR_INSTANCES, SET_NAME_DEF + ".jsonl"),
        os.path.join(DIR_SOLUTIONS, SET_NAME_DEF + ".jsonl"),
        os.path.join(DIR_CHECKPOINTS, CHECKPOINT_NAME),
        os.path.join(DIR_PREDICTIONS, SET_NAME_DEF + ".jsonl"),
    ):
        assert _read(os.path.join(a, rel)) == _read(os.path.join(b, rel)), rel

    assert _metrics_without_timing(a) == _metrics_without_timing(b)

    with open(os.path.join(a, MANIFEST_NAME)) as f:
        manifest = json.load(f)
    assert manifest["checkpoints/model.jsonl"] == "train"
    assert manifest["metrics/train_summary.json"] == "report"
    assert list(manifest) == sorted(manifest)


@pytest.mark.slow
def test_desk_scale_quality(tmp_path):
    # 200 solved lot-sizing instances with 3 items over 10 stages, 50 held out
    workdir = str(tmp_path)
    jobs = str(os.cpu_count() or 1)
    shape = ["--kind", "mclsp", "--n-items", "3", "--horizon", "10", "--workdir", workdir]

    assert generate.main(shape + ["--n", "200", "--seed", "11", "--set", "train"]) == EXIT_OK
    assert generate.main(shape + ["--n", "50", "--seed", "12", "--set", "test"]) == EXIT_OK
    for name in ("train", "test"):
        assert solve.main(["--workdir", workdir, "--set", name, "--jobs", jobs]) == EXIT_OK

    assert train.main(["--workdir", workdir, "--set", "train", "--seed", "11"]) == EXIT_OK
    assert evaluate.main(["--workdir", workdir, "--set", "test", "--jobs", jobs]) == EXIT_OK

    with open(os.path.join(workdir, DIR_METRICS, "test_summary.json")) as f:
        summary = json.load(f)
    assert summary["count"] == 50
    assert summary["median"]["gap"] <= 0.05
    assert summary["median"]["accuracy"] >= 0.85
