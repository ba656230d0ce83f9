import importlib
import os

import pandas as pd

from config import DEFAULT_STEPS, NAMED_RUNS
from scripts.main_pipeline import PIPELINE, run_pipeline

STEPS = 200


def load(module_name):
    return importlib.import_module(module_name)


def test_generate_sequences(tmp_path):
    summaries = load("scripts.01_generate_sequences").generate_sequences(str(tmp_path), STEPS)
    assert set(summaries) == set(NAMED_RUNS)
    for run_id in NAMED_RUNS:
        assert len(pd.read_csv(tmp_path / "sequences" / f"{run_id}.csv")) == STEPS // 2
        assert os.path.exists(tmp_path / "sequences" / f"{run_id}.meta.json")
    assert os.path.exists(tmp_path / "sequences" / "tm_pattern_01001.txt")
    assert not os.path.exists(tmp_path / "sequences" / "cf_initial.txt")


def test_simulate_patterns(tmp_path):
    counts = load("scripts.02_simulate_patterns").simulate_patterns(str(tmp_path), STEPS)
    expected = {k for k, v in NAMED_RUNS.items() if v["command"] == "pattern"}
    assert set(counts) == expected
    assert counts["qf_pattern_collapse"] <= 30
    assert len(pd.read_csv(tmp_path / "patterns" / "qf_pattern_003.csv")) == STEPS + 1


def test_sensitivity_runs(tmp_path):
    classes = load("scripts.03_sensitivity_runs").sensitivity_runs(str(tmp_path), STEPS)
    assert classes["regular_initial"] == "flat"
    assert classes["cf_initial"] == "exponential"
    assert set(classes) <= {k for k, v in NAMED_RUNS.items() if v["command"] == "sensitivity"}


def test_pipeline_order():
    assert [name for name, _ in PIPELINE] == sorted(name for name, _ in PIPELINE)


def test_run_pipeline_at_default_steps_passes_verification(tmp_path):
    results = run_pipeline(str(tmp_path), DEFAULT_STEPS)
    assert set(results) == {name for name, _ in PIPELINE}
    assert results["scripts.04_verify_invariants"] == 0
    report = pd.read_csv(tmp_path / "verification.csv")
    assert list(report.columns) == ["name", "passed", "detail"]
    assert report["passed"].all()
