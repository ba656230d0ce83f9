import numpy as np
import pytest

from scripts.lib import verification
from scripts.lib.errors import SimulationError
from scripts.lib.quantum_core import NetworkState, basis_state
from scripts.lib.verification import (CheckResult, check_state_validity, check_thue_morse_checkpoints,
                                      count_results, run_verification_suite)


def test_state_validity_passes_for_every_oracle_schedule():
    results = check_state_validity(200)
    assert [r.name for r in results] == ["state_validity[regular]", "state_validity[qf]", "state_validity[tm]"]
    assert all(r.passed for r in results)
    assert results[0].detail.startswith("201 states")


def test_state_validity_reports_a_drifted_state(monkeypatch):
    drifted = NetworkState(np.array([1.1, 0, 0, 0]), step=3)
    monkeypatch.setattr(verification, "evolve", lambda *args, **kwargs: [basis_state(-1, -1), drifted])
    results = check_state_validity(10)
    assert not any(r.passed for r in results)
    assert "step 3" in results[0].detail


def test_thue_morse_checkpoints_include_the_regular_drive():
    (result,) = check_thue_morse_checkpoints(200)
    assert result.passed
    assert "m <= 25" in result.detail
    assert "regular drive" in result.detail


def test_a_raising_group_is_reported_and_the_rest_still_run(monkeypatch):
    def broken(steps):
        raise SimulationError("unitarity blew up")

    monkeypatch.setattr(verification, "check_unitarity", broken)
    monkeypatch.setattr(verification, "check_sensitivity_classes", lambda steps: [])
    monkeypatch.setattr(verification, "check_patterns", lambda steps: [])
    results = run_verification_suite(40)
    errors = [r for r in results if r.name == "error"]
    assert errors == [CheckResult("error", False, "unitarity blew up")]
    assert any(r.name == "state_validity[tm]" for r in results)
    assert results[-1].name == "sequence_golden_mean"


@pytest.mark.parametrize("flags, expected", [
    ([True, True, False], {"passed": 2, "failed": 1, "total": 3}),
    ([], {"passed": 0, "failed": 0, "total": 0}),
])
def test_count_results(flags, expected):
    assert count_results([CheckResult(str(i), f, "") for i, f in enumerate(flags)]) == expected
