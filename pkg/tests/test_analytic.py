import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from scripts.lib.analytic import (ORACLE_COLUMNS, analytic_trajectory, branch_weights, closed_form_bloch,
                                  closed_form_path, cumulative_minus, cumulative_plus, minus_bound,
                                  minus_recursion, oracle_records, plus_accumulation, regular_equivalent,
                                  thue_morse_checkpoints, verify_minus_bound)
from scripts.lib.errors import CapacityError, ConfigError
from scripts.lib.quantum_core import basis_state, bloch_path, evolve, initial_state
from scripts.lib.substitution import FIBONACCI, AngleSchedule, schedule_from_name

PI = math.pi
A1 = 2 * PI / 5

ORACLE_SCHEDULES = {
    "regular": ("regular", A1, A1),
    "qf": ("qf", A1, A1 + 0.03 * PI),
    "tm": ("tm", A1, A1 + 0.1001 * PI),
}


def test_cumulative_plus_examples():
    a1, a2 = 0.4 * PI, 0.5 * PI
    assert cumulative_plus(schedule_from_name("qf", a1, a2, 10), 10) == pytest.approx(3 * a1 + 2 * a2)
    assert cumulative_plus(schedule_from_name("tm", a1, a2, 8), 0) == 0.0
    assert cumulative_plus(schedule_from_name("tm", a1, a2, 8), 8) == pytest.approx(2 * (a1 + a2))


def test_cumulative_minus_examples():
    a1, a2 = 0.4 * PI, 0.5 * PI
    qf = schedule_from_name("qf", a1, a2, 10)
    assert cumulative_minus(qf, 1) == pytest.approx(a1)
    assert cumulative_minus(qf, 2) == pytest.approx(-a1)
    assert cumulative_minus(qf, 6) == pytest.approx(-(2 * a1 - a2))
    assert cumulative_minus(schedule_from_name("tm", a1, a2, 8), 8) == 0.0


def test_cumulative_angles_need_enough_letters():
    with pytest.raises(CapacityError):
        cumulative_plus(AngleSchedule.substitution(FIBONACCI, 0.1, 0.2, 3), 8)


def test_plus_is_constant_across_step_pairs():
    traj = analytic_trajectory(schedule_from_name("qf", 0.3, 0.7, 200), 200)
    np.testing.assert_array_equal(traj.c_plus[1::2], traj.c_plus[2::2])


def test_trajectory_half_angles_are_exact():
    traj = analytic_trajectory(schedule_from_name("tm", 0.3, 0.7, 500), 500)
    np.testing.assert_array_equal(traj.a_n, (traj.c_plus + traj.c_minus) / 2)
    np.testing.assert_array_equal(traj.b_n, (traj.c_plus - traj.c_minus) / 2)
    assert traj.n_max == 500
    assert traj.bound_M == pytest.approx(1.4)


@pytest.mark.parametrize("name", ["qf", "tm", "pd"])
def test_integer_recursion_matches_floating_recursion(name):
    s = schedule_from_name(name, 0.4 * PI, 0.43 * PI, 4000)
    traj = analytic_trajectory(s, 4000)
    angles = s.angles(2000)
    np.testing.assert_allclose(traj.c_minus, minus_recursion(angles, 4000), atol=1e-10)
    np.testing.assert_allclose(traj.c_plus, plus_accumulation(angles, 4000), atol=1e-10)


def test_closed_form_examples():
    s2, s3 = closed_form_bloch(AngleSchedule.regular(PI), 2)
    assert s2 == pytest.approx(0.0, abs=1e-15)
    assert s3 == pytest.approx(1.0)
    assert closed_form_bloch(schedule_from_name("qf", 0.3, 0.5, 10), 0) == (0.0, -1.0)


def test_closed_form_single_branch():
    s = schedule_from_name("qf", 0.4 * PI, 0.43 * PI, 20)
    for n in (2, 8, 20):
        c = cumulative_plus(s, n)
        s2, s3 = closed_form_bloch(s, n, (1.0, 0.0))
        assert s2 == pytest.approx(math.sin(c))
        assert s3 == pytest.approx(-math.cos(c))


def test_closed_form_rejects_bad_weights():
    s = AngleSchedule.regular(0.3)
    with pytest.raises(ConfigError):
        closed_form_bloch(s, 4, (0.6, 0.6))
    with pytest.raises(ConfigError):
        closed_form_bloch(s, 4, (1.5, -0.5))


@pytest.mark.parametrize("label", sorted(ORACLE_SCHEDULES))
def test_simulation_matches_closed_form(label):
    s = schedule_from_name(*ORACLE_SCHEDULES[label], 10000)
    simulated = bloch_path(evolve(basis_state(-1, -1), s, 10000), "S")
    s2, s3 = closed_form_path(analytic_trajectory(s, 10000))
    assert np.max(np.abs(simulated[:, 1] - s2)) < 1e-10
    assert np.max(np.abs(simulated[:, 2] - s3)) < 1e-10


@pytest.mark.parametrize("tape, weights", [("m1", (0.5, 0.5)), ("p1", (0.5, 0.5)),
                                           ("plus", (1.0, 0.0)), ("minus", (0.0, 1.0))])
def test_branch_decomposition_oracle(tape, weights):
    psi0 = initial_state(0.0, tape)
    assert branch_weights(psi0) == pytest.approx(weights)
    s = schedule_from_name("qf", 0.4 * PI, 0.43 * PI, 3000)
    simulated = bloch_path(evolve(psi0, s, 3000), "S")
    s2, s3 = closed_form_path(analytic_trajectory(s, 3000, branch_weights(psi0)))
    assert np.max(np.abs(simulated[:, 1] - s2)) < 1e-10
    assert np.max(np.abs(simulated[:, 2] - s3)) < 1e-10


@pytest.mark.parametrize("name", ["qf", "tm"])
def test_bloch_length_is_cos_b(name):
    s = schedule_from_name(name, 0.4 * PI, 0.47 * PI, 2000)
    lengths = np.linalg.norm(bloch_path(evolve(basis_state(-1, -1), s, 2000), "S"), axis=1)
    traj = analytic_trajectory(s, 2000)
    np.testing.assert_allclose(lengths, np.abs(np.cos(traj.b_n)), atol=1e-10)


@pytest.mark.parametrize("name, a1, a2", [("qf", 0.4 * PI, 0.43 * PI), ("qf", A1, A1 + 0.03 * PI),
                                          ("tm", A1, A1 + 0.1001 * PI), ("tm", 0.3, -1.2)])
def test_minus_bound_holds_for_substitution_drive(name, a1, a2):
    holds, max_abs = verify_minus_bound(schedule_from_name(name, a1, a2, 10000), 10000)
    assert holds
    assert max_abs <= 2 * max(abs(a1), abs(a2))


@given(st.floats(-3.0, 3.0, allow_nan=False), st.integers(1, 400))
@settings(deadline=None, max_examples=40)
def test_regular_minus_branch_cycles(alpha, n_max):
    holds, max_abs = verify_minus_bound(AngleSchedule.regular(alpha), n_max)
    assert holds
    assert max_abs == pytest.approx(abs(alpha))


def test_minus_bound_fails_for_chaotic_drive():
    holds, max_abs = verify_minus_bound(AngleSchedule.chaotic_fibonacci(1.0, 1.0, "none"), 100)
    assert not holds
    assert max_abs > minus_bound(AngleSchedule.chaotic_fibonacci(1.0, 1.0, "none"))


def test_half_angle_bounds():
    s = schedule_from_name("qf", 0.4 * PI, 0.43 * PI, 5000)
    traj = analytic_trajectory(s, 5000)
    assert np.all(np.abs(traj.a_n - traj.c_plus / 2) <= traj.bound_M / 2)
    assert np.all(np.abs(traj.b_n - traj.c_plus / 2) <= traj.bound_M / 2)


@pytest.mark.parametrize("a1, a2, m_max, expected_last", [
    (0.3, 0.5, 1, (8, 1.6, 0.0)),
    (0.3, 0.5, 2, (16, 3.2, 0.0)),
    (0.7, 0.7, 5, (40, 14.0, 0.0)),
])
def test_thue_morse_checkpoint_values(a1, a2, m_max, expected_last):
    points = thue_morse_checkpoints(a1, a2, m_max)
    assert len(points) == m_max
    assert points[-1] == pytest.approx(expected_last)


def test_thue_morse_checkpoints_against_recursion():
    a1, a2 = A1, A1 + 0.1001 * PI
    s = schedule_from_name("tm", a1, a2, 8000)
    traj = analytic_trajectory(s, 8000)
    floating = minus_recursion(s.angles(4000), 8000)
    for n, c_plus, c_minus in thue_morse_checkpoints(a1, a2, 1000):
        assert abs(traj.c_minus[n] - c_minus) < 1e-12
        assert abs(floating[n]) < 1e-10
        assert abs(traj.c_plus[n] - c_plus) < 1e-9


def test_thue_morse_checkpoints_reject_zero():
    with pytest.raises(ConfigError):
        thue_morse_checkpoints(0.3, 0.5, 0)


def test_regular_equivalent_shares_checkpoints():
    a1, a2 = 0.3, 0.5
    regular = analytic_trajectory(regular_equivalent(a1, a2), 80)
    for n, c_plus, c_minus in thue_morse_checkpoints(a1, a2, 10):
        assert regular.c_plus[n] == pytest.approx(c_plus)
        assert regular.c_minus[n] == pytest.approx(c_minus, abs=1e-12)


def test_oracle_records():
    rows = oracle_records(analytic_trajectory(AngleSchedule.regular(PI), 4))
    assert len(rows) == 5
    assert list(rows[0]) == ORACLE_COLUMNS
    assert rows[2]["s3_closed"] == pytest.approx(1.0)
