import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from scripts.lib.errors import CapacityError, ConfigError, InvariantError
from scripts.lib.quantum_core import (IDENTITY_2, PAULIS, SIGMA_3, SPIN_STATES, DensityMatrix2, NetworkState,
                                      basis_state, bloch, bloch_path, bloch_record, evolve, expectation,
                                      head_ket, head_rotation, initial_state, overlap_sq, product_state,
                                      purity, purity_path, qcnot, reduce, step)
from scripts.lib.substitution import FIBONACCI, AngleSchedule, schedule_from_name

PI = math.pi

angles = st.floats(-4 * PI, 4 * PI, allow_nan=False)


def random_state(seed):
    rng = np.random.default_rng(seed)
    v = rng.normal(size=4) + 1j * rng.normal(size=4)
    return NetworkState(v / np.linalg.norm(v))


def head_s2_s3(state):
    b = bloch(reduce(state, "S"))
    return b.sigma2, b.sigma3


def test_network_state_is_read_only():
    s = basis_state(-1, -1)
    with pytest.raises(ValueError):
        s.amplitudes[0] = 0.0


def test_check_normalized():
    basis_state(1, 1).check_normalized()
    with pytest.raises(InvariantError):
        NetworkState([1.0, 1.0, 0.0, 0.0]).check_normalized()


def test_head_rotation_identity():
    psi = basis_state(-1, -1)
    np.testing.assert_array_equal(head_rotation(psi, 0.0).amplitudes, psi.amplitudes)


@given(angles)
@settings(deadline=None)
def test_head_rotation_bloch(alpha):
    s2, s3 = head_s2_s3(head_rotation(basis_state(-1, -1), alpha))
    assert s2 == pytest.approx(math.sin(alpha), abs=1e-12)
    assert s3 == pytest.approx(-math.cos(alpha), abs=1e-12)


@pytest.mark.parametrize("seed", range(5))
def test_full_turn_is_global_phase(seed):
    psi = random_state(seed)
    turned = head_rotation(psi, 2 * PI)
    np.testing.assert_allclose(turned.amplitudes, -psi.amplitudes, atol=1e-12)
    for sub in ("S", "1"):
        np.testing.assert_allclose(bloch(reduce(turned, sub)), bloch(reduce(psi, sub)), atol=1e-12)


def test_head_rotation_rejects_non_finite():
    with pytest.raises(ConfigError):
        head_rotation(basis_state(-1, -1), float("inf"))


def test_qcnot_basis_action():
    np.testing.assert_array_equal(qcnot(basis_state(-1, -1)).amplitudes, basis_state(-1, 1).amplitudes)
    np.testing.assert_array_equal(qcnot(basis_state(1, -1)).amplitudes, basis_state(1, -1).amplitudes)


@given(angles)
@settings(deadline=None)
def test_qcnot_on_tape_eigenstates(phi):
    head = head_ket(phi) * np.exp(0.3j)
    plus = product_state(head, SPIN_STATES["plus"])
    np.testing.assert_allclose(qcnot(plus).amplitudes, plus.amplitudes, atol=1e-15)
    minus = product_state(head, SPIN_STATES["minus"])
    expected = product_state(SIGMA_3 @ head, SPIN_STATES["minus"])
    np.testing.assert_allclose(qcnot(minus).amplitudes, expected.amplitudes, atol=1e-15)


@pytest.mark.parametrize("seed", range(5))
def test_qcnot_is_self_inverse(seed):
    psi = random_state(seed)
    np.testing.assert_array_equal(qcnot(qcnot(psi)).amplitudes, psi.amplitudes)


def test_two_steps_of_a_half_turn():
    s = AngleSchedule.regular(PI)
    psi = step(step(basis_state(-1, -1), s), s)
    assert psi.step == 2
    np.testing.assert_allclose(psi.amplitudes, -1j * basis_state(1, -1).amplitudes, atol=1e-15)
    np.testing.assert_allclose(bloch(reduce(psi, "S")), (0.0, 0.0, 1.0), atol=1e-15)


def test_step_with_zero_angle_is_identity():
    psi = random_state(7)
    out = step(psi, AngleSchedule.regular(0.0))
    assert out.step == 1
    np.testing.assert_array_equal(out.amplitudes, psi.amplitudes)


def test_step_propagates_capacity_error():
    s = AngleSchedule.substitution(FIBONACCI, 0.1, 0.2, 1)
    psi = step(step(basis_state(-1, -1), s), s)
    with pytest.raises(CapacityError):
        step(psi, s)


def test_evolve_zero_steps():
    psi = basis_state(-1, -1)
    states = evolve(psi, AngleSchedule.regular(0.3), 0)
    assert len(states) == 1
    assert states[0] is psi


def test_evolve_record_cadence():
    states = evolve(basis_state(-1, -1), AngleSchedule.regular(0.3), 10, record_every=3)
    assert [s.step for s in states] == [0, 3, 6, 9, 10]


def test_evolve_matches_repeated_step():
    s = schedule_from_name("tm", 0.4 * PI, 0.5 * PI, 40)
    psi = basis_state(-1, -1)
    manual = [psi]
    for _ in range(40):
        manual.append(step(manual[-1], s))
    batch = evolve(psi, s, 40)
    for a, b in zip(manual, batch):
        assert a.step == b.step
        np.testing.assert_allclose(a.amplitudes, b.amplitudes, atol=1e-15)


def test_evolve_continues_from_a_later_step():
    s = schedule_from_name("qf", 0.4 * PI, 0.43 * PI, 30)
    full = evolve(basis_state(-1, -1), s, 30)
    resumed = evolve(full[13], s, 17)
    np.testing.assert_allclose(resumed[-1].amplitudes, full[-1].amplitudes, atol=1e-14)


def test_evolve_rejects_bad_arguments():
    with pytest.raises(ConfigError):
        evolve(basis_state(-1, -1), AngleSchedule.regular(0.3), -1)
    with pytest.raises(ConfigError):
        evolve(basis_state(-1, -1), AngleSchedule.regular(0.3), 5, record_every=0)


@pytest.mark.parametrize("name", ["regular", "qf", "tm", "pd", "cf"])
def test_unitarity_over_ten_thousand_steps(name):
    s = schedule_from_name(name, 2 * PI / 5, 2 * PI / 5 + 0.03 * PI, 10000)
    final = evolve(basis_state(-1, -1), s, 10000, record_every=10000)[-1]
    assert abs(final.norm_sq - 1.0) < 1e-12


@pytest.mark.parametrize("tape", ["plus", "minus"])
@pytest.mark.parametrize("name", ["regular", "qf", "tm", "cf"])
def test_tape_eigenstates_keep_the_head_pure(tape, name):
    s = schedule_from_name(name, 0.4 * PI, 0.43 * PI, 2000)
    states = evolve(initial_state(0.7, tape), s, 2000)
    assert np.max(np.abs(purity_path(states, "S") - 1.0)) < 1e-12


@pytest.mark.parametrize("name", ["regular", "qf", "tm", "cf"])
def test_head_stays_on_the_bloch_circle(name):
    s = schedule_from_name(name, 0.4 * PI, 0.43 * PI, 1000)
    states = evolve(basis_state(-1, -1), s, 1000)
    assert np.max(np.abs(bloch_path(states, "S")[:, 0])) < 1e-12


def test_reduce_product_state():
    head = head_ket(0.9)
    rho = reduce(product_state(head, SPIN_STATES["plus"]), "S")
    np.testing.assert_allclose(rho.entries, np.outer(head, head.conj()), atol=1e-15)
    assert purity(rho) == pytest.approx(1.0)


def test_reduce_maximally_entangled():
    psi = NetworkState((basis_state(-1, 1).amplitudes + basis_state(1, -1).amplitudes) / math.sqrt(2))
    rho = reduce(psi, "S")
    np.testing.assert_allclose(rho.entries, IDENTITY_2 / 2, atol=1e-15)
    assert purity(rho) == pytest.approx(0.5)


def test_quarter_rotation_then_qcnot_is_entangled():
    psi = qcnot(head_rotation(basis_state(-1, -1), PI / 2))
    assert purity(reduce(psi, "S")) == pytest.approx(0.5)


def test_reduce_unknown_subsystem():
    with pytest.raises(ConfigError):
        reduce(basis_state(-1, -1), "2")


@pytest.mark.parametrize("seed", range(10))
def test_reduced_states_are_valid(seed):
    for sub in ("S", "1"):
        reduce(random_state(seed), sub).check_valid()


def test_check_valid_rejects_non_hermitian():
    with pytest.raises(InvariantError):
        DensityMatrix2(np.array([[1.0, 0.5], [0.0, 0.0]], dtype=complex), "S").check_valid()


@pytest.mark.parametrize("rho, expected", [
    (np.array([[1, 0], [0, 0]], dtype=complex), (0.0, 0.0, -1.0)),
    (IDENTITY_2 / 2, (0.0, 0.0, 0.0)),
    (np.full((2, 2), 0.5, dtype=complex), (1.0, 0.0, 0.0)),
])
def test_bloch_examples(rho, expected):
    np.testing.assert_allclose(bloch(DensityMatrix2(rho, "S")), expected, atol=1e-15)


def test_purity_from_bloch_length():
    rho = DensityMatrix2((IDENTITY_2 + 0.6 * PAULIS[2]) / 2, "S")
    assert purity(rho) == pytest.approx(0.68)


@pytest.mark.parametrize("seed", range(10))
def test_bloch_consistency(seed):
    psi = random_state(seed)
    head = bloch(reduce(psi, "S"))
    tape = bloch(reduce(psi, "1"))
    for j, p in enumerate(PAULIS):
        assert head[j] == pytest.approx(expectation(psi, np.kron(p, IDENTITY_2)), abs=1e-12)
        assert tape[j] == pytest.approx(expectation(psi, np.kron(IDENTITY_2, p)), abs=1e-12)
    rho = reduce(psi, "S")
    assert purity(rho) == pytest.approx((1 + head.length ** 2) / 2, abs=1e-12)
    assert head.length <= 1 + 1e-10


@given(st.integers(0, 10 ** 6), angles)
@settings(deadline=None, max_examples=50)
def test_head_rotation_leaves_tape_unchanged(seed, alpha):
    psi = random_state(seed)
    np.testing.assert_allclose(reduce(head_rotation(psi, alpha), "1").entries, reduce(psi, "1").entries,
                               atol=1e-12)


def test_bloch_path_matches_single_state_bloch():
    states = evolve(random_state(3), schedule_from_name("qf", 0.4, 0.5, 20), 20)
    path = bloch_path(states, "1")
    for s, row in zip(states, path):
        np.testing.assert_allclose(row, bloch(reduce(s, "1")), atol=1e-14)


def test_overlap_examples():
    psi = random_state(11)
    assert overlap_sq(psi, psi) == pytest.approx(1.0)
    assert overlap_sq(basis_state(-1, -1), basis_state(1, -1)) == 0.0
    assert overlap_sq(psi, NetworkState(np.exp(0.4j) * psi.amplitudes)) == pytest.approx(1.0)
    other = random_state(12)
    assert overlap_sq(psi, other) == pytest.approx(overlap_sq(other, psi))


def test_initial_state_options():
    np.testing.assert_array_equal(initial_state().amplitudes, basis_state(-1, -1).amplitudes)
    np.testing.assert_array_equal(initial_state(0.0, "p1").amplitudes, basis_state(-1, 1).amplitudes)
    with pytest.raises(ConfigError):
        initial_state(0.0, "up")
    with pytest.raises(ConfigError):
        basis_state(0, 1)


def test_bloch_record_columns():
    rec = bloch_record(basis_state(-1, -1))
    assert rec["n"] == 0
    assert rec["s3_head"] == -1.0 and rec["s3_tape"] == -1.0
    assert rec["purity_head"] == rec["purity_tape"] == 1.0
