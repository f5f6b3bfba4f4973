"""Tests for two-photon phase estimation in the fixed total-index sector."""

import math

import numpy as np
import pytest

from tfsim import metrology as mt


def random_sector_state(rng, n_total):
    chi = rng.standard_normal(n_total + 1) + 1j * rng.standard_normal(n_total + 1)
    chi /= np.linalg.norm(chi)
    return mt.from_sector_vector(chi, n_total)


def commutator(a, b):
    return a @ b - b @ a


def test_j_operators_su2_algebra():
    for n_total in (1, 2, 4, 7, 10):
        ops = mt.j_operators(n_total)
        assert np.max(np.abs(commutator(ops.jx, ops.jy) - 1j * ops.jz)) < 1e-10
        assert np.max(np.abs(commutator(ops.jy, ops.jz) - 1j * ops.jx)) < 1e-10
        assert np.max(np.abs(commutator(ops.jz, ops.jx) - 1j * ops.jy)) < 1e-10
        # Casimir: J^2 = j(j+1) with j = N/2.
        j = n_total / 2.0
        casimir = ops.jx @ ops.jx + ops.jy @ ops.jy + ops.jz @ ops.jz
        assert np.max(np.abs(casimir - j * (j + 1) * np.eye(n_total + 1))) < 1e-10
        for op in (ops.jx, ops.jy, ops.jz):
            assert np.max(np.abs(op - op.conj().T)) < 1e-14


def test_twin_state_structure():
    state = mt.twin_state(4)
    chi = mt.sector_vector(state)
    assert chi[2] == 1.0
    assert np.count_nonzero(chi) == 1
    stats = mt.jz_statistics(state)
    assert stats.mean == 0.0
    assert stats.variance == 0.0
    with pytest.raises(ValueError):
        mt.twin_state(3)
    with pytest.raises(ValueError):
        mt.twin_state(0)


def test_two_mode_state_validation():
    good = np.zeros((3, 3), dtype=complex)
    good[1, 1] = 1.0
    mt.TwoModeState(coeffs=good, n_total=2)

    leaky = good.copy()
    leaky[0, 0] = 1e-6
    with pytest.raises(ValueError):
        mt.TwoModeState(coeffs=leaky, n_total=2)

    with pytest.raises(ValueError):
        mt.TwoModeState(coeffs=0.5 * good, n_total=2)  # norm != 1
    with pytest.raises(ValueError):
        mt.TwoModeState(coeffs=good, n_total=4)  # matrix too small


def test_sector_vector_round_trip():
    rng = np.random.default_rng(3)
    state = random_sector_state(rng, 5)
    rebuilt = mt.from_sector_vector(mt.sector_vector(state), 5)
    assert np.max(np.abs(rebuilt.coeffs - state.coeffs)) == 0.0
    with pytest.raises(ValueError):
        mt.from_sector_vector(np.ones(3) / math.sqrt(3.0), 4)


def test_interferometer_unitary_is_unitary():
    rng = np.random.default_rng(11)
    for _ in range(20):
        n_total = int(rng.integers(1, 9))
        phi = float(rng.uniform(0.0, 2 * np.pi))
        u = mt.interferometer_unitary(n_total, phi)
        eye = np.eye(n_total + 1)
        assert np.max(np.abs(u.conj().T @ u - eye)) < 1e-12


def test_interferometer_preserves_norm():
    rng = np.random.default_rng(29)
    for _ in range(20):
        n_total = int(rng.integers(2, 8))
        state = random_sector_state(rng, n_total)
        out = mt.interferometer(state, float(rng.uniform(0.1, 3.0)))
        assert np.sum(np.abs(out.coeffs) ** 2) == pytest.approx(1.0, abs=1e-12)


def test_jz_conjugation_is_an_axis_rotation():
    # Through the full sequence, U(phi)^dag Jz U(phi) = -cos(phi) Jz + sin(phi) Jy.
    for n_total in (2, 4, 6):
        ops = mt.j_operators(n_total)
        for phi in (0.3, 1.1, 2.5):
            u = mt.interferometer_unitary(n_total, phi)
            rotated = u.conj().T @ ops.jz @ u
            expected = -math.cos(phi) * ops.jz + math.sin(phi) * ops.jy
            assert np.max(np.abs(rotated - expected)) < 1e-10


def test_twin_coincidence_probability_is_cos_squared():
    # N = 2 twin input: P(1,1) after the interferometer equals cos^2(phi).
    for phi in (0.2, 0.9, 1.5707963267948966, 2.8):
        out = mt.interferometer(mt.twin_state(2), phi)
        p11 = abs(out.coeffs[1, 1]) ** 2
        assert p11 == pytest.approx(math.cos(phi) ** 2, abs=1e-12)


def test_jz_statistics_distribution():
    out = mt.interferometer(mt.twin_state(2), math.pi / 2.0)
    stats = mt.jz_statistics(out)
    assert np.allclose(stats.values, [-1.0, 0.0, 1.0])
    assert stats.probabilities[1] == pytest.approx(0.0, abs=1e-12)
    assert stats.probabilities[0] == pytest.approx(0.5, abs=1e-12)
    assert stats.probabilities[2] == pytest.approx(0.5, abs=1e-12)
    assert stats.mean == pytest.approx(0.0, abs=1e-12)
    assert stats.variance == pytest.approx(1.0, abs=1e-12)


def test_jz_estimator_is_degenerate_for_twin_input():
    est = mt.phase_precision(4, 0.7, "jz")
    assert est.degenerate
    assert math.isinf(est)
    assert est.derivative == pytest.approx(0.0, abs=1e-12)
    assert est.estimator == "jz"


def test_jz_estimator_works_off_twin_input():
    # A lopsided probe has first moments, so the rotated-moment signal moves.
    chi = np.zeros(3, dtype=complex)
    chi[2] = 1.0  # both index quanta in arm a
    state = mt.from_sector_vector(chi, 2)
    est = mt.phase_precision(2, 1.0, "jz", state=state)
    assert not est.degenerate
    assert np.isfinite(est)
    assert est > 0.0


def test_jz_squared_derivative_matches_finite_difference():
    # The analytic derivative of <Jz^2>(phi) against a central difference.
    state = mt.twin_state(4)
    m2 = (np.arange(5) - 2.0) ** 2

    def mean_m2(phi):
        out = mt.interferometer(state, phi)
        return float(m2 @ np.abs(mt.sector_vector(out)) ** 2)

    for phi in (0.4, 1.0, 2.2):
        est = mt.phase_precision(4, phi, "jz_squared")
        h = 1e-6
        numeric = (mean_m2(phi + h) - mean_m2(phi - h)) / (2 * h)
        assert est.derivative == pytest.approx(numeric, abs=1e-7)


def test_fisher_matches_finite_difference_probabilities():
    state = mt.twin_state(6)

    def probs(phi):
        out = mt.interferometer(state, phi)
        return np.abs(mt.sector_vector(out)) ** 2

    phi = 0.8
    h = 1e-6
    p = probs(phi)
    dp = (probs(phi + h) - probs(phi - h)) / (2 * h)
    keep = p > 1e-12
    fisher_fd = float(np.sum(dp[keep] ** 2 / p[keep]))
    est = mt.phase_precision(6, phi, "fisher")
    assert est == pytest.approx(fisher_fd**-0.5, rel=1e-6)


def test_fisher_constant_for_two_photons():
    # N = 2 twin input: the index-difference distribution carries Fisher
    # information 4 at every phase, saturating the quantum bound.
    for phi in (0.3, 1.0, 2.0, 2.9):
        est = mt.phase_precision(2, phi, "fisher")
        assert float(est) == pytest.approx(0.5, rel=1e-10)


def test_fisher_bounded_by_quantum_fisher_information():
    rng = np.random.default_rng(41)
    for _ in range(20):
        n_total = int(rng.integers(2, 9))
        state = random_sector_state(rng, n_total)
        phi = float(rng.uniform(0.05, np.pi - 0.05))
        est = mt.phase_precision(n_total, phi, "fisher", state=state)
        qfi = mt.quantum_fisher_information(n_total, state=state)
        if np.isfinite(est):
            cfi = est**-2
            assert cfi <= qfi * (1.0 + 1e-9)


def test_quantum_fisher_information_twin_value():
    for n_total in (2, 4, 6, 8, 10, 12):
        qfi = mt.quantum_fisher_information(n_total)
        assert qfi == pytest.approx(n_total * (n_total + 2) / 2.0, rel=1e-12)


def test_best_fisher_precision_saturates_quantum_bound():
    for n_total in (2, 4, 6, 8):
        phi, est = mt.best_precision(n_total, "fisher")
        bound = mt.quantum_fisher_information(n_total) ** -0.5
        assert 0.0 < phi < np.pi
        assert float(est) == pytest.approx(bound, rel=1e-9)


def test_fisher_periodicity_in_pi():
    # The twin-input Fisher information has period pi (internal function, so
    # points outside the public (0, pi) domain can be probed directly).
    state = mt.twin_state(4)
    for phi in (0.4, 1.2, 2.0):
        f1 = mt._fisher_information(state, phi)
        f2 = mt._fisher_information(state, phi + np.pi)
        assert f1 == pytest.approx(f2, rel=1e-10)
        assert f1 >= 0.0


def test_phase_precision_domain_and_argument_checks():
    with pytest.raises(ValueError):
        mt.phase_precision(2, 0.0, "fisher")
    with pytest.raises(ValueError):
        mt.phase_precision(2, np.pi, "fisher")
    with pytest.raises(ValueError):
        mt.phase_precision(2, 0.5, "variance")
    with pytest.raises(ValueError):
        mt.phase_precision(4, 0.5, "fisher", state=mt.twin_state(2))


def test_precision_sweep_and_csv(tmp_path):
    rows = mt.precision_sweep((2, 4), "fisher")
    assert [r[0] for r in rows] == [2, 4]
    text = mt.sweep_csv_text(rows)
    lines = text.splitlines()
    assert lines[0] == "n_photons,phi,estimator,delta_phi"
    n, phi, name, dphi = lines[1].split(",")
    assert int(n) == 2
    assert name == "fisher"
    assert float(dphi) == pytest.approx(0.5, rel=1e-9)

    path = tmp_path / "sweep.csv"
    mt.sweep_to_csv(rows, path)
    assert path.read_text() == text


def test_sweep_csv_renders_degenerate_rows_as_inf():
    rows = mt.precision_sweep((2,), "jz", phi=0.8)
    text = mt.sweep_csv_text(rows)
    assert text.splitlines()[1].endswith(",jz,inf")


def test_heisenberg_slope_value():
    # The optimized twin-input scaling over N = 2..20: delta-phi equals
    # sqrt(2/(N(N+2))), whose fitted log-log slope over this window is -0.877
    # (it approaches -1 only asymptotically).
    slope = mt.heisenberg_slope()
    assert slope == pytest.approx(-0.8769540697754512, abs=1e-9)
    exact = np.polyfit(
        np.log(np.arange(2, 21, 2)),
        0.5 * np.log(2.0 / (np.arange(2, 21, 2) * (np.arange(2, 21, 2) + 2.0))),
        1,
    )[0]
    assert slope == pytest.approx(exact, abs=1e-12)


def test_heisenberg_slope_rejects_all_degenerate():
    with pytest.raises(ValueError):
        mt.heisenberg_slope(n_values=(2, 4), estimator="jz")
