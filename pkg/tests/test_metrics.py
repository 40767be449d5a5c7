import numpy as np
import pytest

from qilab import linalg, metrics, states
from qilab.errors import SizeError
from qilab.rng import Stream, derive_seed

SQRT2 = np.sqrt(2.0)

KET0 = states.pure_density([1, 0])
KET1 = states.pure_density([0, 1])
PLUS = states.pure_density(np.array([1, 1]) / SQRT2)


def random_pair(seed, dim):
    r1 = states.random_density(dim, 1 + Stream(derive_seed(seed, 0)).integer(dim), derive_seed(seed, 0))
    r2 = states.random_density(dim, 1 + Stream(derive_seed(seed, 1)).integer(dim), derive_seed(seed, 1))
    return r1, r2


def test_trace_norm_of_density_is_one():
    for seed in range(5):
        rho = states.random_density(4, 2 + seed % 3, seed)
        assert metrics.trace_norm(rho.mat) == pytest.approx(1.0, abs=1e-10)


def test_trace_distance_zero_and_orthogonal():
    assert metrics.trace_distance(KET0, KET0) == pytest.approx(0.0, abs=1e-12)
    assert metrics.trace_distance(KET0, KET1) == pytest.approx(2.0, abs=1e-12)


def test_trace_distance_zero_vs_plus():
    assert metrics.trace_distance(KET0, PLUS) == pytest.approx(SQRT2, abs=1e-12)


def test_trace_norm_multiplicative():
    a = Stream(40).complex_gauss_matrix(2, 2)
    b = Stream(41).complex_gauss_matrix(3, 3)
    assert metrics.trace_norm(np.kron(a, b)) == pytest.approx(
        metrics.trace_norm(a) * metrics.trace_norm(b), rel=1e-10
    )


def test_pure_trace_distance_matches_density_route():
    for seed in range(10):
        v1 = states.random_pure(3, 1, derive_seed(42, seed, 0)).vec
        v2 = states.random_pure(3, 1, derive_seed(42, seed, 1)).vec
        direct = metrics.pure_trace_distance(v1, v2)
        via_density = metrics.trace_distance(
            states.pure_density(v1), states.pure_density(v2)
        )
        assert direct == pytest.approx(via_density, abs=1e-9)


def test_pure_trace_distance_edge_cases():
    v = states.random_pure(4, 1, 43).vec
    assert metrics.pure_trace_distance(v, v) == pytest.approx(0.0, abs=1e-7)
    assert metrics.pure_trace_distance([1, 0], [0, 1]) == pytest.approx(2.0)
    with pytest.raises(SizeError):
        metrics.pure_trace_distance([1, 0], [1, 0, 0])


def test_fidelity_self_is_one():
    rho = states.random_density(4, 3, 44)
    assert metrics.fidelity(rho, rho) == pytest.approx(1.0, abs=1e-10)


def test_fidelity_pure_formula():
    for seed in range(6):
        v = states.random_pure(3, 1, derive_seed(45, seed)).vec
        rho = states.random_density(3, 2, derive_seed(46, seed))
        expected = float(np.real(np.conj(v) @ rho.mat @ v))
        assert metrics.fidelity(states.pure_density(v), rho) == pytest.approx(
            expected, abs=1e-8
        )


def _overlap_sq(phi1, phi2, u):
    a2 = phi2.coefficient_matrix() @ u.T
    return abs(np.vdot(phi1.vec, a2.reshape(-1))) ** 2


def _su2(alpha, beta, gamma):
    return np.array(
        [
            [np.exp(1j * beta) * np.cos(alpha), np.exp(1j * gamma) * np.sin(alpha)],
            [-np.exp(-1j * gamma) * np.sin(alpha), np.exp(-1j * beta) * np.cos(alpha)],
        ]
    )


def test_fidelity_against_purification_oracle():
    # oracle: maximize the purification overlap over K-side unitaries by
    # dense grid plus local refinement (qubit case only)
    for seed in (47, 48):
        r1, r2 = random_pair(seed, 2)
        phi1 = states.canonical_purification(r1, 2)
        phi2 = states.canonical_purification(r2, 2)
        grid = np.linspace(0, np.pi, 15)
        best, best_args = -1.0, None
        for a in grid:
            for b in np.linspace(-np.pi, np.pi, 15):
                for c in np.linspace(-np.pi, np.pi, 15):
                    val = _overlap_sq(phi1, phi2, _su2(a, b, c))
                    if val > best:
                        best, best_args = val, [a, b, c]
        step = 0.25
        for _ in range(40):
            for k in range(3):
                for cand in best_args[k] + np.linspace(-step, step, 9):
                    args = list(best_args)
                    args[k] = cand
                    val = _overlap_sq(phi1, phi2, _su2(*args))
                    if val > best:
                        best, best_args = val, args
            step *= 0.7
        assert metrics.fidelity(r1, r2) == pytest.approx(best, abs=1e-6)


def test_optimal_measurement_identical_states():
    rho = states.random_density(3, 2, 49)
    meas, achieved = metrics.optimal_measurement(rho, rho)
    meas.validate()
    assert achieved == pytest.approx(0.0, abs=1e-10)


def test_optimal_measurement_orthogonal_states():
    meas, achieved = metrics.optimal_measurement(KET0, KET1)
    assert achieved == pytest.approx(2.0, abs=1e-12)
    assert np.allclose(meas.projector_pos, np.diag([1.0, 0.0]), atol=1e-12)


def test_optimal_measurement_achieves_trace_distance():
    for seed in range(20):
        r1, r2 = random_pair(derive_seed(50, seed), 2 + seed % 5)
        meas, achieved = metrics.optimal_measurement(r1, r2)
        meas.validate()
        assert achieved == pytest.approx(
            metrics.trace_distance(r1, r2), abs=1e-9
        )


def test_random_measurements_never_beat_trace_distance():
    for seed in range(30):
        dim = 2 + seed % 4
        r1, r2 = random_pair(derive_seed(51, seed), dim)
        u = states.random_unitary(dim, derive_seed(52, seed))
        l1 = 0.0
        for k in range(dim):
            proj = np.outer(u[:, k], np.conj(u[:, k]))
            l1 += abs(np.trace(proj @ (r1.mat - r2.mat)).real)
        assert l1 <= metrics.trace_distance(r1, r2) + 1e-9


def test_bayes_success():
    assert metrics.bayes_success(KET0, KET0) == pytest.approx(0.5)
    assert metrics.bayes_success(KET0, KET1) == pytest.approx(1.0)
    assert metrics.bayes_success(KET0, PLUS) == pytest.approx(
        0.5 + SQRT2 / 4.0, abs=1e-12
    )


def test_fidelity_distance_bounds_edges():
    rho = states.random_density(3, 2, 53)
    lo, up = metrics.fidelity_distance_bounds(rho, rho)
    assert lo == pytest.approx(0.0, abs=1e-7)
    assert up == pytest.approx(0.0, abs=1e-7)
    lo, up = metrics.fidelity_distance_bounds(KET0, KET1)
    assert lo == pytest.approx(0.0, abs=1e-10)
    assert up == pytest.approx(0.0, abs=1e-10)


def test_fidelity_distance_bounds_sweep():
    worst = np.inf
    for seed in range(300):
        r1, r2 = random_pair(derive_seed(54, seed), 2 + seed % 7)
        lo, up = metrics.fidelity_distance_bounds(r1, r2)
        worst = min(worst, lo, up)
    assert worst >= -1e-9


def test_symmetry():
    r1, r2 = random_pair(55, 4)
    assert metrics.trace_distance(r1, r2) == pytest.approx(
        metrics.trace_distance(r2, r1), abs=1e-10
    )
    assert metrics.fidelity(r1, r2) == pytest.approx(
        metrics.fidelity(r2, r1), abs=1e-10
    )


def test_unitary_invariance():
    r1, r2 = random_pair(56, 3)
    u = states.random_unitary(3, 57)
    c1 = states.make_density(u @ r1.mat @ u.conj().T, tol=1e-8)
    c2 = states.make_density(u @ r2.mat @ u.conj().T, tol=1e-8)
    assert metrics.trace_distance(c1, c2) == pytest.approx(
        metrics.trace_distance(r1, r2), abs=1e-9
    )
    assert metrics.fidelity(c1, c2) == pytest.approx(
        metrics.fidelity(r1, r2), abs=1e-9
    )


def test_distance_monotone_under_partial_trace():
    for seed in range(20):
        r1, r2 = random_pair(derive_seed(58, seed), 4)
        t_full = metrics.trace_distance(r1, r2)
        p1 = states.make_density(linalg.partial_trace(r1.mat, 2, 2, "H"), tol=1e-8)
        p2 = states.make_density(linalg.partial_trace(r2.mat, 2, 2, "H"), tol=1e-8)
        assert metrics.trace_distance(p1, p2) <= t_full + 1e-9


def test_dimension_mismatch():
    with pytest.raises(SizeError):
        metrics.trace_distance(KET0, states.random_density(3, 1, 59))
