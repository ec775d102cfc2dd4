import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.linalg import solve_continuous_lyapunov

from magnomech.dynamics import (
    build_diffusion,
    build_drift,
    check_stability,
    format_matrix,
    lyapunov_residual,
    solve_lyapunov,
)
from magnomech.errors import StabilityError
from magnomech.measures import symplectic_eigenvalues
from magnomech.model import SystemParams, feedback_rates, thermal_occupancy

from conftest import random_stable_pair

TWO_PI = 2 * math.pi
ZERO_PATTERN = [
    (0, 2), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 0), (2, 5),
    (3, 4), (3, 5), (4, 0), (4, 1), (4, 2), (4, 3), (4, 4), (5, 0), (5, 1), (5, 2),
]


def drift_for(p, g_eff=None):
    rates = feedback_rates(p.gamma_a, p.delta_a, p.tau, p.beta)
    return build_drift(p, rates, p.g_gb_eff if g_eff is None else g_eff)


class TestDrift:
    def test_decoupled_limit(self):
        p = SystemParams(g_ga=0.0, xi=0.0, tau=0.0, delta_a=3.0, delta_b_tilde=5.0)
        L = drift_for(p, 0.0)
        assert np.all(L[:2, 2:] == 0) and np.all(L[2:, :2] == 0)
        assert np.all(L[2:4, 4:] == 0) and np.all(L[4:, 2:4] == 0)
        np.testing.assert_array_equal(L[:2, :2], [[-p.gamma_a, 3.0], [-3.0, -p.gamma_a]])
        np.testing.assert_array_equal(L[2:4, 2:4], [[-p.gamma_b, 5.0], [-5.0, -p.gamma_b]])

    def test_entries(self, fig2_point):
        p = fig2_point
        rates = feedback_rates(p.gamma_a, p.delta_a, p.tau, p.beta)
        L = build_drift(p, rates, p.g_gb_eff)
        assert L[0, 1] == rates.delta_fb
        assert L[2, 2] == -p.gamma_b + p.xi
        assert L[3, 3] == -p.gamma_b - p.xi
        assert L[2, 4] == -p.g_gb_eff and L[5, 3] == p.g_gb_eff
        assert L[0, 3] == p.g_ga and L[1, 2] == -p.g_ga and L[2, 1] == p.g_ga and L[3, 0] == -p.g_ga
        assert (L[4, 5], L[5, 4], L[5, 5]) == (p.omega_m, -p.omega_m, -p.gamma_m)

    def test_operating_point_stable(self, fig2_point):
        report = check_stability(drift_for(fig2_point))
        assert report.stable
        # eigenvalue oracle: numpy's eigvals agree with scipy's general solver
        from scipy.linalg import eigvals
        assert report.max_real_part == pytest.approx(np.max(eigvals(drift_for(fig2_point)).real), rel=1e-9)

    def test_no_feedback_baseline(self):
        p = SystemParams(tau=0.0, xi=0.0)
        L = drift_for(p)
        np.testing.assert_array_equal(L[:2, :2], [[-p.gamma_a, p.delta_a], [-p.delta_a, -p.gamma_a]])
        assert L[2, 2] == L[3, 3] == -p.gamma_b

    @given(
        tau=st.floats(0, 1), beta=st.floats(-10, 10), xi=st.floats(0, 1e8),
        da=st.floats(-1e8, 1e8), db=st.floats(-1e8, 1e8), g=st.floats(0, 1e8), G=st.floats(0, 1e8),
    )
    def test_sparsity(self, tau, beta, xi, da, db, g, G):
        p = SystemParams(tau=tau, beta=beta, xi=xi, delta_a=da, delta_b_tilde=db, g_ga=g, g_gb_eff=G)
        L = drift_for(p)
        assert all(L[i, j] == 0.0 for i, j in ZERO_PATTERN)


class TestDiffusion:
    def test_vacuum_open_loop(self):
        p = SystemParams(T=0.0, tau=0.0)
        rates = feedback_rates(p.gamma_a, p.delta_a, p.tau, p.beta)
        K = build_diffusion(p, rates, 0.0, 0.0, 0.0)
        np.testing.assert_allclose(
            np.diag(K), [p.gamma_a, p.gamma_a, p.gamma_b, p.gamma_b, 0, p.gamma_m], rtol=1e-15
        )
        assert np.count_nonzero(K - np.diag(np.diag(K))) == 0

    def test_perfect_reinjection(self):
        p = SystemParams(tau=1.0, beta=0.0)
        rates = feedback_rates(p.gamma_a, p.delta_a, p.tau, p.beta)
        K = build_diffusion(p, rates, 1.0, 1.0, 1.0)
        assert K[0, 0] == 0.0 and K[1, 1] == 0.0

    def test_thermal_mechanical_entry(self):
        p = SystemParams(T=0.01)
        rates = feedback_rates(p.gamma_a, p.delta_a, p.tau, p.beta)
        n_m = thermal_occupancy(p.omega_m, p.T)
        K = build_diffusion(p, rates, 0.0, 0.0, n_m)
        assert K[5, 5] == pytest.approx(p.gamma_m * (2 * 20.340618351800997 + 1), rel=1e-12)
        assert K[4, 4] == 0.0


class TestStability:
    def test_identity(self):
        r = check_stability(-np.eye(6))
        assert r.stable and r.max_real_part == -1.0
        assert len(r.eigenvalues) == 6
        assert not check_stability(np.eye(6)).stable

    def test_marginal_rejected(self):
        L = np.diag([-1.0, -1.0, -1.0, -1.0, -1.0, -1e-12])
        assert not check_stability(L).stable


class TestLyapunov:
    def test_isotropic(self):
        np.testing.assert_allclose(solve_lyapunov(-np.eye(6), 2 * np.eye(6)), np.eye(6), atol=1e-15)

    @pytest.mark.parametrize("gamma, delta, n", [(1.0, 0.0, 0.0), (2.0, 5.0, 3.5), (1e-3, 1e3, 20.0)])
    def test_single_mode(self, gamma, delta, n):
        L = np.array([[-gamma, delta], [-delta, -gamma]])
        V = solve_lyapunov(L, gamma * (2 * n + 1) * np.eye(2))
        np.testing.assert_allclose(V, (n + 0.5) * np.eye(2), rtol=1e-10, atol=1e-12 * (n + 0.5))

    def test_refuses_unstable(self):
        with pytest.raises(StabilityError) as err:
            solve_lyapunov(np.eye(6), np.eye(6))
        assert err.value.report is not None and not err.value.report.stable

    def test_open_loop_point_physical(self):
        p = SystemParams(tau=0.0, xi=0.0)
        rates = feedback_rates(p.gamma_a, p.delta_a, p.tau, p.beta)
        n = [thermal_occupancy(w, p.T) for w in (p.omega_a, p.omega_b, p.omega_m)]
        L, K = build_drift(p, rates, p.g_gb_eff), build_diffusion(p, rates, *n)
        V = solve_lyapunov(L, K)
        assert lyapunov_residual(L, V, K) <= 1e-10 * np.linalg.norm(K)
        assert np.min(symplectic_eigenvalues(V)) >= 0.5 - 1e-9

    def test_matches_bartels_stewart(self, fig2_point):
        p = fig2_point
        rates = feedback_rates(p.gamma_a, p.delta_a, p.tau, p.beta)
        n = [thermal_occupancy(w, p.T) for w in (p.omega_a, p.omega_b, p.omega_m)]
        L, K = build_drift(p, rates, p.g_gb_eff), build_diffusion(p, rates, *n)
        V = solve_lyapunov(L, K)
        np.testing.assert_allclose(V, solve_continuous_lyapunov(L, -K), rtol=1e-8, atol=1e-8 * np.abs(V).max())
        assert lyapunov_residual(L, V, K) <= 1e-10 * np.linalg.norm(K)

    @settings(max_examples=100, deadline=None)
    @given(seed=st.integers(0, 2**32 - 1), c=st.floats(1e-3, 1e3))
    def test_random_contract_and_scaling(self, seed, c):
        L, K = random_stable_pair(np.random.default_rng(seed))
        V = solve_lyapunov(L, K)
        assert np.array_equal(V, V.T)
        assert lyapunov_residual(L, V, K) <= 1e-10 * np.linalg.norm(K)
        assert np.min(np.linalg.eigvalsh(V)) >= -1e-10 * np.abs(V).max()
        Vc = solve_lyapunov(c * L, c * K)
        np.testing.assert_allclose(Vc, V, rtol=1e-8, atol=1e-10 * np.abs(V).max())


def test_format_matrix_roundtrip(rng):
    M = rng.normal(size=(6, 6))
    text = format_matrix(M)
    assert len(text.splitlines()) == 6
    np.testing.assert_array_equal(np.loadtxt(text.splitlines()), M)
