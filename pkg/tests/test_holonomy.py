import numpy as np
import pytest
from scipy.linalg import expm

from conftest import random_params
from kickedspin import (InvalidPathError, ModelParams, ParamPath, connection,
                        dtheta_dlambda, eigenframe, factor_permutation_phases,
                        holonomy, mixing_angle, ordered_exponential, rotation,
                        transported_overlap, winding_integral)

SWAP_MINUS = np.array([[0.0, -1.0], [1.0, 0.0]])


class TestParamPath:
    def test_real_axis_loop_closure(self):
        path = ParamPath.real_axis_loop(loops=2, samples_per_loop=100)
        assert path.closed
        assert path.loop_power == 2
        assert path.samples.size == 201

    def test_arc_lengths(self):
        path = ParamPath.real_axis_loop(samples_per_loop=100)
        assert np.allclose(path.arc_lengths, 2 * np.pi / 100)

    def test_open_path_rejected_as_closed(self):
        with pytest.raises(InvalidPathError):
            ParamPath(np.linspace(0, 1.0, 10).astype(complex), closed=True)

    def test_too_short(self):
        with pytest.raises(InvalidPathError):
            ParamPath(np.array([0.0 + 0j]), closed=False)

    def test_circle(self):
        path = ParamPath.circle(1.0 + 0.5j, 0.2, samples=64)
        assert path.closed
        assert np.allclose(np.abs(path.samples - (1.0 + 0.5j)), 0.2)


class TestConnection:
    def test_degenerate_axis_zero(self):
        p = ModelParams(mu=1.0, theta=0.0)
        c = connection(p, 1.3)
        assert np.linalg.norm(c.a) == 0.0

    def test_diagonal_vanishes(self, rng):
        for _ in range(50):
            p = random_params(rng)
            c = connection(p, rng.uniform(0.1, 2 * np.pi - 0.1))
            assert np.linalg.norm(c.a_diag) == 0.0
            assert abs(c.a[0, 0]) == 0.0 and abs(c.a[1, 1]) == 0.0

    def test_numeric_diagonal_connection_vanishes(self, rng):
        # finite-difference check that <xi_b | d xi> has no diagonal part;
        # beta is kept away from 0 so the EPs do not crowd the real axis
        # and wreck the fixed-step difference quotient
        h = 1e-5
        for _ in range(25):
            p = random_params(rng, min_beta=0.3)
            lam = rng.uniform(0.2, 2 * np.pi - 0.2)
            th0 = mixing_angle(p, lam)
            up = eigenframe(p, lam + h, hint=th0)
            dn = eigenframe(p, lam - h, hint=th0)
            mid = eigenframe(p, lam, hint=th0)
            for band in range(2):
                dket = (up[band] - dn[band]) / (2 * h)
                assert abs(np.vdot(mid[band + 2], dket)) < 1e-10

    def test_analytic_matches_finite_difference(self, rng):
        h = 1e-5
        for _ in range(50):
            p = random_params(rng, min_beta=0.3)
            lam = rng.uniform(0.2, 2 * np.pi - 0.2)
            th0 = mixing_angle(p, lam)
            fd = (mixing_angle(p, lam + h, hint=th0) - mixing_angle(p, lam - h, hint=th0)) / (2 * h)
            assert abs(dtheta_dlambda(p, lam) - fd) < 1e-8


class TestWindingIntegral:
    def test_canonical_quarter_turn(self, canonical):
        path = ParamPath.real_axis_loop(samples_per_loop=10_000)
        assert winding_integral(canonical, path) == pytest.approx(np.pi / 2, abs=1e-6)

    def test_sign_flips_with_mu(self):
        p = ModelParams(mu=-np.pi / 2, theta=np.pi / 2)
        path = ParamPath.real_axis_loop(samples_per_loop=10_000)
        assert winding_integral(p, path) == pytest.approx(-np.pi / 2, abs=1e-6)

    def test_retraced_loop_cancels(self, canonical):
        fwd = np.linspace(0.0, 0.1, 200)
        path = ParamPath.from_samples(np.concatenate([fwd, fwd[::-1]]), closed=True)
        assert winding_integral(canonical, path) == pytest.approx(0.0, abs=1e-12)

    def test_additivity(self, canonical):
        etas = [winding_integral(canonical, ParamPath.real_axis_loop(loops=n,
                                                                     samples_per_loop=2_000))
                for n in (1, 2, 3, 4)]
        for n in (2, 3, 4):
            assert etas[n - 1] == pytest.approx(n * etas[0], abs=1e-6)

    def test_quadrature_convergence(self, canonical):
        # periodic integrand: trapezoid converges superalgebraically, so the
        # error must fall at least quadratically until it hits float noise
        errs = [abs(winding_integral(canonical,
                                     ParamPath.real_axis_loop(samples_per_loop=n)) - np.pi / 2)
                for n in (100, 1_000, 10_000)]
        noise_floor = 5e-13
        assert errs[1] <= max(errs[0] / 100.0, noise_floor)
        assert errs[2] <= max(errs[1] / 100.0, noise_floor)

    def test_open_path_rejected(self, canonical):
        path = ParamPath.from_samples(np.linspace(0.0, 3.0, 100), closed=False)
        with pytest.raises(InvalidPathError):
            winding_integral(canonical, path)

    def test_circle_around_ep(self, canonical):
        from kickedspin import ep_locations
        lam_p = ep_locations(canonical).lambda_plus
        path = ParamPath.circle(lam_p, 0.3, samples=4_000)
        assert winding_integral(canonical, path) == pytest.approx(np.pi / 2, abs=1e-6)

    def test_circle_off_ep(self, canonical):
        path = ParamPath.circle(3.0 + 0.2j, 0.1, samples=1_000)
        assert winding_integral(canonical, path) == pytest.approx(0.0, abs=1e-9)


class TestHolonomyMatrix:
    def test_fundamental_loop(self, canonical):
        res = holonomy(canonical, ParamPath.real_axis_loop())
        assert np.linalg.norm(res.matrix - SWAP_MINUS) < 1e-6
        assert res.permutation == (1, 0)
        assert res.phases[0] == pytest.approx(1.0, abs=1e-6)
        assert res.phases[1] == pytest.approx(-1.0, abs=1e-6)
        assert res.factorized

    def test_double_loop_is_minus_identity(self, canonical):
        res = holonomy(canonical, ParamPath.real_axis_loop(loops=2))
        assert np.linalg.norm(res.matrix + np.eye(2)) < 1e-6

    def test_quadruple_loop_is_identity(self, canonical):
        res = holonomy(canonical, ParamPath.real_axis_loop(loops=4))
        assert np.linalg.norm(res.matrix - np.eye(2)) < 1e-6

    def test_fourth_power(self, canonical):
        m = holonomy(canonical, ParamPath.real_axis_loop()).matrix
        assert np.linalg.norm(np.linalg.matrix_power(m, 4) - np.eye(2)) < 1e-7

    def test_loop_power_consistency(self, canonical):
        m1 = holonomy(canonical, ParamPath.real_axis_loop()).matrix
        m2 = holonomy(canonical, ParamPath.real_axis_loop(loops=2)).matrix
        assert np.linalg.norm(m2 - m1 @ m1) < 1e-8

    def test_orthogonality(self, rng):
        for _ in range(10):
            p = random_params(rng, min_beta=0.05)
            m = holonomy(p, ParamPath.real_axis_loop(samples_per_loop=2_000)).matrix
            assert np.linalg.norm(m.T @ m - np.eye(2)) < 1e-9

    def test_generic_parameters_still_quarter_turn(self, generic):
        res = holonomy(generic, ParamPath.real_axis_loop())
        assert abs(abs(res.eta) - np.pi / 2) < 1e-6


class TestOrderedExponential:
    def test_matches_closed_form(self, canonical):
        path = ParamPath.real_axis_loop(samples_per_loop=2_000)
        m_closed = holonomy(canonical, path).matrix
        for order in ("anti", "path"):
            m_gen = ordered_exponential(canonical, path, order=order)
            assert np.linalg.norm(m_gen - m_closed) < 1e-7

    def test_against_scipy_expm_product(self, canonical):
        # third route: product of scipy matrix exponentials
        path = ParamPath.real_axis_loop(samples_per_loop=400)
        mids = 0.5 * (path.samples[:-1] + path.samples[1:])
        dlam = np.diff(path.samples)
        g = np.array([[0.0, -1.0j], [1.0j, 0.0]])
        m = np.eye(2, dtype=complex)
        for k in range(mids.size):
            m = m @ expm(-1j * g * complex(dtheta_dlambda(canonical, mids[k])) * dlam[k])
        assert np.linalg.norm(ordered_exponential(canonical, path) - m) < 1e-10


class TestTransportedOverlap:
    def test_matches_holonomy(self, canonical):
        path = ParamPath.real_axis_loop(samples_per_loop=5_000)
        m1 = holonomy(canonical, path).matrix
        m2 = transported_overlap(canonical, path)
        assert np.linalg.norm(m1 - m2) < 1e-7

    def test_matches_holonomy_generic(self, generic):
        path = ParamPath.real_axis_loop(samples_per_loop=5_000)
        assert np.linalg.norm(holonomy(generic, path).matrix
                              - transported_overlap(generic, path)) < 1e-7

    def test_zero_length_path(self, canonical):
        path = ParamPath.from_samples(np.full(5, 1.0 + 0j), closed=True)
        assert np.linalg.norm(transported_overlap(canonical, path) - np.eye(2)) < 1e-12

    def test_small_contractible_loop(self, canonical):
        fwd = np.linspace(0.5, 0.6, 500)
        path = ParamPath.from_samples(np.concatenate([fwd, fwd[::-1]]), closed=True)
        assert np.linalg.norm(transported_overlap(canonical, path) - np.eye(2)) < 1e-7

    def test_double_loop(self, canonical):
        path = ParamPath.real_axis_loop(loops=2, samples_per_loop=5_000)
        assert np.linalg.norm(transported_overlap(canonical, path) + np.eye(2)) < 1e-7


class TestFactorization:
    def test_swap_pattern(self):
        perm, phases, ok = factor_permutation_phases(SWAP_MINUS)
        assert ok and perm == (1, 0)
        assert phases == (1.0 + 0j, -1.0 + 0j)

    def test_identity_pattern(self):
        perm, phases, ok = factor_permutation_phases(np.eye(2))
        assert ok and perm == (0, 1)

    def test_reconstruction(self, canonical):
        res = holonomy(canonical, ParamPath.real_axis_loop())
        rebuilt = np.zeros((2, 2), dtype=complex)
        for n in range(2):
            rebuilt[res.permutation[n], n] = res.phases[n]
        assert np.linalg.norm(rebuilt - res.matrix) < 1e-9

    def test_unfactorable_flagged(self):
        m = rotation(np.pi / 4)  # balanced rotation: no permutation pattern
        _, _, ok = factor_permutation_phases(m)
        assert not ok
