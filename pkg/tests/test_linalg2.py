import numpy as np
import pytest
from scipy.linalg import expm

from kickedspin import (adjoint, eig2, floquet, frob_dist, mat_mul, projector,
                        projector_phase_exp)
from kickedspin.model import ModelParams, analytic_eigenvalues


def random_unit_vector(rng):
    v = rng.normal(size=3)
    return v / np.linalg.norm(v)


class TestProjector:
    def test_z_axis(self):
        assert frob_dist(projector([0, 0, 1]), np.diag([1.0, 0.0])) < 1e-15

    def test_x_axis(self):
        assert frob_dist(projector([1, 0, 0]), 0.5 * np.ones((2, 2))) < 1e-15

    def test_tilted_axis_idempotent(self):
        th = np.pi / 3
        p = projector([np.sin(th), 0.0, np.cos(th)])
        assert np.max(np.abs(p @ p - p)) < 1e-14

    def test_hermitian_idempotent_trace(self, rng):
        for _ in range(200):
            p = projector(random_unit_vector(rng))
            assert frob_dist(p, adjoint(p)) < 1e-13
            assert frob_dist(p @ p, p) < 1e-13
            assert abs(np.trace(p) - 1.0) < 1e-13

    def test_rejects_non_unit(self):
        with pytest.raises(ValueError):
            projector([1.0, 1.0, 0.0])


class TestProjectorPhaseExp:
    def test_zero_angle_is_identity(self, rng):
        p = projector(random_unit_vector(rng))
        assert frob_dist(projector_phase_exp(0.0, p), np.eye(2)) < 1e-15

    def test_two_pi_is_identity(self):
        p = np.diag([1.0, 0.0]).astype(complex)
        assert frob_dist(projector_phase_exp(2 * np.pi, p), np.eye(2)) < 1e-12

    def test_against_generic_matrix_exponential(self, rng):
        # scaling-and-squaring oracle over 1000 random (c, P)
        worst = 0.0
        for _ in range(1000):
            p = projector(random_unit_vector(rng))
            c = complex(rng.uniform(-2 * np.pi, 2 * np.pi), rng.uniform(-1.0, 1.0))
            worst = max(worst, frob_dist(projector_phase_exp(c, p), expm(-1j * c * p)))
        assert worst < 1e-12

    def test_rejects_non_idempotent(self):
        with pytest.raises(ValueError):
            projector_phase_exp(1.0, np.array([[1.0, 0.5], [0.0, 1.0]]))


class TestEig2:
    def test_diagonal(self):
        r = eig2(np.diag([2.0 + 1j, -0.5]))
        assert set(np.round(r.values, 12)) == {2.0 + 1j, -0.5 + 0j}
        assert not r.defective
        # eigenvectors are the coordinate axes
        assert min(abs(r.vectors[0, 0]), abs(r.vectors[1, 0])) < 1e-14

    def test_jordan_block_is_defective(self):
        r = eig2(np.array([[0.0, 1.0], [0.0, 0.0]]))
        assert np.allclose(r.values, 0.0)
        assert r.defective

    def test_scalar_matrix(self):
        r = eig2(1.5 * np.eye(2))
        assert np.allclose(r.values, 1.5)

    def test_floquet_matches_analytic(self, rng):
        p = ModelParams(mu=1.1, theta=0.9, phi=0.4)
        for _ in range(50):
            lam = rng.uniform(0, 2 * np.pi)
            r = eig2(floquet(p, lam))
            s = analytic_eigenvalues(p, lam)
            err = min(abs(r.values[0] - s.z_plus), abs(r.values[0] - s.z_minus)) \
                + min(abs(r.values[1] - s.z_plus), abs(r.values[1] - s.z_minus))
            assert err < 1e-12

    def test_residuals(self, rng):
        for _ in range(300):
            m = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
            r = eig2(m)
            if r.defective:
                continue
            for k in range(2):
                assert np.linalg.norm(m @ r.vectors[:, k] - r.values[k] * r.vectors[:, k]) < 1e-11

    def test_eigenvalue_product_is_determinant(self, rng):
        for _ in range(100):
            m = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
            r = eig2(m)
            assert abs(r.values[0] * r.values[1] - np.linalg.det(m)) < 1e-12


class TestBasicOps:
    def test_adjoint_involution(self, rng):
        m = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        assert frob_dist(adjoint(adjoint(m)), m) == 0.0

    def test_frob_dist_self(self, rng):
        m = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        assert frob_dist(m, m) == 0.0

    def test_unitary_product(self):
        p = ModelParams(mu=0.7, theta=1.1, phi=2.2)
        u = floquet(p, 3.3)
        assert frob_dist(mat_mul(u, adjoint(u)), np.eye(2)) < 1e-12
