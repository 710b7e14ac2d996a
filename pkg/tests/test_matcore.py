"""Core matrix types, the group action, Schur complements, eigen utilities."""

import numpy as np
import pytest
from reference import char_poly_eigen_min, jacobi_eigenvalues

from spnkit import (
    GroupElement,
    SymMatrix,
    Tolerances,
    ZeroPivotError,
    apply_group,
    compose,
    delete_row_col,
    identity_group,
    inverse_group,
    project_psd,
    schur_complement,
    sym_eigen,
)


class TestSymMatrix:
    def test_symmetrizes_small_noise(self):
        a = SymMatrix([[1.0, 2.0 + 1e-9], [2.0, 3.0]])
        assert a.entry(1, 2) == a.entry(2, 1)

    def test_rejects_asymmetric(self):
        with pytest.raises(ValueError, match="not symmetric"):
            SymMatrix([[1.0, 5.0], [2.0, 3.0]])

    def test_rejects_nonfinite(self):
        with pytest.raises(ValueError, match="finite"):
            SymMatrix([[np.inf, 0.0], [0.0, 1.0]])

    def test_rejects_nonsquare(self):
        with pytest.raises(ValueError):
            SymMatrix([[1.0, 2.0, 3.0], [2.0, 1.0, 0.0]])

    def test_array_read_only(self):
        a = SymMatrix(np.eye(2))
        with pytest.raises(ValueError):
            a.array[0, 0] = 5.0


class TestTolerances:
    def test_defaults_positive(self):
        t = Tolerances()
        assert t.eps_ord == 1e-9 and t.max_iter >= 1

    def test_rejects_bad_values(self):
        with pytest.raises(ValueError):
            Tolerances(eps_ord=0.0)
        with pytest.raises(ValueError):
            Tolerances(max_iter=0)


class TestSchurComplement:
    def test_bordered_fixture_gives_horn(self, horn_bordered6, horn):
        s = schur_complement(horn_bordered6, 1)
        assert np.abs(s.array - horn.array).max() <= 1e-12

    def test_identity_2x2(self):
        s = schur_complement(SymMatrix(np.eye(2)), 1)
        assert s.n == 1 and abs(s.entry(1, 1) - 1.0) < 1e-15

    def test_2x2_value(self):
        s = schur_complement(SymMatrix([[2.0, 1.0], [1.0, 2.0]]), 1)
        assert abs(s.entry(1, 1) - 1.5) < 1e-15

    def test_zero_pivot(self):
        with pytest.raises(ZeroPivotError):
            schur_complement(SymMatrix([[0.0, 1.0], [1.0, 2.0]]), 1)

    def test_determinant_identity(self, rng):
        for _ in range(200):
            n = int(rng.integers(2, 8))
            a = rng.uniform(-2, 2, size=(n, n))
            a = SymMatrix((a + a.T) / 2)
            if abs(a.entry(1, 1)) < 1e-3:
                continue
            lhs = np.linalg.det(a.array)
            rhs = a.entry(1, 1) * np.linalg.det(schur_complement(a, 1).array)
            assert abs(lhs - rhs) <= 1e-8 * max(1.0, abs(lhs))


class TestDeleteRowCol:
    def test_identity(self):
        out = delete_row_col(SymMatrix(np.eye(3)), 2)
        assert np.array_equal(out.array, np.eye(2))

    def test_leading_block(self, perm_ordered5):
        out = delete_row_col(perm_ordered5, 5)
        assert np.array_equal(out.array, perm_ordered5.array[:4, :4])

    def test_2x2(self):
        out = delete_row_col(SymMatrix([[1.0, 2.0], [2.0, 3.0]]), 1)
        assert out.n == 1 and out.entry(1, 1) == 3.0


class TestGroupAction:
    def test_identity_element(self, horn):
        g = identity_group(5)
        assert np.array_equal(apply_group(g, horn).array, horn.array)

    def test_permutation_fixture(self, perm_ordered5):
        g = GroupElement((4, 5, 3, 1, 2), (1.0,) * 5)
        expected = np.array(
            [
                [2, 0, 1, 2, 2],
                [0, 2, 2, 2, 2],
                [1, 2, 2, 2, 2],
                [2, 2, 2, 2, 2],
                [2, 2, 2, 2, 2],
            ],
            dtype=float,
        )
        assert np.abs(apply_group(g, perm_ordered5).array - expected).max() < 1e-14

    def test_diagonal_scaling(self):
        g = GroupElement((1, 2), (2.0, 1.0))
        out = apply_group(g, SymMatrix([[1.0, -1.0], [-1.0, 1.0]]))
        assert np.array_equal(out.array, np.array([[4.0, -2.0], [-2.0, 1.0]]))

    def test_action_composition(self, rng):
        for _ in range(300):
            n = int(rng.integers(2, 7))
            a = rng.uniform(-2, 2, size=(n, n))
            a = SymMatrix((a + a.T) / 2)
            g = GroupElement(
                tuple(int(p) + 1 for p in rng.permutation(n)),
                tuple(rng.uniform(0.3, 3.0, size=n)),
            )
            h = GroupElement(
                tuple(int(p) + 1 for p in rng.permutation(n)),
                tuple(rng.uniform(0.3, 3.0, size=n)),
            )
            lhs = apply_group(compose(g, h), a).array
            rhs = apply_group(h, apply_group(g, a)).array
            assert np.abs(lhs - rhs).max() <= 1e-8 * (1 + np.abs(lhs).max())

    def test_inverse(self, rng):
        n = 6
        a = rng.uniform(-2, 2, size=(n, n))
        a = SymMatrix((a + a.T) / 2)
        g = GroupElement(
            tuple(int(p) + 1 for p in rng.permutation(n)),
            tuple(rng.uniform(0.3, 3.0, size=n)),
        )
        back = apply_group(inverse_group(g), apply_group(g, a))
        assert np.abs(back.array - a.array).max() < 1e-12

    def test_validation(self):
        with pytest.raises(ValueError):
            GroupElement((1, 1), (1.0, 1.0))
        with pytest.raises(ValueError):
            GroupElement((1, 2), (1.0, 0.0))


class TestSymEigen:
    def test_identity(self):
        w, v = sym_eigen(SymMatrix(np.eye(4)))
        assert np.allclose(w, 1.0)
        assert np.allclose(v.T @ v, np.eye(4), atol=1e-12)

    def test_offdiag_pair(self):
        w, _ = sym_eigen(SymMatrix([[0.0, 1.0], [1.0, 0.0]]))
        assert np.allclose(w, [-1.0, 1.0])

    def test_horn_not_psd_vs_independent_oracles(self, horn):
        w, _ = sym_eigen(horn)
        assert w[0] < -1e-8
        # frozen closed form: min eigenvalue of the Horn matrix is 1 - sqrt(5)
        assert abs(w[0] - (1.0 - np.sqrt(5.0))) < 1e-12
        # double root: companion-matrix accuracy degrades to ~sqrt(eps)
        assert abs(w[0] - char_poly_eigen_min(horn.array)) < 1e-6
        assert np.allclose(w, jacobi_eigenvalues(horn.array), atol=1e-10)

    def test_random_vs_jacobi(self, rng):
        for _ in range(25):
            n = int(rng.integers(2, 7))
            a = rng.uniform(-2, 2, size=(n, n))
            a = SymMatrix((a + a.T) / 2)
            w, v = sym_eigen(a)
            assert np.all(np.diff(w) >= -1e-14)
            recon = (v * w) @ v.T
            assert np.linalg.norm(recon - a.array) <= 1e-8 * (1 + np.linalg.norm(a.array))
            assert np.allclose(w, jacobi_eigenvalues(a.array), atol=1e-9)


class TestProjectPsd:
    def test_psd_fixed_point(self, rng):
        g = rng.normal(size=(4, 4))
        a = SymMatrix(g @ g.T)
        out = project_psd(a)
        assert np.abs(out.array - a.array).max() < 1e-12

    def test_offdiag_pair(self):
        out = project_psd(SymMatrix([[0.0, 1.0], [1.0, 0.0]]))
        assert np.allclose(out.array, [[0.5, 0.5], [0.5, 0.5]], atol=1e-14)

    def test_negative_identity(self):
        out = project_psd(SymMatrix(-np.eye(3)))
        assert np.abs(out.array).max() < 1e-14

    def test_idempotent_and_contraction(self, rng):
        for _ in range(100):
            n = int(rng.integers(2, 7))
            a = rng.uniform(-2, 2, size=(n, n))
            a = SymMatrix((a + a.T) / 2)
            p = project_psd(a)
            again = project_psd(p)
            assert np.abs(again.array - p.array).max() <= 1e-10
            g = rng.normal(size=(n, n))
            q = g @ g.T
            dist_p = np.linalg.norm(p.array - a.array)
            dist_q = np.linalg.norm(q - a.array)
            assert dist_p <= dist_q + 1e-10


class TestMmatrixInverse:
    def test_inverse_nonnegative(self, rng):
        from spnkit.samplers import random_zmatrix_diag_dominant

        for _ in range(300):
            n = int(rng.integers(2, 8))
            a = random_zmatrix_diag_dominant(rng, n)
            assert np.linalg.inv(a.array).min() >= -1e-8
