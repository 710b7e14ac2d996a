"""Simplex quadratic programs: exact values, relaxations, tightness."""

import numpy as np
import pytest

from spnkit import (
    DimensionTooLargeError,
    SymMatrix,
    build_affine,
    build_separable,
    certify_tightness,
    permute_into_Mn,
    raw_instance,
    sphere_relaxation,
    validate_certificate,
    z_dnn_primal,
    z_spn_bisection,
    z_spn_bracket,
    z_star_oracle,
)
from spnkit.samplers import random_mn_member, random_symmetric

EPS_OPT = 1e-6


def _ones(n):
    return SymMatrix(np.ones((n, n)))


class TestBuildSeparable:
    def test_identity_case(self):
        inst = build_separable(np.zeros(3), np.ones(3))
        assert np.array_equal(inst.q.array, np.eye(3))

    def test_formula(self):
        inst = build_separable([1.0, 2.0], [0.0, 0.0])
        assert np.array_equal(inst.q.array, [[2.0, 3.0], [3.0, 4.0]])

    def test_sorted_weights_are_ordered(self, rng):
        alpha = np.sort(rng.uniform(-5, 5, size=6))
        inst = build_separable(alpha, rng.uniform(-5, 5, size=6))
        res = permute_into_Mn(inst.q)
        assert res.found
        assert res.witness.perm == tuple(range(1, 7))

    def test_provenance_validated(self):
        inst = build_separable([1.0, -1.0], [2.0, 0.5])
        from spnkit import Separable, StqpInstance

        with pytest.raises(ValueError):
            StqpInstance(SymMatrix(np.eye(2)), Separable((1.0, -1.0), (2.0, 0.5)))
        assert isinstance(inst.provenance, Separable)


class TestBuildAffine:
    def test_formula(self):
        qt = SymMatrix([[1.0, 0.0], [0.0, 1.0]])
        inst = build_affine(qt, [1.0, 2.0])
        assert np.array_equal(inst.q.array, [[3.0, 3.0], [3.0, 5.0]])


class TestZStar:
    def test_identity(self):
        for n in (2, 3, 5):
            val, x = z_star_oracle(raw_instance(SymMatrix(np.eye(n))))
            assert abs(val - 1.0 / n) < 1e-12
            assert np.allclose(x, np.ones(n) / n, atol=1e-9)

    def test_fixture_value_one(self, perm_ordered5):
        val, _ = z_star_oracle(raw_instance(perm_ordered5))
        assert abs(val - 1.0) < 1e-12

    def test_horn_zero(self, horn):
        val, _ = z_star_oracle(raw_instance(horn))
        assert abs(val) < 1e-12

    def test_dimension_cap(self):
        with pytest.raises(DimensionTooLargeError):
            z_star_oracle(raw_instance(SymMatrix(np.eye(21))))

    def test_permutation_invariance(self, rng):
        for _ in range(30):
            n = int(rng.integers(2, 6))
            a = random_symmetric(rng, n)
            perm = rng.permutation(n)
            b = SymMatrix(a.array[np.ix_(perm, perm)])
            va, _ = z_star_oracle(raw_instance(a))
            vb, _ = z_star_oracle(raw_instance(b))
            assert abs(va - vb) < 1e-10


class TestZSpn:
    def test_all_ones(self):
        assert abs(z_spn_bisection(raw_instance(_ones(4))) - 1.0) < 1e-12

    def test_fixture(self, perm_ordered5):
        z = z_spn_bisection(raw_instance(perm_ordered5))
        assert abs(z - 1.0) <= 1e-5

    def test_horn_negative(self, horn):
        bracket = z_spn_bracket(raw_instance(horn))
        assert not bracket.undecided
        assert bracket.value < -1e-6
        # frozen independent value: 2/sqrt(5) - 1
        assert abs(bracket.value - (2.0 / np.sqrt(5.0) - 1.0)) <= 2e-6

    def test_bracket_certificate(self, rng):
        a = random_mn_member(rng, 5)
        inst = raw_instance(a)
        bracket = z_spn_bracket(inst)
        assert bracket.certificate is not None
        shifted = SymMatrix(a.array - bracket.lo * np.ones((5, 5)))
        assert validate_certificate(shifted, bracket.certificate)

    def test_shift_equivariance(self, rng):
        for _ in range(10):
            n = int(rng.integers(2, 6))
            a = random_symmetric(rng, n)
            lam = float(rng.uniform(-2, 2))
            z0 = z_spn_bisection(raw_instance(a))
            z1 = z_spn_bisection(
                raw_instance(SymMatrix(a.array + lam * np.ones((n, n))))
            )
            assert abs(z1 - z0 - lam) <= 2 * EPS_OPT

    def test_z_star_shift_equivariance(self, rng):
        for _ in range(30):
            n = int(rng.integers(2, 6))
            a = random_symmetric(rng, n)
            lam = float(rng.uniform(-3, 3))
            v0, _ = z_star_oracle(raw_instance(a))
            v1, _ = z_star_oracle(
                raw_instance(SymMatrix(a.array + lam * np.ones((n, n))))
            )
            assert abs(v1 - v0 - lam) <= 1e-9


class TestZDnn:
    def test_all_ones(self):
        assert abs(z_dnn_primal(raw_instance(_ones(3))) - 1.0) <= 1e-9

    def test_identity_two(self):
        assert abs(z_dnn_primal(raw_instance(SymMatrix(np.eye(2)))) - 0.5) <= 1e-8

    def test_agreement_with_bisection_on_ordered(self, rng):
        for _ in range(12):
            n = int(rng.integers(3, 6))
            a = random_mn_member(rng, n)
            inst = raw_instance(a)
            z_spn = z_spn_bisection(inst)
            z_dnn = z_dnn_primal(inst)
            assert abs(z_spn - z_dnn) <= 2 * EPS_OPT


class TestDualityChain:
    def test_chain_on_random_instances(self, rng):
        for _ in range(25):
            n = int(rng.integers(2, 6))
            inst = raw_instance(random_symmetric(rng, n))
            bracket = z_spn_bracket(inst)
            z_spn = bracket.value
            z_dnn = z_dnn_primal(inst)
            z_star, _ = z_star_oracle(inst)
            assert z_spn <= z_dnn + 2 * EPS_OPT
            assert z_dnn <= z_star + EPS_OPT
            if not bracket.undecided:
                # the two relaxed values coincide in theory
                assert abs(z_spn - z_dnn) <= 2 * EPS_OPT


class TestCertifyTightness:
    def test_fixture_tight_via_permutation(self, perm_ordered5):
        report = certify_tightness(raw_instance(perm_ordered5))
        assert report.tight
        assert "Mn" in report.certificates
        assert abs(report.z_spn - 1.0) <= 1e-5
        assert report.z_spn_interval[1] - report.z_spn_interval[0] <= 1e-6

    def test_separable_tight(self):
        report = certify_tightness(build_separable([3.0, 1.0, 2.0], [1.0, 1.0, 1.0]))
        assert report.tight
        assert "Separable" in report.certificates
        assert abs(report.z_star - report.z_spn) <= 1e-5

    def test_horn_not_tight(self, horn):
        report = certify_tightness(raw_instance(horn))
        assert report.tight is False
        assert report.gap > 1e-3
        assert report.certificates == ()

    def test_qmin_tight(self, rng):
        from spnkit.samplers import random_qmin_instance

        for _ in range(10):
            n = int(rng.integers(2, 6))
            report = certify_tightness(raw_instance(random_qmin_instance(rng, n)))
            assert "QMin" in report.certificates
            assert report.gap <= EPS_OPT

    def test_qplus_tight(self, rng):
        # convex-over-simplex objectives: PSD matrices qualify
        g = rng.normal(size=(4, 4))
        report = certify_tightness(raw_instance(SymMatrix(g @ g.T)))
        assert "QPlus" in report.certificates
        assert report.gap <= EPS_OPT

    def test_certificate_attached(self, rng):
        a = random_mn_member(rng, 5)
        report = certify_tightness(raw_instance(a))
        assert report.spn_certificate is not None

    def test_gap_closes_on_orbit_members(self, rng):
        # whenever a permutation maps the objective into the ordered class
        # the relaxation is exact, copositive input or not
        from spnkit import joint_orbit_search
        from spnkit.samplers import random_group_element

        for _ in range(8):
            n = int(rng.integers(3, 6))
            m = random_mn_member(rng, n)
            g = random_group_element(rng, n)
            perm_only = type(g)(g.perm, (1.0,) * n)
            from spnkit import apply_group

            q = apply_group(perm_only, m)
            assert joint_orbit_search(q).found
            report = certify_tightness(raw_instance(q))
            assert report.gap <= EPS_OPT
            assert "Mn" in report.certificates


class TestSphere:
    def test_identity(self):
        assert abs(sphere_relaxation(SymMatrix(np.eye(4))) - 1.0) < 1e-12

    def test_diag_example(self):
        assert abs(sphere_relaxation(SymMatrix(np.diag([1.0, 4.0]))) - 1.0) < 1e-12

    def test_nonneg_lower_bound(self, rng):
        from spnkit import sym_eigen

        for _ in range(10):
            n = int(rng.integers(2, 6))
            a = SymMatrix(np.abs(random_symmetric(rng, n).array))
            val = sphere_relaxation(a)
            w, _ = sym_eigen(a)
            assert val >= w[0] - EPS_OPT
