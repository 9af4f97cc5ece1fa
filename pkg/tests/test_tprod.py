"""Tensor-tensor product, transpose, t-SVD, multirank, nuclear norm."""

import numpy as np
import pytest

from tubal import core, spectral, tprod

import oracles


def rand(shape, seed=0):
    return np.random.default_rng(seed).standard_normal(shape)


class TestTProduct:
    def test_identity_law(self):
        x = rand((4, 3, 5), seed=1)
        eye = tprod.identity_tensor(4, 5)
        np.testing.assert_allclose(tprod.t_product(eye, x), x, atol=1e-12)
        eye2 = tprod.identity_tensor(3, 5)
        np.testing.assert_allclose(tprod.t_product(x, eye2), x, atol=1e-12)

    def test_n3_equals_1_is_matrix_product(self):
        a = rand((3, 4, 1), seed=2)
        b = rand((4, 2, 1), seed=3)
        np.testing.assert_allclose(
            tprod.t_product(a, b)[:, :, 0], a[:, :, 0] @ b[:, :, 0], atol=1e-12
        )

    def test_against_bcirc_oracle(self):
        a = rand((3, 4, 5), seed=4)
        b = rand((4, 2, 5), seed=5)
        np.testing.assert_allclose(tprod.t_product(a, b), oracles.tprod_bcirc(a, b), atol=1e-10)

    def test_many_random_shapes_against_oracle(self):
        rng = np.random.default_rng(6)
        for _ in range(25):
            n1, n2, n3, n4 = rng.integers(1, 6, size=4)
            a = rng.standard_normal((n1, n2, n3))
            b = rng.standard_normal((n2, n4, n3))
            np.testing.assert_allclose(
                tprod.t_product(a, b), oracles.tprod_bcirc(a, b), atol=1e-10
            )

    def test_associative(self):
        a, b, c = rand((3, 4, 4), 7), rand((4, 5, 4), 8), rand((5, 2, 4), 9)
        lhs = tprod.t_product(tprod.t_product(a, b), c)
        rhs = tprod.t_product(a, tprod.t_product(b, c))
        np.testing.assert_allclose(lhs, rhs, atol=1e-9)

    def test_distributive(self):
        a, b, c = rand((3, 4, 4), 10), rand((4, 2, 4), 11), rand((4, 2, 4), 12)
        lhs = tprod.t_product(a, b + c)
        rhs = tprod.t_product(a, b) + tprod.t_product(a, c)
        np.testing.assert_allclose(lhs, rhs, atol=1e-9)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            tprod.t_product(rand((3, 4, 5)), rand((3, 2, 5)))
        with pytest.raises(ValueError):
            tprod.t_product(rand((3, 4, 5)), rand((4, 2, 6)))


class TestTranspose:
    def test_involution(self):
        x = rand((3, 5, 4), seed=13)
        np.testing.assert_array_equal(tprod.t_transpose(tprod.t_transpose(x)), x)

    def test_product_rule(self):
        a = rand((3, 4, 5), seed=14)
        b = rand((4, 2, 5), seed=15)
        lhs = tprod.t_transpose(tprod.t_product(a, b))
        rhs = tprod.t_product(tprod.t_transpose(b), tprod.t_transpose(a))
        np.testing.assert_allclose(lhs, rhs, atol=1e-10)

    def test_n3_equals_1_is_matrix_transpose(self):
        x = rand((3, 5, 1), seed=16)
        np.testing.assert_array_equal(tprod.t_transpose(x)[:, :, 0], x[:, :, 0].T)

    def test_bcirc_of_transpose_is_transposed_bcirc(self):
        x = rand((3, 4, 5), seed=17)
        np.testing.assert_allclose(core.bcirc(tprod.t_transpose(x)), core.bcirc(x).T, atol=1e-12)


class TestIdentity:
    def test_first_slice_eye_rest_zero(self):
        eye = tprod.identity_tensor(4, 3)
        np.testing.assert_array_equal(eye[:, :, 0], np.eye(4))
        np.testing.assert_array_equal(eye[:, :, 1:], np.zeros((4, 4, 2)))

    def test_spectral_slices_all_identity(self):
        s = spectral.to_spectral(tprod.identity_tensor(3, 5))
        for k in range(5):
            np.testing.assert_allclose(s[:, :, k], np.eye(3), atol=1e-13)

    def test_invalid_sizes(self):
        with pytest.raises(ValueError):
            tprod.identity_tensor(0, 3)
        with pytest.raises(ValueError):
            tprod.identity_tensor(3, 0)


class TestTSvd:
    def test_reconstruction(self):
        x = rand((5, 4, 3), seed=18)
        f = tprod.t_svd(x)
        recon = tprod.t_product(tprod.t_product(f.u, f.s), tprod.t_transpose(f.v))
        np.testing.assert_allclose(recon, x, atol=1e-10)

    def test_identity_decomposes_to_identity(self):
        eye = tprod.identity_tensor(4, 3)
        f = tprod.t_svd(eye)
        np.testing.assert_allclose(f.s, eye, atol=1e-12)

    def test_factors_unitary(self):
        x = rand((5, 4, 6), seed=19)
        f = tprod.t_svd(x)
        assert tprod.is_unitary(f.u, tol=1e-8)
        assert tprod.is_unitary(f.v, tol=1e-8)

    def test_s_is_f_diagonal_in_spectral_domain(self):
        x = rand((4, 5, 3), seed=20)
        f = tprod.t_svd(x)
        s_hat = spectral.to_spectral(f.s)
        mn = min(4, 5)
        for k in range(3):
            off = s_hat[:, :, k].copy()
            off[np.arange(mn), np.arange(mn)] = 0.0
            assert np.abs(off).max() < 1e-10

    def test_spectral_singulars_match_slice_svds(self):
        x = rand((5, 4, 6), seed=21)
        f = tprod.t_svd(x)
        ref = oracles.spectral_singulars_naive(x)
        np.testing.assert_allclose(f.spectral_singulars, ref, atol=1e-9)

    def test_spectral_singulars_sorted_nonnegative(self):
        x = rand((6, 3, 5), seed=22)
        f = tprod.t_svd(x)
        assert np.all(f.spectral_singulars >= 0)
        assert np.all(np.diff(f.spectral_singulars, axis=1) <= 1e-12)

    def test_spectral_singulars_gram_oracle(self):
        x = rand((6, 4, 4), seed=23)
        f = tprod.t_svd(x)
        s = spectral.to_spectral(x)
        for k in range(4):
            np.testing.assert_allclose(
                f.spectral_singulars[k], oracles.gram_singulars(s[:, :, k]), atol=1e-9
            )


class TestMultirank:
    def test_identity(self):
        np.testing.assert_array_equal(tprod.multirank(tprod.identity_tensor(4, 3)), [4, 4, 4])

    def test_zero(self):
        np.testing.assert_array_equal(tprod.multirank(np.zeros((3, 4, 5))), [0, 0, 0, 0, 0])

    def test_outer_product_bounded_by_factor_width(self):
        rng = np.random.default_rng(24)
        a = rng.standard_normal((6, 2, 5))
        b = rng.standard_normal((2, 6, 5))
        assert tprod.multirank(tprod.t_product(a, b)).max() <= 2

    def test_unitary_invariance(self):
        x = rand((5, 4, 3), seed=25)
        u = tprod.t_svd(rand((5, 5, 3), seed=26)).u
        np.testing.assert_array_equal(
            tprod.multirank(tprod.t_product(u, x)), tprod.multirank(x)
        )


class TestTnn:
    def test_identity_value(self):
        assert tprod.tnn(tprod.identity_tensor(4, 3)) == pytest.approx(12.0)

    def test_equals_bcirc_nuclear_norm(self):
        x = rand((4, 4, 3), seed=27)
        assert tprod.tnn(x) == pytest.approx(oracles.bcirc_nuclear(x), rel=1e-8)

    def test_homogeneous(self):
        x = rand((3, 5, 4), seed=28)
        assert tprod.tnn(2.5 * x) == pytest.approx(2.5 * tprod.tnn(x), rel=1e-10)

    def test_zero(self):
        assert tprod.tnn(np.zeros((2, 3, 4))) == 0.0

    def test_nonrectangular_matches_bcirc(self):
        x = rand((3, 6, 5), seed=29)
        assert tprod.tnn(x) == pytest.approx(oracles.bcirc_nuclear(x), rel=1e-8)


class TestIsUnitary:
    def test_identity_true(self):
        assert tprod.is_unitary(tprod.identity_tensor(3, 4))

    def test_scaled_identity_false(self):
        assert not tprod.is_unitary(2.0 * tprod.identity_tensor(3, 4), tol=1e-8)

    def test_tsvd_u_true(self):
        x = rand((5, 5, 3), seed=30)
        assert tprod.is_unitary(tprod.t_svd(x).u, tol=1e-6)

    def test_requires_square(self):
        with pytest.raises(ValueError):
            tprod.is_unitary(rand((3, 4, 2)))
