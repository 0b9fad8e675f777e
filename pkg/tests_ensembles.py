import numpy as np
import numpy.testing as npt
import pytest

import dppdisc as dd
from dppdisc import spaces
from dppdisc.errors import ValidationError


def random_points(space, n, seed):
    return spaces.sample_uniform_batch(space, n, np.random.default_rng(seed))


class TestKernels(object):

    def test_projective_count(self):
        assert dd.projective_count(1, 1) == 2
        assert dd.projective_count(2, 3) == 10
        assert dd.projective_count(5, 0) == 1

    def test_traces(self):
        assert dd.get_kernel('harmonic', 's2', 4).N == 25
        assert dd.get_kernel('projective', 'cp2', 3).N == 10
        assert dd.EnsembleKernel.projective(1, 4).N == 5
        with pytest.raises(ValidationError):
            dd.get_kernel('projective', 's2', 3)
        with pytest.raises(ValidationError):
            dd.get_kernel('ginibre', 's2', 3)

    def test_harmonic_antipodal(self):
        k = dd.get_kernel('harmonic', 's2', 1)
        npt.assert_allclose(dd.kernel_eval(k, [0, 0, 1], [0, 0, -1]), -2.)

    def test_projective_orthogonal(self):
        k = dd.EnsembleKernel.projective(2, 3)
        assert dd.kernel_eval(k, [1, 0, 0], [0, 1, 0]) == 0.

    def test_projective_diagonal(self):
        k = dd.EnsembleKernel.projective(2, 3)
        p = random_points(k.space, 1, 0)[0]
        value = dd.kernel_eval(k, p, p)
        npt.assert_allclose(abs(value), k.N, rtol=1e-12)

    @pytest.mark.parametrize('space_id,L', [('s1', 5), ('s2', 6), ('s3', 3),
                                            ('rp2', 4), ('cp1', 5), ('cp2', 2)])
    def test_harmonic_diagonal_and_bound(self, space_id, L):
        k = dd.get_kernel('harmonic', space_id, L)
        X = random_points(k.space, 50, 1)
        npt.assert_allclose(np.diag(dd.kernel_matrix(k, X, X)), k.N,
                            rtol=1e-8)
        Y = random_points(k.space, 50, 2)
        assert np.all(np.abs(dd.kernel_matrix(k, X, Y)) <= k.N * (1 + 1e-8))

    def test_hermitian(self):
        k = dd.EnsembleKernel.projective(2, 4)
        X = random_points(k.space, 10, 3)
        K = dd.kernel_matrix(k, X, X)
        npt.assert_allclose(K, np.conj(K).T, atol=1e-10)

    def test_profile_on_parameter_spaces(self):
        k = dd.get_kernel('harmonic', 'hp2', 3)
        npt.assert_allclose(k.profile(0.), k.N, rtol=1e-8)
        assert abs(k.profile(0.7)) <= k.N

    def test_space_mismatch(self):
        k = dd.get_kernel('harmonic', 's2', 2)
        p = dd.Point(dd.get_space('s3'), [1, 0, 0, 0])
        with pytest.raises(ValidationError):
            dd.kernel_eval(k, p, p)


class TestInvariance(object):

    def test_harmonic_isometry(self):
        k = dd.get_kernel('harmonic', 's2', 5)
        rng = np.random.default_rng(4)
        X = random_points(k.space, 100, 5)
        Y = random_points(k.space, 100, 6)
        base = k.paired(X, Y)
        for _ in range(10):
            g = spaces.random_isometry(k.space, rng)
            npt.assert_allclose(k.paired(g(X), g(Y)), base, atol=1e-9 * k.N)

    def test_projective_isometry_modulus(self):
        k = dd.EnsembleKernel.projective(2, 3)
        rng = np.random.default_rng(7)
        X = random_points(k.space, 100, 8)
        Y = random_points(k.space, 100, 9)
        g = spaces.random_isometry(k.space, rng)
        npt.assert_allclose(np.abs(k.paired(g(X), g(Y))),
                            np.abs(k.paired(X, Y)), atol=1e-9 * k.N)

    def test_intensities_do_not_depend_on_representatives(self):
        k = dd.EnsembleKernel.projective(1, 3)
        X = random_points(k.space, 3, 10)
        phases = np.exp(1j * np.array([0.4, 2.1, -1.3]))
        npt.assert_allclose(dd.joint_intensity(k, X * phases[:, None]),
                            dd.joint_intensity(k, X), rtol=1e-10)

    def test_trace_identity(self):
        k = dd.get_kernel('harmonic', 's2', 3)
        X = random_points(k.space, 1000, 11)
        npt.assert_allclose(np.mean(k.paired(X, X)), k.N, rtol=1e-10)


class TestIntensities(object):

    def test_rho2_coincident(self):
        k = dd.get_kernel('harmonic', 's2', 2)
        p = [0, 0, 1]
        assert dd.joint_intensity_2(k, p, p) == 0.

    def test_rho2_orthogonal_projective(self):
        k = dd.EnsembleKernel.projective(1, 2)
        npt.assert_allclose(dd.joint_intensity_2(k, [1, 0], [0, 1]), k.N ** 2)

    def test_rho2_antipodal(self):
        k = dd.get_kernel('harmonic', 's2', 1)
        npt.assert_allclose(dd.joint_intensity_2(k, [0, 0, 1], [0, 0, -1]),
                            12.)

    def test_rho2_symmetric(self):
        k = dd.get_kernel('harmonic', 's2', 4)
        X = random_points(k.space, 2, 12)
        assert dd.joint_intensity_2(k, X[0], X[1]) == \
            dd.joint_intensity_2(k, X[1], X[0])

    def test_gram(self):
        k = dd.EnsembleKernel.projective(2, 2)
        G = dd.gram(k, [dd.Point(k.space, [1, 0, 0])])
        npt.assert_array_equal(G, [[k.N]])
        G = dd.gram(k, np.array([[1, 0, 0], [0, 1, 0]], dtype=complex))
        npt.assert_allclose(G, np.diag([k.N, k.N]))

    def test_gram_psd(self):
        k = dd.get_kernel('harmonic', 's2', 2)
        G = dd.gram(k, random_points(k.space, 3, 13))
        assert np.linalg.det(G) >= 0
        npt.assert_allclose(G, G.T, atol=1e-10)

    def test_gram_too_many_points(self):
        k = dd.get_kernel('harmonic', 's2', 1)
        with pytest.raises(ValidationError):
            dd.gram(k, random_points(k.space, 5, 14))

    def test_joint_intensity(self):
        k = dd.get_kernel('harmonic', 's2', 1)
        assert dd.joint_intensity(k, random_points(k.space, 5, 15)) == 0.
        X = random_points(k.space, 2, 16)
        npt.assert_allclose(dd.joint_intensity(k, X),
                            dd.joint_intensity_2(k, X[0], X[1]), rtol=1e-10)
