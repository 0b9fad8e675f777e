import numpy as np
import numpy.testing as npt
import pytest
from scipy import integrate

import dppdisc as dd
from dppdisc import spaces
from dppdisc.errors import DomainError, UnsupportedSpaceError, ValidationError


ALL_IDS = ['s1', 's2', 's3', 'rp2', 'rp3', 'cp1', 'cp2', 'hp1', 'hp2', 'op2']
SAMPLING_IDS = ['s1', 's2', 's3', 'rp2', 'cp1', 'cp2']


class TestTable(object):

    @pytest.mark.parametrize('space_id', ALL_IDS)
    def test_real_dimension(self, space_id):
        space = dd.get_space(space_id)
        assert space.dim_real == 2 * space.alpha + 2
        npt.assert_allclose(space.diameter, np.pi / (2 * space.kappa))

    def test_rows(self):
        s2 = dd.get_space('s2')
        assert (s2.alpha, s2.beta, s2.kappa, s2.dim_real) == (0., 0., .5, 2)
        cp2 = dd.get_space('cp2')
        assert (cp2.alpha, cp2.beta, cp2.kappa, cp2.dim_real) == (1., 0., 1., 4)
        rp3 = dd.get_space('rp3')
        assert (rp3.alpha, rp3.beta, rp3.dim_real) == (.5, -.5, 3)
        hp2 = dd.get_space('hp2')
        assert (hp2.alpha, hp2.beta, hp2.dim_real) == (3., 1., 8)
        op2 = dd.get_space('op2')
        assert (op2.alpha, op2.beta, op2.dim_real) == (7., 3., 16)

    def test_bad_ids(self):
        with pytest.raises(ValidationError):
            dd.get_space('t2')
        with pytest.raises(ValidationError):
            dd.get_space('op3')
        with pytest.raises(ValidationError):
            dd.get_space('s0')
        with pytest.raises(TypeError):
            dd.get_space(2)

    def test_get_spaces(self):
        ids = dd.get_spaces(2)
        assert 'op2' in ids and 's1' in ids and 'cp2' in ids
        assert all(dd.get_space(i).id == i for i in ids)


class TestDistance(object):

    def test_antipodal(self):
        s2 = dd.get_space('s2')
        npt.assert_allclose(dd.distance(s2, [0, 0, 1], [0, 0, -1]), np.pi)

    def test_identity(self):
        s2 = dd.get_space('s2')
        p = [0.6, 0., 0.8]
        assert dd.distance(s2, p, p) == 0.

    def test_orthogonal_cp1(self):
        cp1 = dd.get_space('cp1')
        npt.assert_allclose(dd.distance(cp1, [1, 0], [0, 1j]), np.pi / 2)

    def test_cp2_quarter(self):
        cp2 = dd.get_space('cp2')
        v = np.array([1, 1, 0]) / np.sqrt(2)
        npt.assert_allclose(dd.distance(cp2, [1, 0, 0], v), np.pi / 4)

    def test_non_unit(self):
        s2 = dd.get_space('s2')
        with pytest.raises(ValidationError):
            dd.distance(s2, [0, 0, 2], [0, 0, 1])

    def test_renormalised(self):
        s2 = dd.get_space('s2')
        p = np.array([0, 0, 1 + 1e-10])
        assert dd.distance(s2, p, [0, 0, 1]) == 0.

    @pytest.mark.parametrize('space_id', SAMPLING_IDS)
    def test_symmetry_and_triangle(self, space_id):
        space = dd.get_space(space_id)
        rng = np.random.default_rng(0)
        X, Y, Z = (spaces.sample_uniform_batch(space, 1000, rng)
                   for _ in range(3))
        dxy = spaces.paired_distances(space, X, Y)
        dyx = spaces.paired_distances(space, Y, X)
        assert np.array_equal(dxy, dyx)
        dyz = spaces.paired_distances(space, Y, Z)
        dxz = spaces.paired_distances(space, X, Z)
        assert np.all(dxz <= dxy + dyz + 1e-10)
        assert np.all((dxy >= 0) & (dxy <= space.diameter))

    @pytest.mark.parametrize('space_id', ['rp2', 'cp1', 'cp2'])
    def test_gauge_invariance(self, space_id):
        space = dd.get_space(space_id)
        rng = np.random.default_rng(1)
        X = spaces.sample_uniform_batch(space, 1000, rng)
        Y = spaces.sample_uniform_batch(space, 1000, rng)
        if space.field == 'complex':
            phase = np.exp(1j * rng.uniform(0, 2 * np.pi, 1000))
        else:
            phase = rng.choice([-1., 1.], 1000)
        npt.assert_allclose(spaces.paired_distances(space, X, Y * phase[:, None]),
                            spaces.paired_distances(space, X, Y), atol=1e-12)

    def test_pairwise_matches_paired(self):
        space = dd.get_space('cp2')
        rng = np.random.default_rng(2)
        X = spaces.sample_uniform_batch(space, 20, rng)
        Y = spaces.sample_uniform_batch(space, 30, rng)
        D = spaces.pairwise_distances(space, X, Y)
        npt.assert_allclose(D[3], spaces.paired_distances(
            space, np.repeat(X[3:4], 30, axis=0), Y), atol=1e-14)

    def test_projective_point_equality(self):
        cp1 = dd.get_space('cp1')
        p = dd.Point(cp1, [0.6, 0.8j])
        q = dd.Point(cp1, np.exp(0.3j) * np.array([0.6, 0.8j]))
        assert p == q
        assert p.gauge == 'projective'


class TestMeasure(object):

    def test_s2_density(self):
        s2 = dd.get_space('s2')
        npt.assert_allclose(dd.radial_density(s2, np.pi / 2), 0.5)

    @pytest.mark.parametrize('space_id', ALL_IDS)
    def test_density_zero_at_origin(self, space_id):
        space = dd.get_space(space_id)
        assert dd.radial_density(space, 0.) == 0. or space.alpha == -0.5

    @pytest.mark.parametrize('space_id', ALL_IDS)
    def test_density_integrates_to_one(self, space_id):
        space = dd.get_space(space_id)
        value, _ = integrate.quad(lambda t: dd.radial_density(space, t), 0.,
                                  space.diameter, epsabs=1e-12, limit=200)
        npt.assert_allclose(value, 1., rtol=1e-9)

    def test_closed_forms(self):
        s2 = dd.get_space('s2')
        r = np.linspace(0, np.pi, 11)
        npt.assert_allclose(dd.ball_volume(s2, r), (1 - np.cos(r)) / 2,
                            atol=1e-14)
        npt.assert_allclose(dd.ball_volume(s2, np.pi / 2), 0.5)
        npt.assert_allclose(dd.ball_volume(dd.get_space('cp2'), np.pi / 4), 0.25)

    @pytest.mark.parametrize('space_id', ALL_IDS)
    def test_volume_matches_density(self, space_id):
        space = dd.get_space(space_id)
        assert dd.ball_volume(space, 0.) == 0.
        assert dd.ball_volume(space, space.diameter) == 1.
        radii = np.linspace(0, space.diameter, 50)
        vols = dd.ball_volume(space, radii)
        assert np.all(np.diff(vols) >= 0)
        for r, v in zip(radii[1:-1:7], vols[1:-1:7]):
            ref, _ = integrate.quad(lambda t: dd.radial_density(space, t), 0.,
                                    r, epsabs=1e-13, epsrel=1e-12, limit=200)
            npt.assert_allclose(v, ref, atol=1e-9)

    def test_out_of_range(self):
        s2 = dd.get_space('s2')
        with pytest.raises(DomainError):
            dd.ball_volume(s2, 4.)
        with pytest.raises(DomainError):
            dd.radial_density(s2, -0.1)

    def test_ahlfors(self):
        c1, c2 = spaces.ahlfors_constants(dd.get_space('s2'))
        assert 0 < c1 <= c2
        npt.assert_allclose(c2, 0.25, rtol=1e-3)


class TestSampling(object):

    def test_s2_cap_frequency(self):
        s2 = dd.get_space('s2')
        X = spaces.sample_uniform_batch(s2, 100000, 7)
        ball = dd.Ball(dd.Point(s2, [0, 0, 1]), np.pi / 3)
        freq = np.mean(ball.contains(X))
        assert abs(freq - 0.25) <= 3 * np.sqrt(0.25 * 0.75 / 1e5)

    def test_cp1_ball_frequency(self):
        cp1 = dd.get_space('cp1')
        X = spaces.sample_uniform_batch(cp1, 100000, 8)
        ball = dd.Ball(dd.Point(cp1, [1, 0]), np.pi / 4)
        freq = np.mean(ball.contains(X))
        assert abs(freq - 0.5) <= 3 * np.sqrt(0.25 / 1e5)

    def test_deterministic(self):
        s2 = dd.get_space('s2')
        assert dd.sample_uniform(s2, 11) == dd.sample_uniform(s2, 11)
        npt.assert_array_equal(dd.sample_uniform(s2, 11).coords,
                               dd.sample_uniform(s2, 11).coords)

    @pytest.mark.parametrize('space_id', ['hp1', 'op2'])
    def test_unsupported(self, space_id):
        with pytest.raises(UnsupportedSpaceError):
            dd.sample_uniform(dd.get_space(space_id), 0)

    def test_isometry_preserves_distance(self):
        space = dd.get_space('cp2')
        rng = np.random.default_rng(3)
        g = spaces.random_isometry(space, rng)
        X = spaces.sample_uniform_batch(space, 100, rng)
        Y = spaces.sample_uniform_batch(space, 100, rng)
        npt.assert_allclose(spaces.paired_distances(space, g(X), g(Y)),
                            spaces.paired_distances(space, X, Y), atol=1e-10)

    @pytest.mark.parametrize('space_id', ['s2', 'rp2', 'cp2'])
    def test_chord_is_monotone_in_distance(self, space_id):
        space = dd.get_space(space_id)
        rng = np.random.default_rng(4)
        X = spaces.sample_uniform_batch(space, 200, rng)
        Y = spaces.sample_uniform_batch(space, 200, rng)
        chord = np.linalg.norm(spaces.embed(space, X) - spaces.embed(space, Y),
                               axis=1)
        npt.assert_allclose(chord, spaces.chord_of(
            space, spaces.paired_distances(space, X, Y)), atol=1e-10)
