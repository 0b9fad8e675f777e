import pickle

import numpy as np
import numpy.testing as npt
import pytest

import dppdisc as dd
from dppdisc import spaces
from dppdisc.errors import DomainError, ValidationError


def quarter_points():
    angles = np.arange(4) * np.pi / 2
    return np.column_stack([np.cos(angles), np.sin(angles)])


def brute_sup(space, X, center, grid=10000):
    D = spaces.pairwise_distances(space, center[None, :], X)[0]
    r = np.linspace(0, space.diameter, grid + 1)
    counts = np.array([np.count_nonzero(D < t) for t in r])
    return np.max(np.abs(counts - len(X) * dd.ball_volume(space, r)))


class TestCount(object):

    def test_empty(self):
        s2 = dd.get_space('s2')
        ball = dd.Ball(dd.Point(s2, [0, 0, 1]), 1.)
        assert dd.count_in_ball([], ball) == 0

    def test_open_ball(self):
        s2 = dd.get_space('s2')
        ball = dd.Ball(dd.Point(s2, [0, 0, 1]), 0.)
        assert dd.count_in_ball([[0, 0, 1]], ball) == 0

    def test_quarter_points(self):
        s1 = dd.get_space('s1')
        X = quarter_points()
        ball = dd.Ball(dd.Point(s1, X[0]), np.pi / 2 + 0.01)
        assert dd.count_in_ball(X, ball) == 3
        assert dd.count_in_ball([dd.Point(s1, x) for x in X], ball) == 3

    def test_monotone(self):
        s2 = dd.get_space('s2')
        X = spaces.sample_uniform_batch(s2, 200, 1)
        center = dd.Point(s2, X[0])
        counts = [dd.count_in_ball(X, dd.Ball(center, r))
                  for r in np.linspace(0, np.pi, 60)]
        assert np.all(np.diff(counts) >= 0)

    def test_sample_set(self):
        k = dd.get_kernel('harmonic', 's2', 2)
        s = dd.sample_dpp(k, 3)
        ball = dd.Ball(dd.Point(k.space, [0, 0, 1]), np.pi)
        assert dd.count_in_ball(s, ball) == k.N


class TestNet(object):

    def test_single_center(self):
        s2 = dd.get_space('s2')
        net = dd.build_net(s2, 1, 0, eps=4., patience_floor=200)
        assert len(net) == 1

    def test_circle_quarter(self):
        s1 = dd.get_space('s1')
        net = dd.build_net(s1, 1, 2, eps=np.pi / 2)
        assert len(net) in (3, 4)
        assert net.n is None

    def test_separation(self):
        s2 = dd.get_space('s2')
        net = dd.build_net(s2, 2, 3)
        D = spaces.pairwise_distances(s2, net.center_coords, net.center_coords)
        assert np.all(D[~np.eye(len(net), dtype=bool)] >= net.eps)
        npt.assert_allclose(net.eps, 1. / 8)
        npt.assert_allclose(net.delta, 1. / 4)
        assert net.radii[-1] >= s2.diameter + 2 * net.delta
        assert net.size == len(net) * len(net.radii) + 1
        assert not net.exhausted

    def test_deterministic(self):
        s2 = dd.get_space('s2')
        a = dd.build_net(s2, 2, 4)
        b = dd.build_net(s2, 2, 4)
        npt.assert_array_equal(a.center_coords, b.center_coords)

    def test_covering_projective(self):
        cp1 = dd.get_space('cp1')
        net = dd.build_net(cp1, 2, 5)
        queries = spaces.sample_uniform_batch(cp1, 1000, 6)
        assert dd.covering_check(net, queries) < net.eps

    def test_exhausted_budget(self):
        s2 = dd.get_space('s2')
        with pytest.warns(UserWarning):
            net = dd.build_net(s2, 4, 7, max_proposals=50, batch=10)
        assert net.exhausted
        assert net.proposals == 50

    def test_pickle(self):
        net = dd.build_net(dd.get_space('s2'), 1, 8)
        back = pickle.loads(pickle.dumps(net))
        npt.assert_array_equal(back.center_coords, net.center_coords)
        idx, _ = back.nearest(net.center_coords)
        npt.assert_array_equal(idx, np.arange(len(net)))

    def test_bad_parameter(self):
        with pytest.raises(ValidationError):
            dd.build_net(dd.get_space('s2'), 0, 1)

    def test_to_dict(self):
        net = dd.build_net(dd.get_space('s2'), 1, 9)
        out = net.to_dict(centers=True)
        assert out['centers_count'] == len(out['centers']) == len(net)
        assert out['n'] == 1 and out['seed'] == 9


@pytest.mark.slow
class TestCovering(object):

    def test_s2_n8(self):
        s2 = dd.get_space('s2')
        net = dd.build_net(s2, 8, 10)
        queries = spaces.sample_uniform_batch(s2, 1000, 11)
        assert dd.covering_check(net, queries) < 1. / 32


class TestSandwich(object):

    def test_gap_and_order(self):
        net = dd.build_net(dd.get_space('s2'), 2, 12)
        for r in np.linspace(0, np.pi, 13):
            sw = net.sandwich([0, 0, 1], r)
            assert sw.gap <= 1. / net.n + 1e-12
            if sw.inner is not None:
                assert sw.inner <= sw.outer

    def test_full_ball(self):
        net = dd.build_net(dd.get_space('s2'), 2, 13)
        sw = net.sandwich([0, 0, 1], np.pi)
        assert sw.outer >= np.pi

    def test_domain(self):
        net = dd.build_net(dd.get_space('s2'), 1, 14)
        with pytest.raises(DomainError):
            net.sandwich([0, 0, 1], 4.)

    @pytest.mark.slow
    @pytest.mark.parametrize('n', [4, 8, 16])
    def test_soundness(self, n):
        s2 = dd.get_space('s2')
        net = dd.build_net(s2, n, 15 + n)
        rng = np.random.default_rng(n)
        violations = 0
        for _ in range(100):
            x = spaces.sample_uniform_batch(s2, 1, rng)[0]
            r = rng.uniform(0, s2.diameter)
            sw = net.sandwich(x, r)
            assert sw.gap <= 1. / n + 1e-12
            queries = spaces.sample_uniform_batch(s2, 1000, rng)
            inside = dd.Ball(dd.Point(s2, x), r).contains(queries)
            violations += np.count_nonzero(sw.inner_contains(queries) & ~inside)
            violations += np.count_nonzero(inside & ~sw.outer_contains(queries))
        assert violations == 0


class TestDiscrepancy(object):

    def test_no_points(self):
        s2 = dd.get_space('s2')
        net = dd.build_net(s2, 1, 16)
        res = dd.discrepancy_sup(np.zeros((0, 3)), s2, net)
        assert res.net_sup == 0. and res.N == 0

    def test_single_point_at_center(self):
        s2 = dd.get_space('s2')
        value, radius, side = dd.per_center_sup([[0, 0, 1]], s2, [0, 0, 1])
        assert value == 1.
        assert radius == 0. and side == 'upper'

    def test_result_fields(self):
        s2 = dd.get_space('s2')
        net = dd.build_net(s2, 2, 17)
        X = spaces.sample_uniform_batch(s2, 50, 18)
        res = dd.discrepancy_sup(X, s2, net)
        assert res.certified_upper >= res.net_sup >= 0
        npt.assert_allclose(res.slack, 50 * net.ahlfors[1] * 2 * np.pi / 2)
        assert res.centers == len(net)

    def test_relabelling(self):
        s2 = dd.get_space('s2')
        net = dd.build_net(s2, 2, 19)
        X = spaces.sample_uniform_batch(s2, 80, 20)
        perm = np.random.default_rng(21).permutation(80)
        a = dd.discrepancy_sup(X, s2, net)
        b = dd.discrepancy_sup(X[perm], s2, net)
        assert a.net_sup == b.net_sup

    @pytest.mark.parametrize('space_id', ['s2', 'cp1'])
    def test_exact_per_center(self, space_id):
        space = dd.get_space(space_id)
        X = spaces.sample_uniform_batch(space, 60, 22)
        for c in spaces.sample_uniform_batch(space, 5, 23):
            value, _, _ = dd.per_center_sup(X, space, c)
            brute = brute_sup(space, X, c)
            assert brute <= value + 1e-9
            # one grid step moves N vol by at most N max(density) step
            assert value - brute <= 60 * 2 * space.diameter / 10000 + 1e-9

    def test_iid_baseline(self):
        s2 = dd.get_space('s2')
        net = dd.build_net(s2, 2, 24)
        for seed in range(5):
            s = dd.sample_iid(s2, 100, seed)
            res = dd.discrepancy_sup(s, s2, net)
            assert 0.5 * 10 <= res.net_sup <= 5 * 10

    def test_wrong_net(self):
        net = dd.build_net(dd.get_space('s2'), 1, 25)
        with pytest.raises(ValidationError):
            dd.discrepancy_sup(np.zeros((0, 3)), dd.get_space('s3'), net)

    def test_sample_on_other_space(self):
        s = dd.sample_dpp(dd.get_kernel('harmonic', 's2', 2), 4)
        rp2 = dd.get_space('rp2')
        net = dd.build_net(rp2, 1, 25)
        with pytest.raises(ValidationError):
            dd.discrepancy_sup(s, rp2, net)
        with pytest.raises(ValidationError):
            dd.count_in_ball(s, dd.Ball(dd.Point(rp2, [0, 0, 1]), 0.5))
        assert dd.discrepancy_sup(s.coords, rp2, net).N == 9

