import math

import numpy as np
import numpy.testing as npt
import pytest

import dppdisc as dd
from dppdisc import tails
from dppdisc.errors import DomainError, ValidationError
from dppdisc.valid import TAIL_COLUMNS


def north_ball(space, r):
    coords = np.zeros(space.ambient)
    coords[0] = 1.
    return dd.Ball(dd.Point(space, coords), r)


class TestBernstein(object):

    def test_values(self):
        npt.assert_allclose(dd.bernstein_tail(4., 8.), 2 * math.exp(-2))
        assert dd.bernstein_tail(4., 0.) == 1.
        assert dd.bernstein_tail(0., 0.) == 1.
        npt.assert_allclose(dd.bernstein_tail(100., 20.), 2 * math.exp(-1))

    def test_continuous_at_switch(self):
        v = 40.
        npt.assert_allclose(dd.bernstein_tail(v, v - 1e-9),
                            dd.bernstein_tail(v, v), rtol=1e-9)

    def test_monotone(self):
        values = [dd.bernstein_tail(25., t) for t in np.linspace(0, 100, 201)]
        assert np.all(np.diff(values) <= 0)
        assert values[-1] > 0

    def test_domain(self):
        with pytest.raises(DomainError):
            dd.bernstein_tail(-1., 2.)
        with pytest.raises(DomainError):
            dd.bernstein_tail(1., -2.)
        with pytest.raises(TypeError):
            dd.bernstein_tail('1', 2.)


class TestThreshold(object):

    def test_small_variance_branch(self):
        q = 4 * math.log(100) + math.log(12)
        npt.assert_allclose(dd.maintool_threshold(100, 1, 3, 0.), 4 * q)

    def test_large_variance_branch(self):
        q = 4 * math.log(100) + math.log(12)
        npt.assert_allclose(dd.maintool_threshold(100, 1, 3, 1e6),
                            2000 * math.sqrt(q))

    def test_square_root_scaling(self):
        t1 = dd.maintool_threshold(50, 2, 4, 1e5)
        t2 = dd.maintool_threshold(50, 2, 4, 2e5)
        npt.assert_allclose(t2 / t1, math.sqrt(2))

    @pytest.mark.parametrize('var_sup', [0., 10., 1e3, 1e6])
    def test_union_bound(self, var_sup):
        N, M, c = 200, 1.5, 3.
        t = dd.maintool_threshold(N, M, c, var_sup)
        total = 2 * N ** c * dd.bernstein_tail(var_sup, t)
        assert total <= N ** -M * (1 + 1e-9)

    def test_domain(self):
        with pytest.raises(DomainError):
            dd.maintool_threshold(100, 0, 3, 1.)
        with pytest.raises(DomainError):
            dd.maintool_threshold(100, 1, 0.5, 1.)
        with pytest.raises(DomainError):
            dd.maintool_threshold(100, 1, 3, -1.)
        with pytest.raises(ValidationError):
            dd.maintool_threshold(1, 1, 3, 1.)

    def test_certificate(self):
        t = dd.maintool_threshold(100, 1, 3, 50.)
        npt.assert_allclose(dd.discrepancy_certificate(100, 1, 3, 50., 2.5),
                            t + 2.5)
        with pytest.raises(DomainError):
            dd.discrepancy_certificate(100, 1, 3, 50., -1.)

    def test_input_tuple(self):
        args = dd.TailBoundInput(9., 6., 100, 1., 3.)
        assert args.bound() == dd.bernstein_tail(9., 6.)
        assert args.threshold() == dd.maintool_threshold(100, 1., 3., 9.)
        assert isinstance(args.variance, float)
        with pytest.raises(DomainError):
            dd.TailBoundInput(9., 6., 100, 1., 0.)


class TestNetExponent(object):

    def test_floor(self):
        s2 = dd.get_space('s2')
        assert dd.net_exponent(s2, {}) == 3.
        assert dd.net_exponent(s2, {1: 500}) == 3.

    def test_from_sizes(self):
        s2 = dd.get_space('s2')
        npt.assert_allclose(dd.net_exponent(s2, {2: 8, 4: 10 ** 4}),
                            math.log(10 ** 4) / math.log(4))

    def test_from_net(self):
        s2 = dd.get_space('s2')
        net = dd.build_net(s2, 2, 3)
        assert dd.net_exponent(s2, {2: net.size}) >= 3.

    def test_types(self):
        with pytest.raises(TypeError):
            dd.net_exponent('s2', {})
        with pytest.raises(TypeError):
            dd.net_exponent(dd.get_space('s2'), [(2, 8)])


class TestEmpirical(object):

    def test_frame(self):
        k = dd.get_kernel('harmonic', 's2', 1)
        samples = dd.sample_replicates(k, 30, 4)
        frame = dd.empirical_tail_check(k, north_ball(k.space, 1.), 30,
                                        [0., 1., 5.], 4, samples=samples)
        assert tuple(frame.columns) == TAIL_COLUMNS
        assert frame['freq'].iloc[0] == 1.
        assert frame['freq'].iloc[-1] == 0.
        assert frame['freq_se'].iloc[0] == 0.
        assert frame['bound'].iloc[0] == 1.

    def test_validation(self):
        k = dd.get_kernel('harmonic', 's2', 1)
        ball = north_ball(k.space, 1.)
        with pytest.raises(ValidationError):
            dd.empirical_tail_check(k, ball, 100, [1.], 5)
        with pytest.raises(ValidationError):
            dd.empirical_tail_check(k, ball, 1000, [-1.], 5)

    @pytest.mark.slow
    def test_bound_holds(self):
        k = dd.get_kernel('harmonic', 's2', 4)
        ball = north_ball(k.space, np.pi / 3)
        samples = dd.sample_replicates(k, 4000, 6)
        counts = [dd.count_in_ball(s, ball) for s in samples]
        sd = math.sqrt(dd.count_stats(counts)[1])
        grid = list(sd * np.arange(10) / 2.) + [k.N + 1.]
        frame = tails.empirical_tail_check(k, ball, 4000, grid, 6,
                                           samples=samples)
        assert np.all(frame['freq'] <= frame['bound'] + 3 * frame['freq_se'])
        assert frame['freq'].iloc[-1] == 0.
