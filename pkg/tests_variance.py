import json

import numpy as np
import numpy.testing as npt
import pytest
import scipy.special as sc
from scipy import integrate

import dppdisc as dd
from dppdisc import special, variance
from dppdisc.errors import DomainError, ValidationError


def north_ball(space, r):
    coords = np.zeros(space.ambient)
    coords[0] = 1.
    return dd.Ball(dd.Point(space, coords), r)


def riemann_bound(space, L, r, n=1201):
    """Nested trapezoid rule for the harmonic double integral."""
    a, b = space.alpha + 1., space.beta
    pa, pb = 2 * space.alpha + 1, 2 * space.beta + 1
    const = (special.harmonic_prefactor(space, L) * 2.
             * np.exp(sc.gammaln(space.alpha + space.beta + 2)
                      - sc.gammaln(space.alpha + 1)
                      - sc.gammaln(space.beta + 1))) ** 2
    top = space.kappa * r
    phi = np.linspace(0, top, n)
    s = np.linspace(0, 1, n)
    theta = (top - phi)[:, None] + s[None, :] * (np.pi / 2 - top + phi)[:, None]
    g = (sc.eval_jacobi(L, a, b, np.cos(2 * theta)) ** 2
         * np.sin(theta) ** pa * np.cos(theta) ** pb)
    inner = integrate.trapezoid(g, s, axis=1) * (np.pi / 2 - top + phi)
    outer = np.sin(phi) ** pa * np.cos(phi) ** pb * inner
    return const * integrate.trapezoid(outer, phi)


class TestCountStats(object):

    def test_constant_counts(self):
        assert variance.count_stats([3, 3, 3]) == (3., 0., 0.)

    def test_values(self):
        counts = np.random.default_rng(0).poisson(4., 5000)
        mean, var, se = variance.count_stats(counts)
        npt.assert_allclose(var, np.var(counts, ddof=1))
        npt.assert_allclose(se, var * np.sqrt(2. / 4999), rtol=0.3)

    def test_too_few(self):
        with pytest.raises(ValidationError):
            variance.count_stats([1])

    def test_binomial(self):
        npt.assert_allclose(dd.variance.binomial_variance(25, 0.25), 4.6875)


class TestEmpirical(object):

    def test_full_ball(self):
        k = dd.get_kernel('harmonic', 's2', 2)
        mean, var, se = dd.variance_empirical(k, north_ball(k.space, np.pi),
                                              10, 1)
        assert (mean, var) == (9., 0.)

    def test_empty_ball(self):
        k = dd.get_kernel('harmonic', 's2', 2)
        mean, var, se = dd.variance_empirical(k, north_ball(k.space, 0.), 10, 1)
        assert (mean, var) == (0., 0.)

    def test_reuses_samples(self):
        k = dd.get_kernel('harmonic', 's2', 1)
        samples = dd.sample_replicates(k, 20, 2)
        ball = north_ball(k.space, 1.)
        a = dd.variance_empirical(k, ball, 20, 2, samples=samples)
        b = dd.variance_empirical(k, ball, 20, 2)
        assert a == b

    def test_space_mismatch(self):
        k = dd.get_kernel('harmonic', 's2', 1)
        with pytest.raises(ValidationError):
            dd.variance_empirical(k, north_ball(dd.get_space('s3'), 1.), 10, 1)


class TestExactMC(object):

    def test_single_point_process(self):
        k = dd.get_kernel('harmonic', 's2', 0)
        ball = north_ball(k.space, 1.)
        estimate, se = dd.variance_exact_mc(k, ball, 1000, 3)
        vol = ball.volume
        npt.assert_allclose(estimate, vol * (1 - vol), rtol=1e-12)
        assert se == 0.

    def test_degenerate_ball(self):
        k = dd.get_kernel('harmonic', 's2', 2)
        with pytest.raises(DomainError):
            dd.variance_exact_mc(k, north_ball(k.space, np.pi), 100, 4)
        with pytest.raises(DomainError):
            dd.variance_exact_mc(k, north_ball(k.space, 0.), 100, 4)

    def test_near_full_ball(self):
        k = dd.get_kernel('harmonic', 's2', 2)
        ball = north_ball(k.space, np.pi - 0.2)
        estimate, se = dd.variance_exact_mc(k, ball, 2000, 5)
        vol = ball.volume
        assert 0 < estimate <= vol * (1 - vol) * k.N ** 2

    def test_below_binomial_for_large_level(self):
        ball = north_ball(dd.get_space('cp1'), np.pi / 4)
        ratios = []
        for L in (2, 8, 32):
            k = dd.EnsembleKernel.projective(1, L)
            estimate, _ = dd.variance_exact_mc(k, ball, 20000, 6)
            ratios.append(estimate / dd.variance.binomial_variance(
                k.N, ball.volume))
        assert ratios[0] > ratios[1] > ratios[2]

    def test_deterministic(self):
        k = dd.get_kernel('harmonic', 's2', 3)
        ball = north_ball(k.space, 1.)
        assert dd.variance_exact_mc(k, ball, 500, 7) == \
            dd.variance_exact_mc(k, ball, 500, 7)


class TestHarmonicBound(object):

    def test_against_riemann_sum(self):
        s2 = dd.get_space('s2')
        bound = dd.variance_bound_harmonic(s2, 1, np.pi / 3)
        npt.assert_allclose(bound, riemann_bound(s2, 1, np.pi / 3), rtol=1e-4)

    @pytest.mark.parametrize('space_id,L,r', [('s2', 4, 1.), ('s3', 3, 2.),
                                              ('rp2', 3, 0.7), ('cp2', 2, 0.5),
                                              ('hp1', 2, 0.9), ('op2', 1, 0.6)])
    def test_reduced_matches_nested(self, space_id, L, r):
        space = dd.get_space(space_id)
        nested = dd.variance_bound_harmonic(space, L, r)
        reduced = dd.variance_bound_harmonic(space, L, r, method='reduced')
        npt.assert_allclose(reduced, nested, rtol=1e-6)

    def test_domain(self):
        s2 = dd.get_space('s2')
        with pytest.raises(DomainError):
            dd.variance_bound_harmonic(s2, 2, 0.)
        with pytest.raises(DomainError):
            dd.variance_bound_harmonic(s2, 2, np.pi)
        with pytest.raises(ValidationError):
            dd.variance_bound_harmonic(s2, 2, 1., method='simpson')

    def test_dispatch(self):
        k = dd.get_kernel('harmonic', 's2', 2)
        assert dd.variance_bound(k, 0.) == 0.
        assert dd.variance_bound(k, np.pi) is None
        npt.assert_allclose(dd.variance_bound(k, 1.),
                            dd.variance_bound_harmonic(k.space, 2, 1.))

    @pytest.mark.parametrize('L', [1, 2, 4])
    def test_dominates_exact_mc(self, L):
        k = dd.get_kernel('harmonic', 's2', L)
        ball = north_ball(k.space, np.pi / 3)
        estimate, se = dd.variance_exact_mc(k, ball, 20000, 8)
        assert dd.variance_bound(k, ball.radius) >= estimate - 3 * se

    @pytest.mark.parametrize('space_id,L', [('rp2', 2), ('cp2', 1),
                                            ('s3', 2), ('s1', 3)])
    def test_dominates_exact_mc_across_spaces(self, space_id, L):
        k = dd.get_kernel('harmonic', space_id, L)
        ball = north_ball(k.space, k.space.diameter / 2)
        estimate, se = dd.variance_exact_mc(k, ball, 20000, 10 + L)
        assert dd.variance_bound(k, ball.radius) >= estimate - 3 * se

    @pytest.mark.slow
    @pytest.mark.parametrize('L', [1, 2, 4])
    def test_dominates_empirical(self, L):
        k = dd.get_kernel('harmonic', 's2', L)
        ball = north_ball(k.space, np.pi / 3)
        _, var, se = dd.variance_empirical(k, ball, 1000, 9)
        assert dd.variance_bound(k, ball.radius) >= var - 3 * se


class TestRegions(object):

    def test_additivity(self):
        s2 = dd.get_space('s2')
        parts = dd.region_integrals(s2, 16, np.pi / 3)
        assert parts.divided
        npt.assert_allclose(parts.R1 + parts.R2 + parts.R3 + parts.R4,
                            parts.total, rtol=1e-6)

    def test_invalid_split(self):
        s2 = dd.get_space('s2')
        parts = dd.region_integrals(s2, 1, np.pi / 3)
        assert not parts.divided
        assert parts.R1 is None and parts.total > 0

    @pytest.mark.slow
    def test_rates(self):
        s2 = dd.get_space('s2')
        levels = np.array([8, 16, 32, 64])
        parts = [dd.region_integrals(s2, int(L), np.pi / 3) for L in levels]
        scaled = dict(
            R1=[p.R1 for p in parts] * levels ** 2,
            R2=[p.R2 for p in parts] * levels / np.log(levels),
            R3=[p.R3 for p in parts] * levels,
            R4=[p.R4 for p in parts] * levels)
        for name, values in scaled.items():
            assert np.max(values) / np.min(values) <= 10, name
        for p in parts:
            npt.assert_allclose(p.R1 + p.R2 + p.R3 + p.R4, p.total, rtol=1e-6)


class TestProjectiveBound(object):

    def test_rate(self):
        levels = np.array([4, 16, 64, 256])
        bounds = np.array([dd.variance_bound_projective(1, int(L), np.pi / 4)
                           for L in levels])
        scaled = bounds / np.sqrt(levels)
        assert np.max(scaled) / np.min(scaled) <= 10

    def test_dominates_exact_mc(self):
        k = dd.EnsembleKernel.projective(1, 4)
        ball = north_ball(k.space, np.pi / 4)
        estimate, se = dd.variance_exact_mc(k, ball, 20000, 10)
        assert dd.variance_bound_projective(1, 4, np.pi / 4) >= \
            estimate - 3 * se

    def test_small_radius(self):
        assert 0 <= dd.variance_bound_projective(2, 3, 1e-3) < 1e-3

    @pytest.mark.parametrize('d,L,r', [(1, 4, 0.5), (1, 16, 1.2), (2, 8, 0.9),
                                       (3, 5, 0.3)])
    def test_gaussian_relaxation_dominates(self, d, L, r):
        assert dd.variance_bound_projective_gaussian(d, L, r) >= \
            dd.variance_bound_projective(d, L, r)

    def test_domain(self):
        with pytest.raises(DomainError):
            dd.variance_bound_projective(1, 4, np.pi / 2)
        with pytest.raises(ValidationError):
            dd.variance_bound_projective(0, 4, 0.5)


class TestReport(object):

    def test_report(self):
        k = dd.get_kernel('harmonic', 's2', 2)
        report = dd.variance_report(k, north_ball(k.space, np.pi / 3), 50,
                                    2000, 11)
        out = json.loads(json.dumps(report.to_dict()))
        assert out['kernel']['N'] == 9
        assert out['empirical']['reps'] == 50
        assert out['exact_mc']['pairs'] == 2000
        # 1/L < pi/6 < pi/2 - 1/L at L = 2
        assert out['region_integrals']['divided'] is True
        npt.assert_allclose(out['binomial'], 9 * 0.25 * 0.75)

    def test_report_streams(self):
        k = dd.get_kernel('harmonic', 's2', 1)
        ball = north_ball(k.space, 1.)
        report = dd.variance_report(k, ball, 30, 500, 12, regions=False)
        samples = dd.sample_replicates(k, 30, 12, index=(0,))
        assert report.empirical['variance'] == \
            dd.variance_empirical(k, ball, 30, 12, samples=samples)[1]
        assert report.exact_mc['estimate'] == dd.variance_exact_mc(
            k, ball, 500, dd.utils.substream(12, 1))[0]
        assert report.region_integrals is None


@pytest.mark.slow
class TestAgreement(object):

    CONFIGS = [('harmonic', 's2', 2, np.pi / 6), ('harmonic', 's2', 2, np.pi / 3),
               ('harmonic', 's2', 4, np.pi / 6), ('harmonic', 's2', 4, np.pi / 3),
               ('projective', 'cp1', 4, np.pi / 6),
               ('projective', 'cp1', 8, np.pi / 3)]

    @pytest.mark.parametrize('ensemble,space_id,L,r', CONFIGS)
    def test_empirical_matches_exact_mc(self, ensemble, space_id, L, r):
        k = dd.get_kernel(ensemble, space_id, L)
        ball = north_ball(k.space, r)
        _, var, se = dd.variance_empirical(k, ball, 2000, 100 + L)
        estimate, mc_se = dd.variance_exact_mc(k, ball, 40000, 200 + L)
        assert abs(var - estimate) <= 3 * np.hypot(se, mc_se)
        # repulsion
        assert var < dd.variance.binomial_variance(k.N, ball.volume) + 3 * se
