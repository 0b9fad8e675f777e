import json

import numpy as np
import numpy.testing as npt
import pytest
from scipy import stats

import dppdisc as dd
from dppdisc import sampler, spaces, utils, variance
from dppdisc.errors import (SamplerBudgetError, UnsupportedSpaceError,
                            ValidationError)


def north(space):
    coords = np.zeros(space.ambient)
    coords[0] = 1.
    return dd.Point(space, coords)


class TestSampleDpp(object):

    @pytest.mark.parametrize('ensemble,space_id,L', [
        ('harmonic', 's1', 4), ('harmonic', 's2', 3), ('harmonic', 'rp2', 2),
        ('harmonic', 'cp1', 2), ('projective', 'cp1', 5),
        ('projective', 'cp2', 2)])
    def test_cardinality_and_simple(self, ensemble, space_id, L):
        k = dd.get_kernel(ensemble, space_id, L)
        s = dd.sample_dpp(k, 5)
        assert len(s) == k.N
        D = spaces.pairwise_distances(k.space, s.coords, s.coords)
        assert np.all(D[~np.eye(k.N, dtype=bool)] > 0)
        assert s.stats['proposals'] >= k.N

    def test_deterministic(self):
        k = dd.get_kernel('harmonic', 's2', 4)
        a = dd.sample_dpp(k, 123)
        b = dd.sample_dpp(k, 123)
        assert a == b
        npt.assert_array_equal(a.coords, b.coords)
        assert a != dd.sample_dpp(k, 124)

    def test_single_point_is_uniform(self):
        k = dd.get_kernel('harmonic', 's2', 0)
        s2 = k.space
        ball = dd.Ball(north(s2), np.pi / 3)
        hits = [dd.count_in_ball(s, ball)
                for s in dd.sample_replicates(k, 4000, 3)]
        assert abs(np.mean(hits) - 0.25) <= 3 * np.sqrt(0.25 * 0.75 / 4000)

    def test_budget(self):
        k = dd.get_kernel('harmonic', 's2', 6)
        with pytest.raises(SamplerBudgetError) as err:
            dd.sample_dpp(k, 1, proposal_batch=1, max_proposals=1)
        assert err.value.diagnostics['proposals'] == 1

    def test_unsupported(self):
        k = dd.get_kernel('harmonic', 'hp1', 2)
        with pytest.raises(UnsupportedSpaceError):
            dd.sample_dpp(k, 0)

    def test_batch_size_changes_stream_not_law(self):
        k = dd.get_kernel('harmonic', 's2', 1)
        ball = dd.Ball(north(k.space), np.pi / 2)
        for batch in (1, 256):
            counts = [dd.count_in_ball(dd.sample_dpp(
                k, utils.substream(9, batch, i), proposal_batch=batch), ball)
                for i in range(400)]
            assert abs(np.mean(counts) - 2.) <= 4 * np.sqrt(1. / 400)


class TestConditionalDensity(object):

    def test_empty(self):
        k = dd.get_kernel('harmonic', 's2', 3)
        assert sampler.conditional_density(k, [], None, [0, 0, 1]) == k.N

    def test_drawn_point(self):
        k = dd.get_kernel('harmonic', 's2', 3)
        p = dd.sample_uniform(k.space, 1)
        value = sampler.conditional_density(k, [p], None, p)
        assert abs(value) <= 1e-8 * k.N

    def test_orthogonal(self):
        k = dd.EnsembleKernel.projective(1, 1)
        value = sampler.conditional_density(k, [dd.Point(k.space, [1, 0])],
                                            None, [0, 1])
        npt.assert_allclose(value, 2.)

    def test_range(self):
        k = dd.get_kernel('harmonic', 's2', 2)
        s = dd.sample_dpp(k, 2)
        X = spaces.sample_uniform_batch(k.space, 20, 3)
        factor = np.linalg.cholesky(dd.gram(k, s.coords[:4]))
        for x in X:
            value = sampler.conditional_density(k, s.coords[:4], factor, x)
            assert 0. <= value <= k.N


class TestSampleSet(object):

    def test_json_payload(self):
        k = dd.EnsembleKernel.projective(1, 3)
        s = dd.sample_replicates(k, 2, 8)[1]
        payload = json.loads(json.dumps(s.to_dict()))
        back = dd.SampleSet.from_dict(payload)
        assert back == s
        assert back.stream == (1,)
        assert payload['kernel'] == dict(ensemble='projective', space='cp1',
                                         L=3, N=4)

    def test_length_mismatch(self):
        s2 = dd.get_space('s2')
        with pytest.raises(ValidationError):
            dd.SampleSet(s2, [[0, 0, 1]], dict(ensemble='harmonic', N=4))

    def test_iid(self):
        s = dd.sample_iid('s2', 10, 4)
        assert len(s) == 10
        assert s.kernel['ensemble'] == 'iid'
        assert s.seed == 4


class TestReplicates(object):

    def test_stream_of_replicate(self):
        k = dd.get_kernel('harmonic', 's2', 2)
        reps = dd.sample_replicates(k, 3, 21, workers=1)
        alone = sampler.sample_dpp(k, utils.substream(21, 2), seed=21,
                                   stream=(2,))
        assert reps[2] == alone

    def test_prefix_does_not_change_other_replicates(self):
        k = dd.get_kernel('harmonic', 's2', 2)
        short = dd.sample_replicates(k, 2, 5, workers=1)
        long = dd.sample_replicates(k, 5, 5, workers=1)
        assert short == long[:2]

    def test_worker_count_independent(self):
        k = dd.get_kernel('harmonic', 's2', 2)
        one = dd.sample_replicates(k, 6, 17, workers=1)
        two = dd.sample_replicates(k, 6, 17, workers=2)
        assert one == two


@pytest.mark.slow
class TestLaw(object):

    def test_mean_count_small(self):
        k = dd.get_kernel('harmonic', 's2', 1)
        ball = dd.Ball(north(k.space), np.pi / 2)
        counts = [dd.count_in_ball(s, ball)
                  for s in dd.sample_replicates(k, 2000, 31)]
        npt.assert_allclose(np.mean(counts), 2.,
                            atol=3 * np.std(counts, ddof=1) / np.sqrt(2000))

    def test_mean_count_law(self):
        k = dd.get_kernel('harmonic', 's2', 4)
        ball = dd.Ball(north(k.space), np.pi / 3)
        counts = [dd.count_in_ball(s, ball)
                  for s in dd.sample_replicates(k, 4000, 32)]
        se = np.std(counts, ddof=1) / np.sqrt(4000)
        assert abs(np.mean(counts) - 6.25) <= 3 * se

    def test_mean_counts_over_balls(self):
        k = dd.get_kernel('harmonic', 's2', 3)
        samples = dd.sample_replicates(k, 2000, 33)
        centers = spaces.sample_uniform_batch(k.space, 3, 34)
        for c in centers:
            for r in (0.3, 0.8, 1.3, 1.9, 2.6):
                ball = dd.Ball(dd.Point(k.space, c), r)
                counts = np.array([dd.count_in_ball(s, ball) for s in samples])
                se = max(np.std(counts, ddof=1), 1e-3) / np.sqrt(len(counts))
                # 15 balls on one set of replicates: 3.5 s.e. per ball keeps
                # the family-wise false alarm rate under 1%
                assert abs(counts.mean() - k.N * ball.volume) <= 3.5 * se

    @pytest.mark.parametrize('space_id,L', [('rp2', 2), ('cp2', 1)])
    def test_mean_count_projective_spaces(self, space_id, L):
        k = dd.get_kernel('harmonic', space_id, L)
        ball = dd.Ball(north(k.space), k.space.diameter / 2)
        counts = [dd.count_in_ball(s, ball)
                  for s in dd.sample_replicates(k, 2000, 40 + L)]
        se = np.std(counts, ddof=1) / np.sqrt(2000)
        assert abs(np.mean(counts) - k.N * ball.volume) <= 3 * se

    def test_first_point_uniform(self):
        k = dd.get_kernel('harmonic', 's2', 2)
        first = np.array([dd.sample_dpp(k, utils.substream(35, i)).coords[0]
                          for i in range(10000)])
        # 8 equal-area cells: octant of the point
        cells = ((first[:, 0] > 0).astype(int) * 4
                 + (first[:, 1] > 0).astype(int) * 2
                 + (first[:, 2] > 0).astype(int))
        observed = np.bincount(cells, minlength=8)
        assert stats.chisquare(observed).pvalue > 0.001

    def test_repulsion(self):
        k = dd.EnsembleKernel.projective(1, 4)
        ball = dd.Ball(north(k.space), np.pi / 4)
        counts = [dd.count_in_ball(s, ball)
                  for s in dd.sample_replicates(k, 2000, 36)]
        mean, var, se = variance.count_stats(counts)
        assert var < variance.binomial_variance(k.N, ball.volume) + 3 * se
