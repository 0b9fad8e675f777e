"""Exact sampling of projection DPPs

Points are drawn one at a time by the chain rule. The k-th conditional
density against the uniform measure is the Schur complement
N - v(x)* G^-1 v(x) of the Gram matrix G of the points already drawn,
divided by N - k. Since it never exceeds K(x, x) = N, uniform proposals
accepted with probability (Schur complement) / N give an exact draw.

"""
from __future__ import absolute_import

import logging
import warnings
from concurrent.futures import ProcessPoolExecutor

import numpy as np
from scipy.linalg import solve_triangular

from . import tools
from . import utils
from .ensembles import EnsembleKernel, gram
from .errors import NumericalError, SamplerBudgetError, ValidationError
from .factory import get_space
from .spaces import (Point, check_coords, coords_from_list, coords_to_list,
                     require_points, sample_uniform_batch)


logger = logging.getLogger(__name__)

# Residuals below DEGENERATE_RTOL * N are treated as a singular extension
DEGENERATE_RTOL = 1e-12

# Residuals outside [-RESIDUAL_RTOL N, (1 + RESIDUAL_RTOL) N] trigger a
# refactorisation of the Gram matrix
RESIDUAL_RTOL = 1e-8


class SampleSet(object):
    """One draw of a point process, with the provenance of its stream.

    Parameters
    ----------
        space : Space
        coords : ndarray
            Coordinates of the points, one row each.
        kernel : dict
            Descriptor of the process (ensemble, space, L, N).
        seed : int or None
            Master seed of the stream.
        stream : tuple of int
            Substream index under the master seed.
        stats : dict
            Rejection counters of the sampler.

    """
    def __init__(self, space, coords, kernel, seed=None, stream=(),
                 stats=None):
        coords = np.array(coords, dtype=space.dtype, copy=True)
        if coords.size == 0:
            coords = coords.reshape(0, space.ambient)
        else:
            coords = np.atleast_2d(check_coords(space, coords)).copy()
        coords.setflags(write=False)
        if 'N' in kernel and coords.shape[0] != kernel['N']:
            raise ValidationError("Invalid sample: {0} points for a process "
                                  "of {1} points.".format(coords.shape[0],
                                                          kernel['N']))
        self.space = space
        self.coords = coords
        self.kernel = dict(kernel)
        self.seed = seed
        self.stream = tuple(stream)
        self.stats = dict(stats or {})

    @property
    def points(self):
        return [Point(self.space, row) for row in self.coords]

    def __len__(self):
        return self.coords.shape[0]

    def __repr__(self):
        return 'SampleSet({0}, N={1}, seed={2}, stream={3})'.format(
            self.kernel.get('ensemble'), len(self), self.seed, self.stream)

    def __eq__(self, other):
        return (isinstance(other, SampleSet)
                and other.space == self.space
                and other.kernel == self.kernel
                and other.seed == self.seed
                and other.stream == self.stream
                and np.array_equal(other.coords, self.coords))

    def __ne__(self, other):
        return not self.__eq__(other)

    __hash__ = None

    def to_dict(self):
        """JSON payload: coordinates, kernel, seed and counters."""
        return dict(space=self.space.id,
                    kernel=self.kernel,
                    seed=self.seed,
                    stream=list(self.stream),
                    stats=self.stats,
                    points=coords_to_list(self.coords))

    @classmethod
    def from_dict(cls, data):
        """Rebuild a SampleSet from the output of to_dict."""
        if not isinstance(data, dict):
            raise TypeError("Invalid sample '{0}'. "
                            "It should be dict.".format(type(data).__name__))
        for key in ('space', 'kernel', 'points'):
            if key not in data:
                raise ValidationError("Invalid sample: missing '{0}'."
                                      .format(key))
        space = get_space(data['space'])
        coords = coords_from_list(space, data['points'])
        return cls(space, coords, data['kernel'], seed=data.get('seed'),
                   stream=data.get('stream', ()), stats=data.get('stats'))


def _residuals(N, factor, V):
    W = solve_triangular(factor, V, lower=True, check_finite=False)
    return N - np.sum(np.abs(W) ** 2, axis=0), W


def _refactor(kernel, X, k):
    G = gram(kernel, X[:k], check=False)
    try:
        return np.linalg.cholesky(G)
    except np.linalg.LinAlgError:
        raise NumericalError("Gram matrix of {0} drawn points is not "
                             "positive definite.".format(k))


def conditional_density(kernel, drawn, gram_factor, x):
    """Schur complement K(x, x) - v* G^-1 v of the drawn points at x.

    Parameters
    ----------
        kernel : EnsembleKernel
        drawn : list of Point or coordinate array
        gram_factor : ndarray or None
            Lower Cholesky factor of gram(kernel, drawn); computed if None.
        x : Point or array_like

    """
    if isinstance(x, Point):
        x = x.coords
    x = np.atleast_2d(check_coords(kernel.space, x))
    if isinstance(drawn, (list, tuple)):
        drawn = [p.coords if isinstance(p, Point) else p for p in drawn]
        drawn = (np.vstack([check_coords(kernel.space, p) for p in drawn])
                 if drawn else np.zeros((0, kernel.space.ambient)))
    else:
        drawn = np.atleast_2d(check_coords(kernel.space, drawn))
    if drawn.shape[0] == 0:
        return float(kernel.N)

    if gram_factor is None:
        gram_factor = _refactor(kernel, drawn, drawn.shape[0])
    value = float(_residuals(kernel.N, gram_factor,
                             kernel.matrix(drawn, x))[0][0])
    if value < -RESIDUAL_RTOL * kernel.N:
        raise NumericalError("Negative conditional density {0!r}."
                             .format(value))
    return min(max(value, 0.), float(kernel.N))


def sample_dpp(kernel, rng, proposal_batch=None, max_proposals=None,
               seed=None, stream=()):
    """Draw one exact sample of the projection DPP of kernel.

    Parameters
    ----------
        kernel : EnsembleKernel
            Kernel on a sphere, real or complex projective space.
        rng : numpy Generator or int
            Random stream; an int is used as master seed.
        proposal_batch : int
            Uniform candidates drawn per rejection round.
            Default from config.
        max_proposals : int
            Proposal budget per point. Default from config.
        seed, stream :
            Provenance recorded in the SampleSet when rng is a Generator.

    Examples
    --------
        k = get_kernel('harmonic', 's2', 1)
        sample_dpp(k, 42).coords.shape  # (4, 3)

    """
    if not isinstance(kernel, EnsembleKernel):
        raise TypeError("Invalid kernel '{0}'. "
                        "It should be EnsembleKernel.".format(kernel))
    space = kernel.space
    require_points(space)
    proposal_batch = utils.int_check(
        tools.config_default('proposal_batch', proposal_batch),
        'proposal_batch', minimum=1)
    max_proposals = utils.int_check(
        tools.config_default('max_proposals', max_proposals),
        'max_proposals', minimum=1)
    if not isinstance(rng, np.random.Generator):
        seed = utils.int_check(rng, 'seed', minimum=0)
    rng = utils.as_rng(rng)

    N = kernel.N
    dtype = np.complex128 if (space.field == 'complex'
                              or kernel.variant == 'projective') else float
    X = np.zeros((N, space.ambient), dtype=space.dtype)
    factor = np.zeros((N, N), dtype=dtype)
    stats = dict(proposals=0, degenerate=0, refactorizations=0)

    for k in range(N):
        spent = 0
        while True:
            if spent >= max_proposals:
                raise SamplerBudgetError(
                    "Sampler exceeded {0} proposals for point {1} of {2}."
                    .format(max_proposals, k + 1, N),
                    diagnostics=dict(kernel=kernel.descriptor, point=k,
                                     proposals=spent, stats=dict(stats)))
            size = min(proposal_batch, max_proposals - spent)
            C = sample_uniform_batch(space, size, rng)
            u = rng.uniform(size=size)
            if k == 0:
                res = np.full(size, float(N))
                W = np.zeros((0, size), dtype=dtype)
            else:
                res, W = _residuals(N, factor[:k, :k],
                                    kernel.matrix(X[:k], C))
                if (np.any(res < -RESIDUAL_RTOL * N)
                        or np.any(res > (1. + RESIDUAL_RTOL) * N)):
                    stats['refactorizations'] += 1
                    warnings.warn("Refactorising the Gram matrix after {0} "
                                  "points.".format(k))
                    factor[:k, :k] = _refactor(kernel, X, k)
                    res, W = _residuals(N, factor[:k, :k],
                                        kernel.matrix(X[:k], C))

            hit = u * N < res
            degenerate = hit & (res < DEGENERATE_RTOL * N)
            accept = np.flatnonzero(hit & ~degenerate)
            if accept.size == 0:
                spent += size
                stats['degenerate'] += int(np.count_nonzero(degenerate))
                continue

            j = int(accept[0])
            spent += j + 1
            stats['degenerate'] += int(np.count_nonzero(degenerate[:j]))
            X[k] = C[j]
            factor[k, :k] = np.conj(W[:, j])
            factor[k, k] = np.sqrt(res[j])
            break

        stats['proposals'] += spent
        logger.debug("point %d/%d accepted after %d proposals",
                     k + 1, N, spent)

    return SampleSet(space, X, kernel.descriptor, seed=seed,
                     stream=stream, stats=stats)


def sample_iid(space, N, rng, seed=None, stream=()):
    """N independent uniform points, packaged as a SampleSet."""
    space = get_space(space)
    N = utils.int_check(N, 'N', minimum=0)
    if not isinstance(rng, np.random.Generator):
        seed = utils.int_check(rng, 'seed', minimum=0)
    coords = sample_uniform_batch(space, N, utils.as_rng(rng))
    return SampleSet(space, coords, dict(ensemble='iid', space=space.id, N=N),
                     seed=seed, stream=stream,
                     stats=dict(proposals=N, degenerate=0,
                                refactorizations=0))


def _sample_one(job):
    kernel, seed, stream, proposal_batch, max_proposals = job
    return sample_dpp(kernel, utils.substream(seed, *stream),
                      proposal_batch=proposal_batch,
                      max_proposals=max_proposals,
                      seed=seed, stream=stream)


def run_jobs(func, jobs, workers):
    """Map func over jobs in order, inline for one worker, else in a pool."""
    jobs = list(jobs)
    if workers <= 1 or len(jobs) <= 1:
        return [func(job) for job in jobs]
    chunk = max(1, len(jobs) // (4 * workers))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, jobs, chunksize=chunk))


def sample_replicates(kernel, reps, seed, workers=None, index=(),
                      proposal_batch=None, max_proposals=None):
    """Draw reps independent samples on substreams (seed, *index, i).

    The result is identical for any worker count.

    Parameters
    ----------
        kernel : EnsembleKernel
        reps : int
        seed : int
            Master seed.
        workers : int
            Process count. Default from config.
        index : tuple of int
            Prefix of the substream index, e.g. the row of a scan.

    """
    reps = utils.int_check(reps, 'reps', minimum=0)
    seed = utils.int_check(seed, 'seed', minimum=0)
    workers = utils.int_check(tools.config_default('workers', workers),
                              'workers', minimum=1)
    proposal_batch = tools.config_default('proposal_batch', proposal_batch)
    max_proposals = tools.config_default('max_proposals', max_proposals)
    jobs = [(kernel, seed, tuple(index) + (i,), proposal_batch, max_proposals)
            for i in range(reps)]
    logger.info("drawing %d replicates of %r on %d worker(s)",
                reps, kernel, workers)
    return run_jobs(_sample_one, jobs, workers)
