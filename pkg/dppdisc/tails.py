"""Concentration of ball counts

Two-branch Bernstein bound for N_A, the per-ball deviation threshold that
makes a union bound over a ball net hold with probability 1 - N^-M, and
an empirical check of the bound against DPP replicates.

"""
from __future__ import absolute_import

import collections
import logging
import math

import numpy as np
import pandas as pd

from . import utils
from .discrepancy import count_in_ball
from .errors import DomainError, ValidationError
from .sampler import sample_replicates
from .spaces import Space
from .valid import TAIL_COLUMNS


logger = logging.getLogger(__name__)


def bernstein_tail(variance, t):
    """Bound on P(|N_A - E N_A| >= t) from the variance of N_A.

    2 exp(-t / 4) if t >= variance, else 2 exp(-t^2 / (4 variance)),
    capped at 1.

    Examples
    --------
        bernstein_tail(4., 8.)  # 2 exp(-2) = 0.2707
        bernstein_tail(4., 0.)  # 1.0

    """
    variance = utils.real_check(variance, 'variance')
    t = utils.real_check(t, 't')
    if variance < 0 or t < 0:
        raise DomainError("Invalid variance '{0}' or t '{1}'. Both should be "
                          ">= 0.".format(variance, t))
    if t >= variance:
        value = 2. * math.exp(-t / 4.)
    else:
        value = 2. * math.exp(-t * t / (4. * variance))
    return min(1., value)


def _log_term(N, M, c):
    return (M + c) * math.log(N) + math.log(4. * c)


def maintool_threshold(N, M, c, var_sup):
    """Deviation t with 2 |A'| bernstein_tail(var_sup, t) <= N^-M.

    With q = (M + c) log N + log 4c:
    t = 2 sqrt(var_sup q) if var_sup > 4q (then t < var_sup), else t = 4q
    (then t >= var_sup).

    Parameters
    ----------
        N : int
            At least 2.
        M : float
            Confidence exponent, > 0.
        c : float
            Net exponent, >= 1.
        var_sup : float
            Upper bound on Var(N_A) over the balls of the net.

    """
    N = utils.int_check(N, 'N', minimum=2)
    M = utils.real_check(M, 'M')
    c = utils.real_check(c, 'c')
    var_sup = utils.real_check(var_sup, 'var_sup')
    if M <= 0 or c < 1 or var_sup < 0:
        raise DomainError("Invalid threshold input (M={0}, c={1}, var_sup="
                          "{2}). Need M > 0, c >= 1, var_sup >= 0."
                          .format(M, c, var_sup))
    q = _log_term(N, M, c)
    if var_sup > 4. * q:
        return 2. * math.sqrt(var_sup) * math.sqrt(q)
    return 4. * q


class TailBoundInput(collections.namedtuple('TailBoundInput',
                                            'variance t N M c')):
    """Validated inputs of the tail bound and of the discrepancy threshold."""

    __slots__ = ()

    def __new__(cls, variance, t, N, M, c):
        variance = utils.real_check(variance, 'variance')
        t = utils.real_check(t, 't')
        N = utils.int_check(N, 'N', minimum=0)
        M = utils.real_check(M, 'M')
        c = utils.real_check(c, 'c')
        if variance < 0 or t < 0 or M <= 0 or c < 1:
            raise DomainError("Invalid tail bound input.")
        return super(TailBoundInput, cls).__new__(cls, variance, t, N, M, c)

    def bound(self):
        return bernstein_tail(self.variance, self.t)

    def threshold(self):
        return maintool_threshold(self.N, self.M, self.c, self.variance)


def net_exponent(space, net_sizes):
    """c = max(max_n log|A'| / log n, D + 1) over recorded nets.

    Parameters
    ----------
        space : Space
        net_sizes : dict
            Net parameter n -> |A'| (BallNet.size).

    """
    if not isinstance(space, Space):
        raise TypeError("Invalid space '{0}'. "
                        "It should be Space.".format(space))
    if not isinstance(net_sizes, dict):
        raise TypeError("Invalid net_sizes '{0}'. "
                        "It should be dict.".format(net_sizes))
    c = float(space.dim_real + 1)
    for n, size in net_sizes.items():
        n = utils.int_check(n, 'n', minimum=1)
        size = utils.int_check(size, 'size', minimum=1)
        if n >= 2:
            c = max(c, math.log(size) / math.log(n))
    return c


def discrepancy_certificate(N, M, c, var_sup, slack):
    """Threshold plus the net slack: discrepancy bound holding w.p. 1 - N^-M."""
    slack = utils.real_check(slack, 'slack')
    if slack < 0:
        raise DomainError("Invalid slack '{0}'. It should be >= 0."
                          .format(slack))
    return maintool_threshold(N, M, c, var_sup) + slack


def empirical_tail_check(kernel, ball, reps, t_grid, seed, workers=None,
                         samples=None):
    """Empirical tail P(|N_A - N vol(A)| >= t) against the Bernstein bound.

    Parameters
    ----------
        kernel : EnsembleKernel
        ball : Ball
        reps : int
            At least 1000.
        t_grid : sequence of float
            Nonnegative deviations.
        seed : int
            Master seed; replicate i uses substream (seed, i).
        samples : list of SampleSet, optional
            Replicates already drawn.

    Returns
    -------
        pandas.DataFrame with columns t, freq, freq_se, bound.

    """
    t_grid = np.asarray(t_grid, dtype=float)
    if t_grid.ndim != 1 or np.any(~np.isfinite(t_grid)) or np.any(t_grid < 0):
        raise ValidationError("Invalid t_grid. It should be a list of "
                              "nonnegative numbers.")
    if samples is None:
        reps = utils.int_check(reps, 'reps', minimum=1000)
        samples = sample_replicates(kernel, reps, seed, workers=workers)
    counts = np.array([count_in_ball(s, ball) for s in samples], dtype=float)
    reps = counts.size

    var = float(np.var(counts, ddof=1)) if reps > 1 else 0.
    dev = np.abs(counts - kernel.N * ball.volume)
    freq = np.array([np.mean(dev >= t) for t in t_grid])
    frame = pd.DataFrame({
        't': t_grid,
        'freq': freq,
        'freq_se': np.sqrt(freq * (1. - freq) / reps),
        'bound': [bernstein_tail(var, float(t)) for t in t_grid],
    }, columns=list(TAIL_COLUMNS))
    logger.info("tail check for %r, r=%.6g: var=%.6g over %d replicates",
                kernel, ball.radius, var, reps)
    return frame
