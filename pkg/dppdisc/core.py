"""Core dppdisc functions

Scaling experiments: an ExperimentConfig names an ensemble, a space, a grid
of levels and of radii; run_scaling produces one ScanTable row per
(level, radius) with the variance estimates, the net discrepancy and the
high-probability threshold.

Random streams of a scan:

    (seed, 0, row, rep)   DPP replicates of a row
    (seed, 1, row)        pair Monte Carlo of a row
    (seed, 2)             the ball net shared by all rows

"""
from __future__ import absolute_import

import logging

import numpy as np
import six

from . import tools
from . import utils
from .discrepancy import build_net, count_in_ball, discrepancy_sup
from .errors import ConfigError, DppDiscError
from .factory import get_kernel, get_space
from .sampler import run_jobs, sample_replicates
from .scan import ScalingFit, ScanTable, fit_exponent  # noqa: F401
from .spaces import Ball, Point, require_points
from .tails import maintool_threshold, net_exponent
from .valid import (REQUIRED_EXPERIMENT_FIELDS, SCAN_COLUMNS,
                    VALID_ENSEMBLES, VALID_EXPERIMENT_FIELDS)
from .variance import count_stats, variance_bound, variance_exact_mc


__all__ = ['ExperimentConfig', 'ScalingFit', 'ScanTable', 'expected_rates',
           'fit_exponent', 'run_scaling']

logger = logging.getLogger(__name__)

# Seeds are stored in int64 columns
_MAX_SEED = 2 ** 63 - 1


class ExperimentConfig(object):
    """Parameters of a scaling experiment.

    Parameters
    ----------
        ensemble : {'harmonic', 'projective'}
        space : string
            Space id; 'cp<d>' for the projective ensemble.
        levels : list of int
            Nonempty, strictly ascending.
        radii : list of float
            Ball radii in [0, diameter].
        seed : int
            Master seed. Required.
        net_n : int, default None
            Net parameter; no discrepancy columns if None.
        reps : int, default 200
            DPP replicates per row.
        pairs : int, default 20000
            Pair samples of the exact-formula Monte Carlo.
        disc_reps : int, default 10
            Replicates whose net discrepancy is computed (median reported).
        M : float, default 1.0
            Confidence exponent of the threshold.
        out : string, default None
        workers : int, default from config

    """
    def __init__(self, ensemble, space, levels, radii, seed, net_n=None,
                 reps=200, pairs=20000, disc_reps=10, M=1., out=None,
                 workers=None):
        if ensemble not in VALID_ENSEMBLES:
            raise ConfigError("Invalid ensemble '{0}'. It should be one of "
                              "{1}.".format(ensemble, sorted(VALID_ENSEMBLES)))
        self.space = get_space(space)
        if ensemble == 'projective' and self.space.family != 'cp':
            raise ConfigError("Invalid space '{0}' for the projective "
                              "ensemble.".format(self.space.id))

        if not isinstance(levels, (list, tuple)) or not levels:
            raise ConfigError("Invalid levels '{0}'. It should be a nonempty "
                              "list.".format(levels))
        levels = [utils.int_check(L, 'level', minimum=0) for L in levels]
        if any(b <= a for a, b in zip(levels, levels[1:])):
            raise ConfigError("Invalid levels {0}. They should be strictly "
                              "ascending.".format(levels))

        if not isinstance(radii, (list, tuple)) or not radii:
            raise ConfigError("Invalid radii '{0}'. It should be a nonempty "
                              "list.".format(radii))
        radii = [utils.real_check(r, 'radius') for r in radii]
        if any(r < 0 or r > self.space.diameter for r in radii):
            raise ConfigError("Invalid radii {0}. They should lie in [0, {1}]."
                              .format(radii, self.space.diameter))

        if seed is None:
            raise ConfigError("A seed is required.")
        self.seed = utils.int_check(seed, 'seed', minimum=0)
        if self.seed > _MAX_SEED:
            raise ConfigError("Invalid seed '{0}'. It should be < 2^63."
                              .format(seed))

        self.ensemble = ensemble
        self.levels = levels
        self.radii = radii
        self.net_n = (None if net_n is None
                      else utils.int_check(net_n, 'net_n', minimum=1))
        self.reps = utils.int_check(reps, 'reps', minimum=2)
        self.pairs = utils.int_check(pairs, 'pairs', minimum=2)
        self.disc_reps = utils.int_check(disc_reps, 'disc_reps', minimum=1)
        self.M = utils.real_check(M, 'M')
        if self.M <= 0:
            raise ConfigError("Invalid M '{0}'. It should be > 0.".format(M))
        if out is not None and not isinstance(out, six.string_types):
            raise TypeError("Invalid out '{0}'. "
                            "It should be string.".format(out))
        self.out = out
        self.workers = utils.int_check(tools.config_default('workers', workers),
                                       'workers', minimum=1)

    @classmethod
    def from_dict(cls, data):
        """Build from a flat dict; unknown fields are rejected."""
        if not isinstance(data, dict):
            raise ConfigError("Invalid experiment config. "
                              "It should be a JSON object.")
        unknown = sorted(set(data) - VALID_EXPERIMENT_FIELDS)
        if unknown:
            raise ConfigError("Invalid experiment fields {0}.".format(unknown))
        missing = sorted(REQUIRED_EXPERIMENT_FIELDS - set(data))
        if missing:
            raise ConfigError("Missing experiment fields {0}.".format(missing))
        return cls(**data)

    @classmethod
    def from_json(cls, path):
        data = utils.load_json_dict(path)
        if not data:
            raise ConfigError("Could not read experiment config '{0}'."
                              .format(path))
        return cls.from_dict(data)

    def to_dict(self):
        """Flat dict; workers is left out so results do not depend on it."""
        return dict(ensemble=self.ensemble, space=self.space.id,
                    levels=list(self.levels), radii=list(self.radii),
                    seed=self.seed, net_n=self.net_n, reps=self.reps,
                    pairs=self.pairs, disc_reps=self.disc_reps, M=self.M,
                    out=self.out)

    @property
    def rows(self):
        """(row index, L, radius) in output order."""
        out = []
        for L in self.levels:
            for r in self.radii:
                out.append((len(out), L, r))
        return out


def _attempt(errors, stage, func, *args):
    try:
        return func(*args)
    except DppDiscError as e:
        errors.append('{0}: {1}'.format(stage, e))
        logger.warning("%s failed: %s", stage, e)
        return float('nan')


def _scan_row(job):
    config, settings, net, c, index, L, r = job
    errors = []
    kernel = get_kernel(config['ensemble'], config['space'], L)
    space = kernel.space
    N = kernel.N
    seed = config['seed']
    logger.info("row %d: %r, r=%.6g", index, kernel, r)

    samples = []
    var_emp = var_emp_se = var_mc = var_mc_se = float('nan')
    if space.supports_sampling:
        center = np.zeros(space.ambient)
        center[0] = 1.
        ball = Ball(Point(space, center), r)
        samples = _attempt(errors, 'sampling', sample_replicates, kernel,
                           config['reps'], seed, 1, (0, index),
                           settings['proposal_batch'],
                           settings['max_proposals'])
        if isinstance(samples, list):
            stats = _attempt(errors, 'variance_empirical', count_stats,
                             [count_in_ball(s, ball) for s in samples])
            if isinstance(stats, tuple):
                var_emp, var_emp_se = stats[1], stats[2]
        else:
            samples = []

        if 0. < ball.volume < 1.:
            mc = _attempt(errors, 'variance_exact_mc', variance_exact_mc,
                          kernel, ball, config['pairs'],
                          utils.substream(seed, 1, index))
        else:
            mc = (0., 0.)
        var_mc, var_mc_se = mc if isinstance(mc, tuple) else (mc, mc)
    else:
        # parameter-only space: the quadrature columns are still filled
        for stage in ('sampling', 'variance_exact_mc', 'discrepancy'):
            _attempt(errors, stage, require_points, space)

    bound = _attempt(errors, 'variance_bound', variance_bound, kernel, r,
                     settings['quad_epsabs'], settings['quad_epsrel'])
    var_bound = float('nan') if bound is None else float(bound)

    disc_net = disc_slack = threshold_t = float('nan')
    if net is not None and samples:
        results = [_attempt(errors, 'discrepancy', discrepancy_sup, s,
                            space, net)
                   for s in samples[:config['disc_reps']]]
        results = [res for res in results if not isinstance(res, float)]
        if results:
            disc_net = float(np.median([res.net_sup for res in results]))
            disc_slack = float(results[0].slack)

    var_sup = var_bound if np.isfinite(var_bound) else var_emp
    if N >= 2 and np.isfinite(var_sup):
        threshold_t = _attempt(errors, 'threshold', maintool_threshold, N,
                               config['M'], c, float(var_sup))

    row = dict(space=space.id, ensemble=kernel.variant, L=L, N=N, radius=r,
               var_emp=var_emp, var_emp_se=var_emp_se, var_mc=var_mc,
               var_mc_se=var_mc_se, var_bound=var_bound, disc_net=disc_net,
               disc_slack=disc_slack, threshold_t=threshold_t, seed=seed)
    return row, errors


def run_scaling(config):
    """Run every (level, radius) row of a scaling experiment.

    Rows are computed in parallel over config.workers processes and
    gathered in row order; the table depends only on the seed.

    Parameters
    ----------
        config : ExperimentConfig or dict

    Returns
    -------
        ScanTable

    """
    if isinstance(config, dict):
        config = ExperimentConfig.from_dict(config)
    if not isinstance(config, ExperimentConfig):
        raise TypeError("Invalid config '{0}'. "
                        "It should be ExperimentConfig.".format(config))

    net = None
    c = float(config.space.dim_real + 1)
    meta = dict(config=config.to_dict())
    if config.net_n is not None and not config.space.supports_sampling:
        logger.warning("no ball net on %s: it has no point type",
                       config.space.id)
    elif config.net_n is not None:
        net = build_net(config.space, config.net_n,
                        utils.substream(config.seed, 2))
        c = net_exponent(config.space, {config.net_n: net.size})
        meta['net'] = net.to_dict()
    meta['net_exponent'] = c

    plain = config.to_dict()
    settings = {key: tools.config_default(key) for key in
                ('proposal_batch', 'max_proposals', 'quad_epsabs',
                 'quad_epsrel')}
    jobs = [(plain, settings, net, c, index, L, r)
            for index, L, r in config.rows]
    logger.info("scan of %d rows on %d worker(s)", len(jobs), config.workers)
    results = run_jobs(_scan_row, jobs, config.workers)

    rows = []
    errors = {}
    for index, (row, errs) in enumerate(results):
        rows.append(row)
        if errs:
            errors[index] = '; '.join(errs)
    table = ScanTable([{k: row[k] for k in SCAN_COLUMNS} for row in rows],
                      errors=errors, meta=meta)
    if config.out is not None:
        if config.out.endswith('.json'):
            table.to_json(config.out)
        else:
            table.to_csv(config.out)
    return table


def expected_rates(space):
    """Target exponents vs N: variance 1 - 1/D, discrepancy (1 - 1/D) / 2."""
    D = float(space.dim_real)
    return dict(var_emp=1. - 1. / D, var_mc=1. - 1. / D,
                var_bound=1. - 1. / D, disc_net=(1. - 1. / D) / 2.,
                threshold_t=(1. - 1. / D) / 2.)
