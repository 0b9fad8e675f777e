"""Variance of ball counts

Three independent estimates of Var(N_A) for a ball A:

    empirical       sample variance of N_A over DPP replicates
    exact_mc        vol(A) (1 - vol(A)) E|K(p, q)|^2, p in A, q outside A
    quadrature      the radial double-integral upper bound

plus the four-region split of the harmonic double integral used to read
off its rate in L.

"""
from __future__ import absolute_import

import collections
import logging
import math

import numpy as np
import scipy.special as sc
from scipy import integrate

from . import special
from . import tools
from . import utils
from .discrepancy import count_in_ball
from .ensembles import EnsembleKernel, projective_count
from .errors import DomainError, QuadratureError, ValidationError
from .sampler import sample_replicates
from .spaces import Ball, Space, sample_uniform_batch


logger = logging.getLogger(__name__)

# scipy.integrate.quad subdivision limit
QUAD_LIMIT = 200

# Pair-sampling block size for the exact-formula Monte Carlo
_PAIR_BLOCK = 100000


def _quad(func, a, b, epsabs, epsrel, points=None, what='integral'):
    """scipy.integrate.quad that raises QuadratureError on real failures.

    quad warnings are tolerated when the reported error is still within ten
    times the requested tolerance.
    """
    if b <= a:
        return 0.
    out = integrate.quad(func, a, b, epsabs=epsabs, epsrel=epsrel,
                         limit=QUAD_LIMIT, points=points, full_output=1)
    value, abserr = out[0], out[1]
    if len(out) > 3:
        tol = max(epsabs, epsrel * abs(value))
        if not np.isfinite(value) or abserr > 10. * tol:
            raise QuadratureError(
                "Quadrature of the {0} on [{1:.6g}, {2:.6g}] did not "
                "converge: {3}".format(what, a, b, out[3]),
                diagnostics=dict(value=value, abserr=abserr, a=a, b=b,
                                 epsabs=epsabs, epsrel=epsrel,
                                 evaluations=out[2].get('neval')))
    return value


def binomial_variance(N, vol):
    """Variance N vol (1 - vol) of N independent uniform points."""
    vol = utils.real_check(vol, 'vol')
    return float(N) * vol * (1. - vol)


def _check_ball(kernel, ball):
    if not isinstance(kernel, EnsembleKernel):
        raise TypeError("Invalid kernel '{0}'. "
                        "It should be EnsembleKernel.".format(kernel))
    if not isinstance(ball, Ball):
        raise TypeError("Invalid ball '{0}'. It should be Ball.".format(ball))
    if ball.space != kernel.space:
        raise ValidationError("Ball on '{0}' used with a kernel on '{1}'."
                              .format(ball.space.id, kernel.space.id))


def variance_empirical(kernel, ball, reps, seed, workers=None, index=(),
                       samples=None):
    """Mean, unbiased variance and its standard error for N_A over replicates.

    The standard error uses the fourth central moment,
    se^2 = (m4 - (reps - 3) / (reps - 1) s^4) / reps.

    Parameters
    ----------
        kernel : EnsembleKernel
        ball : Ball
        reps : int
            At least 2.
        seed : int
            Master seed; replicate i uses substream (seed, *index, i).
        workers : int
            Default from config.
        samples : list of SampleSet, optional
            Replicates already drawn; reps and seed are then ignored.

    """
    _check_ball(kernel, ball)
    if samples is None:
        reps = utils.int_check(reps, 'reps', minimum=2)
        samples = sample_replicates(kernel, reps, seed, workers=workers,
                                    index=index)
    counts = np.array([count_in_ball(s, ball) for s in samples], dtype=float)
    return count_stats(counts)


def count_stats(counts):
    """(mean, unbiased variance, s.e. of the variance) of a count sample."""
    counts = np.asarray(counts, dtype=float)
    n = counts.size
    if n < 2:
        raise ValidationError("Invalid reps '{0}'. It should be >= 2."
                              .format(n))
    mean = float(np.mean(counts))
    var = float(np.var(counts, ddof=1))
    if var == 0.:
        return mean, 0., 0.
    m4 = float(np.mean((counts - mean) ** 4))
    se2 = (m4 - (n - 3.) / (n - 1.) * var ** 2) / n
    return mean, var, math.sqrt(max(se2, 0.))


def _sample_in_ball(ball, m, rng, inside):
    """m uniform points inside (or outside) ball by rejection."""
    space = ball.space
    vol = ball.volume if inside else 1. - ball.volume
    out = []
    got = 0
    while got < m:
        size = int(math.ceil(1.2 * (m - got) / vol)) + 16
        C = sample_uniform_batch(space, size, rng)
        keep = ball.contains(C)
        if not inside:
            keep = ~keep
        C = C[keep][:m - got]
        out.append(C)
        got += len(C)
    return np.vstack(out)


def variance_exact_mc(kernel, ball, pairs, rng):
    """Monte Carlo of the double integral of |K|^2 over A x A^c.

    p is drawn uniformly in A and q uniformly in the complement, both by
    rejection from the uniform measure.

    Returns
    -------
        (estimate, s.e.)

    """
    _check_ball(kernel, ball)
    pairs = utils.int_check(pairs, 'pairs', minimum=2)
    rng = utils.as_rng(rng)
    vol = ball.volume
    if not 0. < vol < 1.:
        raise DomainError("Invalid ball: volume {0!r} leaves nothing to "
                          "estimate.".format(vol))

    values = np.empty(pairs)
    for start in range(0, pairs, _PAIR_BLOCK):
        m = min(_PAIR_BLOCK, pairs - start)
        P = _sample_in_ball(ball, m, rng, inside=True)
        Q = _sample_in_ball(ball, m, rng, inside=False)
        values[start:start + m] = np.abs(kernel.paired(P, Q)) ** 2

    weight = vol * (1. - vol)
    estimate = weight * float(np.mean(values))
    se = weight * float(np.std(values, ddof=1)) / math.sqrt(pairs)
    return estimate, se


def _check_open_radius(space, r):
    r = utils.real_check(r, 'r')
    if not 0. < r < space.diameter:
        raise DomainError("Invalid r '{0}'. It should be in (0, {1})."
                          .format(r, space.diameter))
    return r


def _radial_parts(space, L):
    a, b = space.alpha + 1., space.beta
    pa, pb = 2. * space.alpha + 1., 2. * space.beta + 1.

    def g(theta):
        p = special.jacobi_recurrence(L, a, b, math.cos(2. * theta))
        return float(p) ** 2 * math.sin(theta) ** pa * math.cos(theta) ** pb

    def w(phi):
        return math.sin(phi) ** pa * math.cos(phi) ** pb

    return g, w


def _harmonic_constant(space, L):
    log_c = (sc.gammaln(space.alpha + space.beta + 2)
             - sc.gammaln(space.alpha + 1) - sc.gammaln(space.beta + 1))
    return (special.harmonic_prefactor(space, L) * 2. * math.exp(log_c)) ** 2


def variance_bound_harmonic(space, L, r, epsabs=None, epsrel=None,
                            method='nested'):
    """Quadrature upper bound on Var(N_A) for the harmonic ensemble.

    C^2 int_0^{kr} w(phi) int_{kr - phi}^{pi/2} P^2(cos 2 theta) w(theta)
    with w = sin^(2a+1) cos^(2b+1), P = P_L^(a+1, b) and
    C = ((a + b + 2)_L / (b + 1)_L) 2 Gamma(a + b + 2)
        / (Gamma(a + 1) Gamma(b + 1)).

    Parameters
    ----------
        space : Space
            Any space of the table, sampling support not needed.
        L : int
        r : float
            In (0, diameter).
        epsabs : float
            Tolerance of the inner integral. Default from config.
        epsrel : float
            Tolerance of the outer integral. Default from config.
        method : {'nested', 'reduced'}
            'nested' runs adaptive quadrature in theta inside adaptive
            quadrature in phi. 'reduced' integrates once in theta against
            the exact phi-measure of each slice, through the incomplete beta
            function.

    """
    if not isinstance(space, Space):
        raise TypeError("Invalid space '{0}'. "
                        "It should be Space.".format(space))
    L = utils.int_check(L, 'L', minimum=0)
    r = _check_open_radius(space, r)
    epsabs = tools.config_default('quad_epsabs', epsabs)
    epsrel = tools.config_default('quad_epsrel', epsrel)
    g, w = _radial_parts(space, L)
    a = space.kappa * r
    half = np.pi / 2.

    if method == 'nested':
        def outer(phi):
            return w(phi) * _quad(g, a - phi, half, epsabs, 1e-10,
                                  what='inner harmonic integral')
        value = _quad(outer, 0., a, 0., epsrel, what='harmonic bound')
    elif method == 'reduced':
        # phi-measure of {phi in [0, a] : phi >= a - theta}
        alpha1, beta1 = space.alpha + 1., space.beta + 1.
        scale = 0.5 * math.exp(sc.betaln(alpha1, beta1))

        def F(x):
            return scale * sc.betainc(alpha1, beta1, math.sin(x) ** 2)

        top = F(a)
        value = _quad(lambda t: g(t) * (top - F(max(0., a - t))),
                      0., half, epsabs, epsrel, points=[a],
                      what='harmonic bound')
    else:
        raise ValidationError("Invalid method '{0}'. It should be 'nested' "
                              "or 'reduced'.".format(method))

    bound = _harmonic_constant(space, L) * value
    logger.info("harmonic bound on %s, L=%d, r=%.6g: %.6g",
                space.id, L, r, bound)
    return max(bound, 0.)


RegionIntegrals = collections.namedtuple(
    'RegionIntegrals', 'R1 R2 R3 R4 total divided')
RegionIntegrals.__doc__ = """Split of the harmonic double integral.

R1 to R4 are None when divided is False (the split needs
1/L < kappa r < pi/2 - 1/L); total is always the undivided integral.
"""


def region_integrals(space, L, r, epsabs=None, epsrel=None):
    """Integrals of P^2(cos 2 theta) sin^(2a+1) cos^(2b+1) over four regions.

    With a = kappa r and h = 1/L, the (phi, theta) domain
    0 <= phi <= a, a - phi <= theta <= pi/2 splits into

        R1   theta in [pi/2 - h, pi/2]
        R2   phi <= a - h, theta in [a - phi, pi/2 - h]
        R3   phi in [a - h, a], theta in [h, pi/2 - h]
        R4   phi in [a - h, a], theta in [a - phi, h]

    The integrand does not depend on phi, so each region reduces to a
    single integral in theta weighted by the length of its phi-slice.

    """
    if not isinstance(space, Space):
        raise TypeError("Invalid space '{0}'. "
                        "It should be Space.".format(space))
    L = utils.int_check(L, 'L', minimum=1)
    r = _check_open_radius(space, r)
    epsabs = tools.config_default('quad_epsabs', epsabs)
    epsrel = tools.config_default('quad_epsrel', epsrel)
    eps_fine = min(epsabs, 1e-12)
    rel_fine = min(epsrel, 1e-10)
    g, _ = _radial_parts(space, L)
    a = space.kappa * r
    h = 1. / L
    half = np.pi / 2.

    total = _quad(lambda t: g(t) * min(t, a), 0., half, eps_fine, rel_fine,
                  points=[a], what='region integral')
    if not h < a < half - h:
        logger.info("region split invalid for L=%d, kappa r=%.6g", L, a)
        return RegionIntegrals(None, None, None, None, total, False)

    R1 = a * _quad(g, half - h, half, eps_fine, rel_fine, what='region R1')
    R2 = ((a - h) * _quad(g, a, half - h, eps_fine, rel_fine,
                          what='region R2')
          + _quad(lambda t: g(t) * (t - h), h, a, eps_fine, rel_fine,
                  what='region R2'))
    R3 = h * _quad(g, h, half - h, eps_fine, rel_fine, what='region R3')
    R4 = _quad(lambda t: g(t) * t, 0., h, eps_fine, rel_fine,
               what='region R4')
    return RegionIntegrals(R1, R2, R3, R4, total, True)


def _check_projective(d, L, r):
    d = utils.int_check(d, 'd', minimum=1)
    L = utils.int_check(L, 'L', minimum=1)
    r = utils.real_check(r, 'r')
    if not 0. < r < np.pi / 2.:
        raise DomainError("Invalid r '{0}'. It should be in (0, pi/2)."
                          .format(r))
    return d, L, r


def variance_bound_projective(d, L, r, epsabs=None, epsrel=None):
    """Quadrature upper bound on Var(N_A) for the projective ensemble.

    4 d^2 N^2 int_0^r sin^(2d-1)(phi) cos(phi)
        int_{r - phi}^{pi/2} sin^(2d-1)(theta) cos^(2L+1)(theta)

    """
    d, L, r = _check_projective(d, L, r)
    epsabs = tools.config_default('quad_epsabs', epsabs)
    epsrel = tools.config_default('quad_epsrel', epsrel)
    N = projective_count(d, L)
    half = np.pi / 2.

    def inner(theta):
        return math.sin(theta) ** (2 * d - 1) * math.cos(theta) ** (2 * L + 1)

    def outer(phi):
        return (math.sin(phi) ** (2 * d - 1) * math.cos(phi)
                * _quad(inner, r - phi, half, epsabs, 1e-10,
                        what='inner projective integral'))

    value = _quad(outer, 0., r, 0., epsrel, what='projective bound')
    bound = 4. * d * d * float(N) ** 2 * value
    logger.info("projective bound on cp%d, L=%d, r=%.6g: %.6g",
                d, L, r, bound)
    return max(bound, 0.)


def variance_bound_projective_gaussian(d, L, r, epsrel=None):
    """Relaxed projective bound with cos^2 <= exp(-theta^2 / 2), sin <= id.

    4 d^2 N^2 int_0^r phi^(2d-1) 2^(d-1) Gamma(d) L^-d Q(d, L (r - phi)^2 / 2)
    where Q is the regularised upper incomplete gamma function. Always at
    least variance_bound_projective(d, L, r).

    """
    d, L, r = _check_projective(d, L, r)
    epsrel = tools.config_default('quad_epsrel', epsrel)
    N = projective_count(d, L)
    scale = 2. ** (d - 1) * math.gamma(d) / float(L) ** d

    def outer(phi):
        return phi ** (2 * d - 1) * sc.gammaincc(d, L * (r - phi) ** 2 / 2.)

    value = scale * _quad(outer, 0., r, 0., epsrel, what='gaussian bound')
    return 4. * d * d * float(N) ** 2 * value


class VarianceReport(object):
    """Empirical, exact-formula and quadrature variance for one ball.

    Parameters
    ----------
        kernel : EnsembleKernel
        ball : Ball
        empirical : (mean, variance, se, reps)
        exact_mc : (estimate, se, pairs)
        quadrature_bound : float or None
        region_integrals : RegionIntegrals or None

    """
    def __init__(self, kernel, ball, empirical, exact_mc, quadrature_bound,
                 region_integrals=None):
        self.kernel = kernel
        self.ball = ball
        self.empirical = dict(zip(('mean', 'variance', 'se', 'reps'),
                                  empirical))
        self.exact_mc = dict(zip(('estimate', 'se', 'pairs'), exact_mc))
        self.quadrature_bound = quadrature_bound
        self.region_integrals = region_integrals
        self.binomial = binomial_variance(kernel.N, ball.volume)

    def __repr__(self):
        return ('VarianceReport({0}, r={1:.6g}, empirical={2:.6g}, '
                'exact_mc={3:.6g}, bound={4})'.format(
                    self.kernel, self.ball.radius,
                    self.empirical['variance'], self.exact_mc['estimate'],
                    self.quadrature_bound))

    def to_dict(self):
        regions = None
        if self.region_integrals is not None:
            regions = self.region_integrals._asdict()
        return dict(kernel=self.kernel.descriptor,
                    ball=self.ball.to_dict(),
                    volume=self.ball.volume,
                    empirical=self.empirical,
                    exact_mc=self.exact_mc,
                    quadrature_bound=self.quadrature_bound,
                    region_integrals=regions,
                    binomial=self.binomial)


def variance_bound(kernel, r, epsabs=None, epsrel=None):
    """Quadrature bound for kernel at radius r.

    0 for the empty ball, None for the full ball where the bound is void.
    """
    if r <= 0.:
        return 0.
    if r >= kernel.space.diameter:
        return None
    if kernel.variant == 'harmonic':
        return variance_bound_harmonic(kernel.space, kernel.L, r,
                                       epsabs=epsabs, epsrel=epsrel)
    return variance_bound_projective(kernel.space.d, kernel.L, r,
                                     epsabs=epsabs, epsrel=epsrel)


def variance_report(kernel, ball, reps, pairs, seed, workers=None,
                    regions=True, samples=None):
    """Bundle the three variance estimates for one (kernel, ball).

    Replicates use substreams (seed, 0, i); the pair Monte Carlo uses
    substream (seed, 1).

    """
    _check_ball(kernel, ball)
    empirical = variance_empirical(kernel, ball, reps, seed, workers=workers,
                                   index=(0,), samples=samples)
    reps = len(samples) if samples is not None else reps

    vol = ball.volume
    if 0. < vol < 1.:
        exact = variance_exact_mc(kernel, ball, pairs,
                                  utils.substream(seed, 1))
    else:
        exact = (0., 0.)

    bound = variance_bound(kernel, ball.radius)
    split = None
    if (regions and kernel.variant == 'harmonic' and kernel.L >= 1
            and 0. < ball.radius < kernel.space.diameter):
        split = region_integrals(kernel.space, kernel.L, ball.radius)
    return VarianceReport(kernel, ball, empirical + (reps,),
                          exact + (pairs,), bound, split)
