"""Special functions

Pochhammer symbols, Jacobi polynomials by three-term recurrence and the
dimension count pi_L of the harmonic ensemble.

"""
from __future__ import absolute_import

import collections

import numpy as np
import scipy.special as sc

from . import utils
from .errors import DomainError, NumericalError, ValidationError


# Slack on the Jacobi argument range before a DomainError
X_TOL = 1e-12

# Allowed relative rounding error of pi_L
PI_L_RTOL = 1e-6


class JacobiParams(collections.namedtuple('JacobiParams', 'a b L')):
    """Parameters (a, b) > -1 and degree L >= 0 of a Jacobi polynomial."""

    __slots__ = ()

    def __new__(cls, a, b, L):
        a = utils.real_check(a, 'a')
        b = utils.real_check(b, 'b')
        L = utils.int_check(L, 'L', minimum=0)
        if a <= -1 or b <= -1:
            raise ValidationError("Invalid Jacobi parameters ({0}, {1}). "
                                  "Both should be > -1.".format(a, b))
        return super(JacobiParams, cls).__new__(cls, a, b, L)


def pochhammer(a, L):
    """Rising factorial (a)_L = a (a + 1) ... (a + L - 1).

    Parameters
    ----------
        a : float
        L : int
            Nonnegative number of factors; (a)_0 = 1.

    """
    a = utils.real_check(a, 'a')
    L = utils.int_check(L, 'L', minimum=0)
    if L == 0:
        return 1.
    return float(sc.poch(a, L))


def jacobi_recurrence(L, a, b, x):
    """Jacobi polynomial P_L^(a, b) on an array, no argument checks."""
    x = np.asarray(x, dtype=float)
    p_prev = np.ones_like(x)
    if L == 0:
        return p_prev
    p = (a + 1.) + (a + b + 2.) * (x - 1.) / 2.
    for n in range(2, L + 1):
        s = 2. * n + a + b
        lead = 2. * n * (n + a + b) * (s - 2.)
        mid = (s - 1.) * (s * (s - 2.) * x + a * a - b * b)
        tail = 2. * (n + a - 1.) * (n + b - 1.) * s
        p, p_prev = (mid * p - tail * p_prev) / lead, p
    return p


def jacobi_eval(params, x):
    """Evaluate P_L^(a, b)(x) by the forward three-term recurrence.

    Parameters
    ----------
        params : JacobiParams
        x : float or array_like
            Points in [-1, 1].

    Examples
    --------
        jacobi_eval(JacobiParams(0, 0, 2), 0.)  # -0.5, Legendre

    """
    if not isinstance(params, JacobiParams):
        raise TypeError("Invalid params '{0}'. "
                        "It should be JacobiParams.".format(params))
    scalar = np.ndim(x) == 0
    x = np.asarray(x, dtype=float)
    if np.any(~np.isfinite(x)) or np.any(np.abs(x) > 1. + X_TOL):
        raise DomainError("Invalid x. It should lie in [-1, 1].")
    x = np.clip(x, -1., 1.)
    out = jacobi_recurrence(params.L, params.a, params.b, x)
    return float(out) if scalar else out


def harmonic_prefactor(space, L):
    """(alpha + beta + 2)_L / (beta + 1)_L, accumulated as a product of ratios."""
    L = utils.int_check(L, 'L', minimum=0)
    k = np.arange(L, dtype=float)
    return float(np.prod((space.alpha + space.beta + 2. + k)
                         / (space.beta + 1. + k)))


def pi_L(space, L):
    """Number of points of the harmonic ensemble of level L on space.

    pi_L = (alpha + beta + 2)_L (alpha + 2)_L / ((beta + 1)_L L!)

    Computed as a product of per-factor ratios, then rounded.

    """
    L = utils.int_check(L, 'L', minimum=0)
    k = np.arange(L, dtype=float)
    a, b = space.alpha, space.beta
    value = float(np.prod(((a + b + 2. + k) / (b + 1. + k))
                          * ((a + 2. + k) / (k + 1.))))
    rounded = int(round(value))
    if rounded < 1 or abs(rounded - value) > PI_L_RTOL * value:
        raise NumericalError("pi_L({0}, {1}) = {2!r} is not an integer."
                             .format(space.id, L, value))
    return rounded


def pi_L_asymptotic(space, L):
    """Leading term Gamma(b + 1) / (Gamma(a + b + 2) Gamma(a + 2)) L^(2a + 2)."""
    L = utils.int_check(L, 'L', minimum=1)
    a, b = space.alpha, space.beta
    log_c = sc.gammaln(b + 1) - sc.gammaln(a + b + 2) - sc.gammaln(a + 2)
    return float(np.exp(log_c + (2 * a + 2) * np.log(L)))
