"""Homogeneous projection kernels

The harmonic ensemble on any compact two-point homogeneous space and the
projective ensemble on CP^d, both projection kernels of trace N with
K(x, x) = N with respect to the normalised invariant measure.

"""
from __future__ import absolute_import

import logging

import numpy as np
import scipy.special as sc

from . import special
from . import utils
from .errors import NumericalError, ValidationError
from .spaces import (Point, Space, check_coords, paired_distances,
                     pairwise_distances)
from .valid import VALID_ENSEMBLES


logger = logging.getLogger(__name__)

# Relative slack on |K| <= N and on K(x, x) = N
KERNEL_RTOL = 1e-8

# Clamp threshold for negative eigenvalues / intensities, relative to N
PSD_RTOL = 1e-8


def projective_count(d, L):
    """Number of points of the projective ensemble, binomial(d + L, d)."""
    d = utils.int_check(d, 'd', minimum=1)
    L = utils.int_check(L, 'L', minimum=0)
    return int(sc.comb(d + L, d, exact=True))


class EnsembleKernel(object):
    """Harmonic or projective projection kernel of trace N.

    Build with EnsembleKernel.harmonic(space, L) or
    EnsembleKernel.projective(d, L).

    Attributes
    ----------
        variant : {'harmonic', 'projective'}
        space : Space
        L : int
        N : int
            Trace of the kernel and number of points of the process.

    """
    def __init__(self, variant, space, L):
        if variant not in VALID_ENSEMBLES:
            raise ValidationError("Invalid variant '{0}'. It should be one of "
                                  "{1}.".format(variant, sorted(VALID_ENSEMBLES)))
        if not isinstance(space, Space):
            raise TypeError("Invalid space '{0}'. "
                            "It should be Space.".format(space))
        L = utils.int_check(L, 'L', minimum=0)

        self.variant = variant
        self.space = space
        self.L = L

        if variant == 'harmonic':
            self.N = special.pi_L(space, L)
            self._prefactor = special.harmonic_prefactor(space, L)
            self._jacobi = (space.alpha + 1., space.beta)
            diag = self._prefactor * special.jacobi_recurrence(
                L, self._jacobi[0], self._jacobi[1], 1.)
            if abs(float(diag) - self.N) > KERNEL_RTOL * self.N:
                raise NumericalError("Harmonic kernel diagonal {0!r} differs "
                                     "from pi_L = {1}.".format(float(diag),
                                                               self.N))
        else:
            if space.family != 'cp':
                raise ValidationError("The projective ensemble lives on CP^d, "
                                      "not on '{0}'.".format(space.id))
            self.N = projective_count(space.d, L)

    @classmethod
    def harmonic(cls, space, L):
        return cls('harmonic', space, L)

    @classmethod
    def projective(cls, d, L):
        return cls('projective', Space('cp', d), L)

    @property
    def descriptor(self):
        """Plain dict identifying the kernel (for JSON payloads)."""
        return dict(ensemble=self.variant, space=self.space.id,
                    L=self.L, N=self.N)

    def __repr__(self):
        return 'EnsembleKernel({0}, {1}, L={2}, N={3})'.format(
            self.variant, self.space.id, self.L, self.N)

    def __eq__(self, other):
        return (isinstance(other, EnsembleKernel)
                and other.descriptor == self.descriptor)

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash((self.variant, self.space.id, self.L))

    def profile(self, theta):
        """Harmonic kernel as a function of the distance theta.

        Available on every space of the table, including those without a
        point type.

        """
        if self.variant != 'harmonic':
            raise ValidationError("Only the harmonic kernel is radial in "
                                  "value; the projective kernel is radial "
                                  "in modulus only.")
        t = np.cos(2. * self.space.kappa * np.asarray(theta, dtype=float))
        return self._prefactor * special.jacobi_recurrence(
            self.L, self._jacobi[0], self._jacobi[1], np.clip(t, -1., 1.))

    def matrix(self, X, Y):
        """Kernel values K(x_i, y_j) on validated coordinate arrays."""
        X = np.atleast_2d(X)
        Y = np.atleast_2d(Y)
        if self.variant == 'harmonic':
            return self.profile(pairwise_distances(self.space, X, Y))
        z = X @ np.conj(Y).T
        return self.N * z ** self.L

    def paired(self, X, Y):
        """Kernel values K(x_i, y_i) on matching rows."""
        if self.variant == 'harmonic':
            return self.profile(paired_distances(self.space, X, Y))
        z = np.sum(X * np.conj(Y), axis=-1)
        return self.N * z ** self.L


def _coords_of(kernel, pts):
    if isinstance(pts, Point):
        pts = [pts]
    if isinstance(pts, (list, tuple)):
        if len(pts) == 0:
            return np.zeros((0, kernel.space.ambient), dtype=kernel.space.dtype)
        rows = []
        for p in pts:
            if isinstance(p, Point):
                if p.space != kernel.space:
                    raise ValidationError("Point on '{0}' used with a kernel "
                                          "on '{1}'.".format(p.space.id,
                                                             kernel.space.id))
                rows.append(p.coords)
            else:
                rows.append(check_coords(kernel.space, p))
        return np.vstack(rows)
    return np.atleast_2d(check_coords(kernel.space, pts))


def kernel_matrix(kernel, X, Y):
    """Vectorised kernel evaluation between two point collections."""
    return kernel.matrix(_coords_of(kernel, X), _coords_of(kernel, Y))


def kernel_eval(kernel, p, q):
    """Kernel value K(p, q).

    Harmonic: ((a + b + 2)_L / (b + 1)_L) P_L^(a + 1, b)(cos(2 kappa dist)),
    returned as float. Projective: N <u_p, u_q>^L on the stored
    representatives, returned as complex.

    Examples
    --------
        k = EnsembleKernel.harmonic(get_space('s2'), 1)
        kernel_eval(k, [0, 0, 1], [0, 0, -1])  # -2.0

    """
    value = kernel.matrix(_coords_of(kernel, p), _coords_of(kernel, q))
    if value.shape != (1, 1):
        raise ValidationError("kernel_eval takes two single points; "
                              "use kernel_matrix for collections.")
    value = value[0, 0]
    if abs(value) > kernel.N * (1. + KERNEL_RTOL):
        raise NumericalError("|K| = {0!r} exceeds N = {1}."
                             .format(abs(value), kernel.N))
    if kernel.variant == 'harmonic':
        return float(np.real(value))
    return complex(value)


def joint_intensity_2(kernel, p, q):
    """Two-point intensity rho_2(p, q) = N^2 - |K(p, q)|^2."""
    value = kernel.N ** 2 - abs(kernel_eval(kernel, p, q)) ** 2
    if value < -PSD_RTOL * kernel.N ** 2:
        raise NumericalError("Negative two-point intensity {0!r}."
                             .format(value))
    return max(float(value), 0.)


def gram(kernel, pts, check=True):
    """Hermitian matrix of kernel values between at most N points.

    The diagonal is set to N exactly and the matrix is symmetrised.

    Parameters
    ----------
        kernel : EnsembleKernel
        pts : list of Point or coordinate array
        check : bool, default True
            Verify eigenvalues >= -1e-8 N.

    """
    X = _coords_of(kernel, pts)
    if X.shape[0] > kernel.N:
        raise ValidationError("Invalid pts: {0} points exceed the kernel "
                              "trace N = {1}.".format(X.shape[0], kernel.N))
    G = kernel.matrix(X, X)
    G = (G + np.conj(G).T) / 2.
    np.fill_diagonal(G, kernel.N)
    if check and G.shape[0] > 0:
        low = np.min(np.linalg.eigvalsh(G))
        if low < -PSD_RTOL * kernel.N:
            raise NumericalError("Gram matrix has eigenvalue {0!r}."
                                 .format(low))
    return G


def joint_intensity(kernel, pts):
    """k-point intensity det(K(x_i, x_j)); zero for more than N points."""
    X = _coords_of(kernel, pts)
    if X.shape[0] > kernel.N:
        return 0.
    if X.shape[0] == 0:
        return 1.
    det = float(np.real(np.linalg.det(gram(kernel, X, check=False))))
    if det < -PSD_RTOL * kernel.N ** X.shape[0]:
        raise NumericalError("Negative joint intensity {0!r}.".format(det))
    return max(det, 0.)
