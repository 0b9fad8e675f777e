"""Compact, connected two-point homogeneous spaces

Space carries the geometry of one space (Jacobi parameters of its radial
measure, curvature scale, dimension, diameter). Points are unit vectors over
the base field; on projective spaces they are representatives of their class
and every public operation is invariant under a change of representative.

Volumes are normalised so that the whole space has volume 1. Balls are open.

"""
from __future__ import absolute_import

import logging

import numpy as np
import scipy.special as sc
from scipy.stats import ortho_group, unitary_group

from . import utils
from .catalog.table import FAMILIES
from .errors import DomainError, UnsupportedSpaceError, ValidationError
from .valid import PROJECTIVE_FAMILIES, SAMPLING_FAMILIES, VALID_FAMILIES


logger = logging.getLogger(__name__)

# Unit-norm acceptance: exact below NORM_TOL, renormalised below
# NORM_RENORMALIZE, rejected above.
NORM_TOL = 1e-12
NORM_RENORMALIZE = 1e-9

# Slack allowed on radii and angles at the ends of their range
RANGE_TOL = 1e-12

# Upper bound on elements of a broadcast block in pairwise distances
_BLOCK = 2 ** 21


class Space(object):
    """A compact, connected two-point homogeneous space.

    Parameters
    ----------
        family : {'s', 'rp', 'cp', 'hp', 'op'}
            Sphere, real / complex / quaternionic projective space or the
            octonionic plane.
        d : int
            Dimension index (S^d, RP^d, CP^d, HP^d); 2 for the octonionic
            plane.

    Attributes
    ----------
        alpha, beta : float
            Jacobi parameters of the radial measure.
        kappa : float
            1/2 on spheres, 1 on projective spaces.
        dim_real : int
            Real dimension D = 2 alpha + 2.
        diameter : float
            pi / (2 kappa).

    """
    def __init__(self, family, d):
        if family not in VALID_FAMILIES:
            raise ValidationError("Invalid family '{0}'. It should be one of "
                                  "{1}.".format(family, sorted(VALID_FAMILIES)))
        d = utils.int_check(d, 'd', minimum=FAMILIES[family]['min_d'])
        if family == 'op' and d != 2:
            raise ValidationError("Invalid d '{0}'. The octonionic plane only "
                                  "exists for d = 2.".format(d))

        row = FAMILIES[family]
        self.family = family
        self.d = d
        self.kind = row['name']
        self.field = row['field']
        self.alpha = float(row['alpha'](d))
        self.beta = float(row['beta'](d))
        self.kappa = float(row['kappa'])
        self.dim_real = int(row['dim_real'](d))
        self.diameter = np.pi / (2. * self.kappa)
        self.ambient = row['ambient'](d) if row['ambient'] is not None else None

        if self.dim_real != int(round(2 * self.alpha + 2)):
            raise ValidationError("Inconsistent table row for '{0}'."
                                  .format(self.id))

        # Normalising constant of the radial density
        a, b = self.alpha, self.beta
        self._log_c = (np.log(2. * self.kappa) + sc.gammaln(a + b + 2)
                       - sc.gammaln(a + 1) - sc.gammaln(b + 1))

    @property
    def id(self):
        """String id, e.g. 's2', 'cp3', 'op2'."""
        return '{0}{1}'.format(self.family, self.d)

    @property
    def is_projective(self):
        return self.family in PROJECTIVE_FAMILIES

    @property
    def supports_sampling(self):
        """True if points and uniform sampling are available."""
        return self.family in SAMPLING_FAMILIES

    @property
    def dtype(self):
        return np.complex128 if self.field == 'complex' else np.float64

    def __repr__(self):
        return "Space('{0}', {1}, alpha={2}, beta={3}, D={4})".format(
            self.kind, self.d, self.alpha, self.beta, self.dim_real)

    def __eq__(self, other):
        return isinstance(other, Space) and other.id == self.id

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash(self.id)

    def to_dict(self):
        """Return the table row of this space as a plain dict."""
        return dict(id=self.id, kind=self.kind, d=self.d,
                    alpha=self.alpha, beta=self.beta, kappa=self.kappa,
                    D=self.dim_real, diameter=self.diameter,
                    sampling=self.supports_sampling)


def require_points(space):
    """Raise UnsupportedSpaceError unless space has a point type."""
    if not space.supports_sampling:
        raise UnsupportedSpaceError(
            "Points and sampling unsupported on '{0}'; only table parameters "
            "and the radial measure are available.".format(space.id))


def check_coords(space, coords):
    """Validate a coordinate array of shape (m,) or (n, m).

    Rows within NORM_RENORMALIZE of unit norm are renormalised, others
    rejected. Real spaces reject coordinates with an imaginary part.

    """
    require_points(space)
    coords = np.asarray(coords)

    if np.iscomplexobj(coords) and space.field == 'real':
        if np.any(coords.imag != 0):
            raise ValidationError("Invalid coords for '{0}'. "
                                  "It should be real.".format(space.id))
        coords = coords.real
    coords = coords.astype(space.dtype, copy=False)

    if coords.ndim not in (1, 2) or coords.shape[-1] != space.ambient:
        raise ValidationError("Invalid coords shape {0} for '{1}'. "
                              "It should end with {2}."
                              .format(coords.shape, space.id, space.ambient))
    if not np.all(np.isfinite(coords)):
        raise ValidationError("Invalid coords: non-finite entries.")

    norms = np.linalg.norm(coords, axis=-1)
    dev = np.abs(norms - 1.)
    if np.any(dev > NORM_RENORMALIZE):
        worst = norms.flat[np.argmax(dev)]
        raise ValidationError("Invalid coords: norm {0!r} is not 1."
                              .format(float(worst)))
    if np.any(dev > NORM_TOL):
        coords = coords / norms[..., None]
    return coords


class Point(object):
    """A point of a space stored as a unit representative.

    Parameters
    ----------
        space : Space
            The space the point lives on. Must support points.
        coords : array_like
            Unit vector of length space.ambient over the base field.

    On projective spaces, points equal any unit scalar multiple of
    themselves.

    """
    def __init__(self, space, coords):
        coords = np.array(check_coords(space, coords), copy=True)
        if coords.ndim != 1:
            raise ValidationError("Invalid coords: a Point needs one vector.")
        coords.setflags(write=False)
        self.space = space
        self.coords = coords

    @property
    def gauge(self):
        """'projective' if the representative is free up to a unit scalar."""
        return 'projective' if self.space.is_projective else 'exact'

    def __repr__(self):
        return 'Point({0}, {1})'.format(self.space.id, np.array2string(
            self.coords, precision=6))

    def __eq__(self, other):
        if not isinstance(other, Point) or other.space != self.space:
            return False
        return distance(self.space, self, other) <= NORM_TOL

    def __ne__(self, other):
        return not self.__eq__(other)

    __hash__ = None


class Ball(object):
    """Open metric ball B(center, radius).

    Parameters
    ----------
        center : Point
        radius : float
            In [0, diameter].

    """
    def __init__(self, center, radius):
        if not isinstance(center, Point):
            raise TypeError("Invalid center '{0}'. "
                            "It should be Point.".format(center))
        radius = _check_radius(center.space, radius, 'radius')
        self.center = center
        self.radius = radius

    @property
    def space(self):
        return self.center.space

    @property
    def volume(self):
        return ball_volume(self.space, self.radius)

    def contains(self, coords):
        """Boolean mask of the rows of coords strictly inside the ball."""
        coords = np.atleast_2d(check_coords(self.space, coords))
        dist = pairwise_distances(self.space, self.center.coords[None, :],
                                  coords)[0]
        return dist < self.radius

    def to_dict(self):
        return dict(center=coords_to_list(self.center.coords),
                    radius=self.radius)

    def __repr__(self):
        return 'Ball({0}, r={1:.6g})'.format(self.center, self.radius)


def _check_radius(space, r, name):
    r = utils.real_check(r, name)
    if r < -RANGE_TOL or r > space.diameter + RANGE_TOL:
        raise DomainError("Invalid {0} '{1}'. It should be in [0, {2}]."
                          .format(name, r, space.diameter))
    return min(max(r, 0.), space.diameter)


def _check_angles(space, theta, name):
    theta = np.asarray(theta, dtype=float)
    if np.any(~np.isfinite(theta)):
        raise DomainError("Invalid {0}: non-finite values.".format(name))
    if np.any(theta < -RANGE_TOL) or np.any(theta > space.diameter + RANGE_TOL):
        raise DomainError("Invalid {0}. It should lie in [0, {1}]."
                          .format(name, space.diameter))
    return np.clip(theta, 0., space.diameter)


def _as_coords(space, p):
    if isinstance(p, Point):
        if p.space != space:
            raise ValidationError("Point on '{0}' used on '{1}'."
                                  .format(p.space.id, space.id))
        return p.coords
    return check_coords(space, p)


def _wedge_sq(X, Y):
    """Sum over i<j of |x_i y_j - x_j y_i|^2 for all row pairs.

    Equals |x|^2 |y|^2 - |<x, y>|^2 and is exactly symmetric in (x, y).
    """
    m = X.shape[-1]
    out = np.zeros((X.shape[0], Y.shape[0]))
    for i in range(m):
        for j in range(i + 1, m):
            w = X[:, i, None] * Y[None, :, j] - X[:, j, None] * Y[None, :, i]
            out += np.abs(w) ** 2
    return out


def _inner(space, X, Y):
    z = (X[:, None, :] * np.conj(Y)[None, :, :]).sum(axis=-1)
    if space.is_projective:
        return np.abs(z)
    return z.real


def pairwise_distances(space, X, Y):
    """Geodesic distances between all rows of X and all rows of Y.

    The angle is atan2(|x ^ y|, <x, y>) (modulus of the inner product on
    projective spaces): exact zero on identical rows, symmetric bit for bit,
    and accurate at both ends of the range.

    Parameters
    ----------
        space : Space
        X, Y : ndarray
            Coordinate arrays of shape (n, m) and (k, m), already validated.

    Returns
    -------
        ndarray of shape (n, k), values in [0, diameter].

    """
    X = np.atleast_2d(X)
    Y = np.atleast_2d(Y)
    out = np.empty((X.shape[0], Y.shape[0]))
    rows = max(1, _BLOCK // max(1, Y.shape[0] * X.shape[1]))
    for start in range(0, X.shape[0], rows):
        Xb = X[start:start + rows]
        wedge = np.sqrt(_wedge_sq(Xb, Y))
        out[start:start + rows] = np.arctan2(wedge, _inner(space, Xb, Y))
    return np.clip(out, 0., space.diameter)


def paired_distances(space, X, Y):
    """Geodesic distances between matching rows of X and Y."""
    z = (X * np.conj(Y)).sum(axis=-1)
    inner = np.abs(z) if space.is_projective else z.real
    m = X.shape[-1]
    wedge = np.zeros(X.shape[0])
    for i in range(m):
        for j in range(i + 1, m):
            wedge += np.abs(X[:, i] * Y[:, j] - X[:, j] * Y[:, i]) ** 2
    return np.clip(np.arctan2(np.sqrt(wedge), inner), 0., space.diameter)


def distance(space, p, q):
    """Riemannian distance between two points.

    Parameters
    ----------
        space : Space
        p, q : Point or array_like
            Unit vectors (representatives on projective spaces).

    Examples
    --------
        s2 = get_space('s2')
        distance(s2, [0, 0, 1], [0, 0, -1])  # pi

    """
    x = _as_coords(space, p)
    y = _as_coords(space, q)
    if x.ndim != 1 or y.ndim != 1:
        raise ValidationError("distance takes two single points; "
                              "use pairwise_distances for arrays.")
    return float(pairwise_distances(space, x[None, :], y[None, :])[0, 0])


def radial_density(space, theta):
    """Density of the distance to a fixed point under the uniform measure.

    c (sin k theta)^(2 alpha + 1) (cos k theta)^(2 beta + 1) with
    c = 2 k Gamma(alpha + beta + 2) / (Gamma(alpha + 1) Gamma(beta + 1)).

    Parameters
    ----------
        space : Space
        theta : float or array_like
            Distances in [0, diameter].

    """
    scalar = np.ndim(theta) == 0
    theta = _check_angles(space, theta, 'theta')
    k = space.kappa
    s = np.sin(k * theta)
    c = np.cos(k * theta)
    with np.errstate(divide='ignore', invalid='ignore'):
        out = (np.exp(space._log_c) * s ** (2 * space.alpha + 1)
               * c ** (2 * space.beta + 1))
    out = np.where(np.isfinite(out), out, 0.)
    return float(out) if scalar else out


def ball_volume(space, r):
    """Normalised volume of an open ball of radius r.

    The regularised incomplete beta function I_x(alpha + 1, beta + 1) at
    x = sin^2(kappa r), i.e. the integral of radial_density on [0, r].

    Examples
    --------
        ball_volume(get_space('s2'), np.pi / 2)  # 0.5
        ball_volume(get_space('cp2'), np.pi / 4)  # 0.25

    """
    scalar = np.ndim(r) == 0
    r = _check_angles(space, r, 'r')
    x = np.sin(space.kappa * r) ** 2
    x = np.where(r >= space.diameter, 1., x)
    out = sc.betainc(space.alpha + 1., space.beta + 1., x)
    return float(out) if scalar else out


def ahlfors_constants(space, grid=1000):
    """Return (c1, c2) with c1 r^D <= vol B(x, r) <= c2 r^D.

    Computed as min / max of ball_volume(r) / r^D over a grid of radii in
    (0, diameter].

    """
    grid = utils.int_check(grid, 'grid', minimum=2)
    r = np.linspace(space.diameter / grid, space.diameter, grid)
    ratio = ball_volume(space, r) / r ** space.dim_real
    return float(np.min(ratio)), float(np.max(ratio))


def sample_uniform_batch(space, n, rng):
    """Draw n uniform points as a coordinate array of shape (n, m).

    Normalised standard Gaussian vectors over the base field; on projective
    spaces the representative is whatever the Gaussian gives.

    """
    require_points(space)
    n = utils.int_check(n, 'n', minimum=0)
    rng = utils.as_rng(rng)
    m = space.ambient
    if space.field == 'complex':
        g = rng.standard_normal((n, 2 * m))
        x = g[:, :m] + 1j * g[:, m:]
    else:
        x = rng.standard_normal((n, m))
    return x / np.linalg.norm(x, axis=1)[:, None]


def sample_uniform(space, rng):
    """Draw one point from the normalised invariant measure.

    Parameters
    ----------
        space : Space
            Sphere, real or complex projective space.
        rng : numpy Generator or int
            Random stream; an int is used as a seed.

    """
    return Point(space, sample_uniform_batch(space, 1, rng)[0])


def random_isometry(space, rng):
    """Return a Haar-random isometry as a function on coordinate arrays."""
    require_points(space)
    rng = utils.as_rng(rng)
    if space.field == 'complex':
        Q = unitary_group.rvs(space.ambient, random_state=rng)
    else:
        Q = ortho_group.rvs(space.ambient, random_state=rng)

    def apply(X):
        return np.asarray(X) @ Q.T

    return apply


def embed(space, X):
    """Euclidean embedding where chord length increases with distance.

    Spheres embed as themselves (chord 2 sin(dist / 2)); projective spaces
    through the projector x x* (chord sqrt(2) sin(dist)).

    """
    X = np.atleast_2d(X)
    if not space.is_projective:
        return np.asarray(X, dtype=float)
    P = X[:, :, None] * np.conj(X)[:, None, :]
    P = P.reshape(X.shape[0], -1)
    if space.field == 'complex':
        return np.hstack([P.real, P.imag])
    return P.real


def chord_of(space, r):
    """Chord length in the embedding at geodesic distance r."""
    r = np.minimum(np.asarray(r, dtype=float), space.diameter)
    if space.is_projective:
        return np.sqrt(2.) * np.sin(r)
    return 2. * np.sin(r / 2.)


def coords_to_list(coords):
    """JSON-friendly nested lists; complex entries become [re, im] pairs."""
    coords = np.asarray(coords)
    if np.iscomplexobj(coords):
        return np.stack([coords.real, coords.imag], axis=-1).tolist()
    return coords.tolist()


def coords_from_list(space, data):
    """Inverse of coords_to_list."""
    arr = np.asarray(data, dtype=float)
    if space.field == 'complex':
        arr = arr[..., 0] + 1j * arr[..., 1]
    return arr
