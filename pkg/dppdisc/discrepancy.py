"""Ball discrepancy of point sets

A BallNet is a greedy maximal eps-separated set of centers (eps = 1/(4n))
together with the radius grid {0, delta, ..., K delta}, delta = 1/(2n).
Every ball B(x, r) is sandwiched between two net balls whose radii differ
by 1/n. Discrepancy against the net is computed exactly in the radius for
each center, from the sorted distances to that center.

"""
from __future__ import absolute_import

import collections
import logging
import math
import warnings

import numpy as np
from scipy.spatial import cKDTree

from . import tools
from . import utils
from .errors import DomainError, ValidationError
from .spaces import (Ball, Point, Space, ahlfors_constants, ball_volume,
                     check_coords, chord_of, coords_to_list, embed,
                     paired_distances, pairwise_distances, require_points,
                     sample_uniform_batch)


logger = logging.getLogger(__name__)

# Upper bound on elements of a block of center-to-point distances
_BLOCK = 2 ** 20

# Relative widening of chord radii before the exact geodesic check
_CHORD_SLACK = 1e-9


class Sandwich(collections.namedtuple('Sandwich',
                                      'space center inner outer')):
    """Net balls B(center, inner) inside and B(center, outer) around a ball.

    inner is None when the inner ball is empty. Radii may exceed the
    diameter, in which case the ball is the whole space.

    """
    __slots__ = ()

    def _contains(self, radius, coords):
        coords = np.atleast_2d(check_coords(self.space, coords))
        if radius is None:
            return np.zeros(coords.shape[0], dtype=bool)
        dist = pairwise_distances(self.space, self.center[None, :], coords)[0]
        return dist < radius

    def inner_contains(self, coords):
        return self._contains(self.inner, coords)

    def outer_contains(self, coords):
        return self._contains(self.outer, coords)

    @property
    def gap(self):
        return self.outer - (self.inner or 0.)


class BallNet(object):
    """Centers and radius grid of a finite family of balls.

    Parameters
    ----------
        space : Space
        centers : ndarray
            Coordinates of the centers, one row each.
        eps : float
            Separation of the centers.
        n : int or None
            Net parameter, eps = 1/(4n). None when eps was given directly.

    Attributes
    ----------
        delta : float
            Radius step, 2 eps.
        radii : ndarray
            0, delta, ..., K delta with K delta >= diameter + 2 delta.
        ahlfors : (float, float)
            Constants c1, c2 of the space.
        exhausted : bool
            True if the proposal budget ran out before maximality.

    """
    def __init__(self, space, centers, eps, n=None, seed=None,
                 proposals=0, exhausted=False):
        self.space = space
        self.center_coords = np.atleast_2d(np.asarray(centers))
        self.center_coords.setflags(write=False)
        self.eps = float(eps)
        self.n = n
        self.delta = 2. * self.eps
        K = int(math.ceil((space.diameter + 2. * self.delta) / self.delta))
        self.radii = self.delta * np.arange(K + 1)
        self.ahlfors = ahlfors_constants(space)
        self.seed = seed
        self.proposals = proposals
        self.exhausted = exhausted
        self._tree = cKDTree(embed(space, self.center_coords))

    def __getstate__(self):
        state = self.__dict__.copy()
        del state['_tree']
        return state

    def __setstate__(self, state):
        self.__dict__.update(state)
        self._tree = cKDTree(embed(self.space, self.center_coords))

    @property
    def centers(self):
        return [Point(self.space, row) for row in self.center_coords]

    @property
    def size(self):
        """|A'|: every (center, radius) pair plus the empty ball."""
        return len(self.center_coords) * len(self.radii) + 1

    def __len__(self):
        return len(self.center_coords)

    def __repr__(self):
        return 'BallNet({0}, eps={1:.6g}, centers={2}, radii={3})'.format(
            self.space.id, self.eps, len(self), len(self.radii))

    def nearest(self, coords):
        """Index of and geodesic distance to the nearest center of each row."""
        coords = np.atleast_2d(check_coords(self.space, coords))
        _, idx = self._tree.query(embed(self.space, coords), k=1)
        idx = np.asarray(idx, dtype=int)
        dist = paired_distances(self.space, coords, self.center_coords[idx])
        return idx, dist

    def sandwich(self, x, r):
        """Net balls A1 inside B(x, r) inside A2, radius gap 2 delta.

        Parameters
        ----------
            x : Point or array_like
            r : float
                In [0, diameter].

        """
        if isinstance(x, Point):
            x = x.coords
        r = utils.real_check(r, 'r')
        if r < 0 or r > self.space.diameter + 1e-12:
            raise DomainError("Invalid r '{0}'. It should be in [0, {1}]."
                              .format(r, self.space.diameter))
        idx, _ = self.nearest(x)
        center = self.center_coords[idx[0]]
        top = self.radii[-1]
        if r > self.space.diameter:
            return Sandwich(self.space, center, top, top)
        t = max(r - self.eps, 0.)
        i = min(int(math.floor(t / self.delta)), len(self.radii) - 3)
        inner = self.radii[i] if i > 0 else None
        return Sandwich(self.space, center, inner, self.radii[i + 2])

    def to_dict(self, centers=False):
        out = dict(space=self.space.id, n=self.n, eps=self.eps,
                   delta=self.delta, centers_count=len(self),
                   radii_count=len(self.radii), size=self.size,
                   ahlfors=list(self.ahlfors), seed=self.seed,
                   proposals=self.proposals, exhausted=self.exhausted)
        if centers:
            out['centers'] = coords_to_list(self.center_coords)
        return out


DiscrepancyResult = collections.namedtuple(
    'DiscrepancyResult',
    'net_sup slack certified_upper center radius side N centers')
DiscrepancyResult.__doc__ = """Discrepancy of a point set over a ball net.

certified_upper = net_sup + slack bounds the discrepancy over every ball.
(center, radius, side) locate the maximiser; side 'upper' means the count
exceeds N vol at radius -> radius+, 'lower' the reverse at radius.
"""


def build_net(space, n, rng, eps=None, patience=None, patience_floor=None,
              batch=None, max_proposals=None, seed=None):
    """Greedy maximal eps-separated set from a uniform proposal stream.

    A proposal is accepted when it is at distance >= eps from every center
    so far. The net is declared maximal after
    patience * |centers| + patience_floor consecutive rejections.

    Parameters
    ----------
        space : Space
        n : int
            Net parameter, eps = 1/(4n).
        rng : numpy Generator or int
        eps : float, optional
            Separation to use instead of 1/(4n).
        patience, patience_floor, batch, max_proposals : int
            Defaults from config.

    """
    require_points(space)
    if eps is None:
        n = utils.int_check(n, 'n', minimum=1)
        eps = 1. / (4. * n)
    else:
        n = None
        eps = utils.real_check(eps, 'eps')
        if eps <= 0:
            raise ValidationError("Invalid eps '{0}'. It should be > 0."
                                  .format(eps))
    patience = tools.config_default('net_patience', patience)
    patience_floor = tools.config_default('net_patience_floor', patience_floor)
    batch = tools.config_default('net_batch', batch)
    max_proposals = tools.config_default('net_max_proposals', max_proposals)
    if not isinstance(rng, np.random.Generator):
        seed = utils.int_check(rng, 'seed', minimum=0)
    rng = utils.as_rng(rng)

    reach = chord_of(space, eps) * (1. + _CHORD_SLACK)
    centers = np.zeros((0, space.ambient), dtype=space.dtype)
    tree = None
    streak = 0
    spent = 0
    done = False
    while not done and spent < max_proposals:
        C = sample_uniform_batch(space, min(batch, max_proposals - spent), rng)
        E = embed(space, C)
        if tree is None:
            ok = np.ones(len(C), dtype=bool)
        else:
            _, idx = tree.query(E, k=1)
            ok = paired_distances(space, C, centers[idx]) >= eps

        if not np.any(ok):
            need = patience * len(centers) + patience_floor - streak
            if len(C) >= need:
                spent += need
                done = True
            else:
                spent += len(C)
                streak += len(C)
            continue

        # greedy pass in proposal order over the survivors of the batch
        survivors = np.flatnonzero(ok)
        local = cKDTree(E[survivors])
        removed = np.zeros(len(C), dtype=bool)
        added = []
        for j in range(len(C)):
            spent += 1
            if not ok[j] or removed[j]:
                streak += 1
                if streak >= (patience * (len(centers) + len(added))
                              + patience_floor):
                    done = True
                    break
                continue
            added.append(j)
            streak = 0
            hits = survivors[np.asarray(local.query_ball_point(E[j], reach),
                                        dtype=int)]
            hits = hits[hits > j]
            if hits.size:
                dist = pairwise_distances(space, C[j][None, :], C[hits])[0]
                removed[hits[dist < eps]] = True
        if added:
            centers = np.vstack([centers, C[added]])
            tree = cKDTree(embed(space, centers))
        logger.debug("net %s: %d centers after %d proposals",
                     space.id, len(centers), spent)

    exhausted = not done
    if exhausted:
        warnings.warn("Net budget of {0} proposals exhausted before the net "
                      "was declared maximal ({1} centers)."
                      .format(max_proposals, len(centers)))
    logger.info("net on %s with eps=%.6g: %d centers, %d proposals",
                space.id, eps, len(centers), spent)
    return BallNet(space, centers, eps, n=n, seed=seed, proposals=spent,
                   exhausted=exhausted)


def _point_coords(space, points):
    if hasattr(points, 'coords') and not isinstance(points, Point):
        if getattr(points, 'space', space) != space:
            raise ValidationError("Sample on '{0}' used on '{1}'."
                                  .format(points.space.id, space.id))
        points = points.coords
    if isinstance(points, Point):
        points = [points]
    if isinstance(points, (list, tuple)):
        if len(points) == 0:
            return np.zeros((0, space.ambient), dtype=space.dtype)
        rows = []
        for p in points:
            if isinstance(p, Point):
                if p.space != space:
                    raise ValidationError("Point on '{0}' used on '{1}'."
                                          .format(p.space.id, space.id))
                rows.append(p.coords)
            else:
                rows.append(check_coords(space, p))
        return np.vstack(rows)
    points = np.asarray(points)
    if points.size == 0:
        return np.zeros((0, space.ambient), dtype=space.dtype)
    return np.atleast_2d(check_coords(space, points))


def count_in_ball(points, ball):
    """Number of points strictly inside the open ball.

    Parameters
    ----------
        points : list of Point, coordinate array or SampleSet
        ball : Ball

    """
    if not isinstance(ball, Ball):
        raise TypeError("Invalid ball '{0}'. It should be Ball.".format(ball))
    X = _point_coords(ball.space, points)
    if X.shape[0] == 0:
        return 0
    return int(np.count_nonzero(ball.contains(X)))


def _row_sups(space, D):
    """Exact sup over r of |count - N vol| for each row of distances D."""
    c, N = D.shape
    diam = space.diameter
    if N == 0:
        zeros = np.zeros(c)
        return zeros, zeros.copy(), np.array(['lower'] * c, dtype=object)
    D = np.sort(D, axis=1)
    pos = np.arange(N)

    # counts <= t and < t at every sorted distance t, ties included
    last = np.ones((c, N), dtype=bool)
    last[:, :-1] = D[:, 1:] != D[:, :-1]
    first = np.ones((c, N), dtype=bool)
    first[:, 1:] = D[:, 1:] != D[:, :-1]
    right = np.minimum.accumulate(np.where(last, pos + 1, N + 1)[:, ::-1],
                                  axis=1)[:, ::-1]
    left = np.maximum.accumulate(np.where(first, pos, -1), axis=1)

    NV = N * ball_volume(space, D)
    upper = np.where(D < diam, right - NV, -np.inf)
    lower = NV - left
    full = N - np.count_nonzero(D < diam, axis=1)

    iu = np.argmax(upper, axis=1)
    il = np.argmax(lower, axis=1)
    rows = np.arange(c)
    up = upper[rows, iu]
    lo = lower[rows, il]

    value = np.maximum(np.maximum(up, lo), np.maximum(full, 0.))
    radius = np.where(up >= lo, D[rows, iu], D[rows, il])
    side = np.where(up >= lo, 'upper', 'lower').astype(object)
    at_full = full > np.maximum(up, lo)
    radius = np.where(at_full, diam, radius)
    side[at_full] = 'lower'
    return value, radius, side


def per_center_sup(points, space, center):
    """Exact sup over r in [0, diameter] of |N_B(center, r) - N vol B|.

    Returns
    -------
        (value, radius, side)

    """
    if isinstance(center, Point):
        center = center.coords
    center = np.atleast_2d(check_coords(space, center))
    X = _point_coords(space, points)
    D = pairwise_distances(space, center, X) if X.shape[0] else \
        np.zeros((1, 0))
    value, radius, side = _row_sups(space, D)
    return float(value[0]), float(radius[0]), side[0]


def discrepancy_sup(points, space, net):
    """Discrepancy over the net centers with a certified slack.

    slack = N c2 D diameter^(D - 1) / n bounds the change in N vol between
    the sandwich balls and any ball, so certified_upper bounds the
    discrepancy over all balls.

    Parameters
    ----------
        points : list of Point, coordinate array or SampleSet
        space : Space
        net : BallNet

    """
    if not isinstance(space, Space):
        raise TypeError("Invalid space '{0}'. "
                        "It should be Space.".format(space))
    if not isinstance(net, BallNet) or net.space != space:
        raise ValidationError("Invalid net for '{0}'.".format(space.id))
    X = _point_coords(space, points)
    N = X.shape[0]

    best = (-1., 0, 0., 'lower')
    rows = max(1, _BLOCK // max(1, N))
    for start in range(0, len(net), rows):
        centers = net.center_coords[start:start + rows]
        D = (pairwise_distances(space, centers, X) if N else
             np.zeros((len(centers), 0)))
        value, radius, side = _row_sups(space, D)
        i = int(np.argmax(value))
        if value[i] > best[0]:
            best = (float(value[i]), start + i, float(radius[i]), side[i])

    c2 = net.ahlfors[1]
    D_real = space.dim_real
    slack = (N * c2 * D_real * space.diameter ** (D_real - 1)
             * 4. * net.eps)
    net_sup = max(best[0], 0.)
    return DiscrepancyResult(net_sup=net_sup, slack=slack,
                             certified_upper=net_sup + slack,
                             center=coords_to_list(
                                 net.center_coords[best[1]]),
                             radius=best[2], side=best[3], N=N,
                             centers=len(net))


def covering_check(net, queries):
    """Largest distance from a query point to its nearest net center."""
    queries = np.atleast_2d(check_coords(net.space, queries))
    _, dist = net.nearest(queries)
    return float(np.max(dist)) if dist.size else 0.
