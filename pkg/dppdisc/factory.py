"""High-level lookups meant for user access

Spaces are selected by string id ('s2', 'rp3', 'cp1', 'hp2', 'op2') and
kernels by (ensemble, space id, level).

"""
from __future__ import absolute_import

import re

import six

from .catalog.table import FAMILIES
from .ensembles import EnsembleKernel
from .errors import ValidationError
from .spaces import Space
from .valid import VALID_ENSEMBLES


_SPACE_ID = re.compile(r'^(s|rp|cp|hp|op)(\d+)$')


def get_space(space_id):
    """Return the Space named by space_id.

    Parameters
    ----------
        space_id : string
            Family prefix followed by the dimension index, e.g. 's2', 'cp3'.
            The octonionic plane is 'op2'.

    """
    if isinstance(space_id, Space):
        return space_id
    if not isinstance(space_id, six.string_types):
        raise TypeError("Invalid space '{0}'. "
                        "It should be string.".format(space_id))
    match = _SPACE_ID.match(space_id.strip().lower())
    if match is None:
        raise ValidationError("Space not found '{0}'.".format(space_id))
    return Space(match.group(1), int(match.group(2)))


def get_spaces(max_d=4):
    """Return a list of example space ids of every family up to max_d."""
    ids = []
    for family in sorted(FAMILIES):
        if family == 'op':
            ids.append('op2')
            continue
        low = FAMILIES[family]['min_d']
        ids.extend('{0}{1}'.format(family, d) for d in range(low, max_d + 1))
    return ids


def get_kernel(ensemble, space_id, L):
    """Return the EnsembleKernel for ensemble on space_id at level L.

    Parameters
    ----------
        ensemble : {'harmonic', 'projective'}
        space_id : string or Space
            Must be complex projective for the projective ensemble.
        L : int

    """
    if ensemble not in VALID_ENSEMBLES:
        raise ValidationError("Ensemble not found '{0}'.".format(ensemble))
    return EnsembleKernel(ensemble, get_space(space_id), L)
