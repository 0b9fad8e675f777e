"""Low-level functions not meant for user access

Functions used to maintain consistency for certain Python tasks,
e.g. type checking of function arguments and seeding of random substreams.
Users should not expect any function inside this module to keep a
consistent API, as they are only used internally.

"""
from __future__ import absolute_import

import json
import numbers
import os

import numpy as np

from .errors import ValidationError


def type_check(arg, arg_types, arg_name):
    """Check if argument is of one or multiple allowed types.

    Pass if argument is within an allowed type, and raise TypeError
    if argument is not within these types.

    Parameters
    ----------
        arg : [any type]
            Argument that can be of any type.
        arg_types : list or [any type]
            Type or list of allowed argument types.
        arg_name : string
            Name of argument to be printed in exception.

    Example
    -------
        type_check(reps, numbers.Integral, 'reps') # pass

    """
    if not isinstance(arg_types, list):
        arg_types = [arg_types]

    # bool is an int subclass but never a valid count
    if isinstance(arg, bool) and bool not in arg_types:
        raise TypeError("Invalid {0} '{1}'. It should be {2}."
                        .format(arg_name, arg, _type_names(arg_types)))

    if not any(isinstance(arg, arg_type) for arg_type in arg_types):
        raise TypeError("Invalid {0} '{1}'. It should be {2}."
                        .format(arg_name, arg, _type_names(arg_types)))


def _type_names(arg_types):
    return ' or '.join(getattr(t, '__name__', str(t)) for t in arg_types)


def int_check(arg, arg_name, minimum=None):
    """Check that argument is an integer, optionally bounded below.

    Parameters
    ----------
        arg : int
            Argument to check.
        arg_name : string
            Name of argument to be printed in exception.
        minimum : int
            Smallest allowed value. No bound if None.

    """
    type_check(arg, numbers.Integral, arg_name)
    if minimum is not None and arg < minimum:
        raise ValidationError("Invalid {0} '{1}'. It should be >= {2}."
                              .format(arg_name, arg, minimum))
    return int(arg)


def real_check(arg, arg_name):
    """Check that argument is a finite real number and return it as float."""
    type_check(arg, numbers.Real, arg_name)
    arg = float(arg)
    if not np.isfinite(arg):
        raise ValidationError("Invalid {0} '{1}'. It should be finite."
                              .format(arg_name, arg))
    return arg


def kwargs_check(kwargs, validator, error=ValidationError):
    """Check kwargs for validity

    Parameters
    ----------
        kwargs : dict
            Keyword arguments to check for validity.
        validator : iterable
            Iterable of valid arguments to check from.
        error : exception class
            Raised on the first invalid keyword.

    """
    for key in kwargs:
        if key not in validator:
            raise error("Invalid keyword '{0}'.".format(key))


def substream(seed, *index):
    """Return an independent random Generator for (seed, index...).

    The index tuple is hashed into the seed sequence, so that the stream of
    replicate i does not depend on how many other replicates exist or on
    the order in which they are run.

    Parameters
    ----------
        seed : int
            Master seed (64-bit nonnegative integer).
        index : int
            Any number of nonnegative integers naming the substream.

    """
    seq = np.random.SeedSequence(int(seed), spawn_key=tuple(int(i) for i in index))
    return np.random.default_rng(seq)


def as_rng(rng):
    """Accept a Generator or an integer seed and return a Generator."""
    if isinstance(rng, np.random.Generator):
        return rng
    if isinstance(rng, numbers.Integral) and not isinstance(rng, bool):
        return substream(rng)
    raise TypeError("Invalid rng '{0}'. "
                    "It should be numpy Generator or int seed.".format(rng))


def load_json_dict(filename, *args):
    """Check if file exists. Return {} if something fails.

    Parameters
    ----------
        filename : string
            Filename of file to check.

    """
    data = {}
    if os.path.exists(filename):
        with open(filename, "r") as f:
            try:
                data = json.load(f)
                if not isinstance(data, dict):
                    data = {}
            except ValueError:
                pass
        if args:
            return {key: data[key] for key in args if key in data}
    return data


def save_json_dict(filename, json_dict):
    """Will error if filename is not appropriate, but it's checked elsewhere.

    Parameters
    ----------
        filename : string
            Filename of json_dict to save.
        json_dict : dict
            Dict that will be saved as json.

    """
    if isinstance(json_dict, dict):
        with open(filename, 'w') as f:
            f.write(json.dumps(json_dict, indent=4, sort_keys=True))
    else:
        raise TypeError("Couldn't save because 'json_dict' "
                        "was not a dictionary.")
