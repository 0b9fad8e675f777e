"""Functions meant for user access

Configuration management. Defaults are in 'auth.py'; the user's copy lives
in '~/.dppdisc/config.json'.

"""
from __future__ import absolute_import

import logging
import numbers
import os
import warnings

import six

from . import auth
from . import utils
from .auth import AUTH_DIR, FILE_CONTENT, CONFIG_FILE
from .errors import ConfigError
from .valid import VALID_CONFIG_KEYS, VALID_LOG_LEVELS


logger = logging.getLogger(__name__)

# Expected type and lower bound of each config value
_CONFIG_TYPES = {
    'workers': (numbers.Integral, 1),
    'proposal_batch': (numbers.Integral, 1),
    'max_proposals': (numbers.Integral, 1),
    'net_patience': (numbers.Integral, 0),
    'net_patience_floor': (numbers.Integral, 1),
    'net_batch': (numbers.Integral, 1),
    'net_max_proposals': (numbers.Integral, 1),
    'quad_epsabs': (numbers.Real, 0),
    'quad_epsrel': (numbers.Real, 0),
}


def ensure_local_files():
    """Ensure that filesystem is setup/filled out in a valid way."""
    if auth.check_file_permissions():

        if not os.path.isdir(AUTH_DIR):
            os.mkdir(AUTH_DIR)

        for fn in [CONFIG_FILE]:
            contents = utils.load_json_dict(fn)

            for key, value in list(FILE_CONTENT[fn].items()):
                if key not in contents:
                    contents[key] = value
            contents_keys = list(contents.keys())

            for key in contents_keys:
                if key not in FILE_CONTENT[fn]:
                    del contents[key]
            utils.save_json_dict(fn, contents)

    else:
        warnings.warn("Looks like you don't have 'read-write' permission to "
                      "your specified home ('~') directory.")


def check_config_value(key, value):
    """Type-check one config value.

    Parameters
    ----------
        key : string
            Config key, one of VALID_CONFIG_KEYS.
        value : [any type]
            Candidate value.

    """
    if key not in VALID_CONFIG_KEYS:
        raise ConfigError("Invalid keyword '{0}'.".format(key))

    if key == 'log_level':
        if not isinstance(value, six.string_types):
            raise TypeError("Invalid log_level '{0}'. "
                            "It should be string.".format(value))
        if value.upper() not in VALID_LOG_LEVELS:
            raise ConfigError("Invalid log_level '{0}'. It should be one of "
                              "{1}.".format(value, sorted(VALID_LOG_LEVELS)))
        return value.upper()

    arg_type, minimum = _CONFIG_TYPES[key]
    utils.type_check(value, arg_type, key)
    if value < minimum:
        raise ConfigError("Invalid {0} '{1}'. It should be >= {2}."
                          .format(key, value, minimum))
    return value


def set_config_file(**kwargs):
    """Set the keyword-value pairs in `~/.dppdisc/config.json`.

    Parameters
    ----------
        workers : int
            Default worker count for replicate and scan pools.
        proposal_batch : int
            Candidates drawn per rejection batch in the DPP sampler.
        max_proposals : int
            Per-point rejection budget of the DPP sampler.
        net_patience : int
            Consecutive rejected proposals per net center before a greedy
            net is declared maximal.
        net_patience_floor : int
            Additive floor on the above.
        net_batch : int
            Proposals drawn per batch while building a net.
        net_max_proposals : int
            Total proposal budget of a net; a warning is issued when it runs
            out before the net is declared maximal.
        quad_epsabs : float
            Absolute tolerance of inner quadratures.
        quad_epsrel : float
            Relative tolerance of outer quadratures.
        log_level : string
            Default log level of the command line tool.

    """
    if not auth.check_file_permissions():
        raise ConfigError("You don't have proper file permissions "
                          "to run this function.")

    utils.kwargs_check(kwargs, VALID_CONFIG_KEYS, ConfigError)
    config = get_config_file()

    # Check everything before writing anything
    checked = {}
    for key, value in kwargs.items():
        if value is not None:
            checked[key] = check_config_value(key, value)

    config.update(checked)
    utils.save_json_dict(CONFIG_FILE, config)
    ensure_local_files()
    logger.info("Updated config keys %s", sorted(checked))


def get_config_file(*args):
    """
    Return specified args from `~/.dppdisc/config.json` as dict.
    Return all if no arguments are specified.

    Example
    -------
        get_config_file('workers')

    """
    if auth.check_file_permissions():
        ensure_local_files()
        return utils.load_json_dict(CONFIG_FILE, *args)
    else:
        defaults = FILE_CONTENT[CONFIG_FILE]
        if args:
            return {key: defaults[key] for key in args if key in defaults}
        return dict(defaults)


def reset_config_file():
    """Reset config file to package defaults."""
    ensure_local_files()  # Make sure what's there is OK
    f = open(CONFIG_FILE, 'w')
    f.close()
    ensure_local_files()


def config_default(key, value=None):
    """Return value, or the configured default for key when value is None."""
    if value is not None:
        return value
    config = get_config_file(key)
    if key in config:
        return config[key]
    return FILE_CONTENT[CONFIG_FILE][key]
