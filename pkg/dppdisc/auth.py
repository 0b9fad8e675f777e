"""Functions that manage configuration writing

Defaults for sampling, nets and quadrature live here; 'tools.py' reads and
writes the user's copy.

"""
from __future__ import absolute_import

import os


package = 'dppdisc'

AUTH_DIR = os.path.join(os.path.expanduser('~'), '.' + package)
TEST_DIR = os.path.join(AUTH_DIR, 'test')
TEST_FILE = os.path.join(AUTH_DIR, 'permission_test')
CONFIG_FILE = os.path.join(AUTH_DIR, 'config.json')

DEFAULTS = {
    # process pools for replicates and scan rows
    'workers': 1,
    # DPP sampler: candidates per rejection batch, per-point budget
    'proposal_batch': 64,
    'max_proposals': 1000000,
    # greedy nets: patience * |centers| + floor consecutive rejections
    'net_patience': 200,
    'net_patience_floor': 10000,
    'net_batch': 4096,
    'net_max_proposals': 100000000,
    # scipy.integrate.quad, inner absolute and outer relative
    'quad_epsabs': 1e-9,
    'quad_epsrel': 1e-8,
    'log_level': 'WARNING',
}

FILE_CONTENT = {CONFIG_FILE: DEFAULTS}

# None until the first check
_file_permissions = None


def _permissions():
    """Test write access to AUTH_DIR with a scratch directory and file."""
    try:
        if not os.path.exists(AUTH_DIR):
            os.mkdir(AUTH_DIR)
        os.mkdir(TEST_DIR)
        os.rmdir(TEST_DIR)
        with open(TEST_FILE, 'w') as f:
            f.write('Testing\n')
        os.remove(TEST_FILE)
        return True
    except OSError:
        return False


def check_file_permissions():
    """Return True if write permissions, else return False.

    The check runs once per process.
    """
    global _file_permissions
    if _file_permissions is None:
        _file_permissions = _permissions()
    return _file_permissions
