"""Validity module not meant for user access

dppdisc functions check against these sets below to guard
against bad input.

"""
# flake8: noqa

# Space families, keyed by the id prefix used on the command line
VALID_FAMILIES = {'s', 'rp', 'cp', 'hp', 'op',}

# Families with point types and uniform sampling
SAMPLING_FAMILIES = {'s', 'rp', 'cp',}

# Families stored as projective quotients (gauge-invariant representatives)
PROJECTIVE_FAMILIES = {'rp', 'cp', 'hp', 'op',}

VALID_ENSEMBLES = {'harmonic', 'projective',}

# Keys of the persistent config file
VALID_CONFIG_KEYS = {'workers', 'proposal_batch', 'max_proposals',
                     'net_patience', 'net_patience_floor', 'net_batch',
                     'net_max_proposals',
                     'quad_epsabs', 'quad_epsrel', 'log_level',}

VALID_LOG_LEVELS = {'DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL',}

# Fields of a scan experiment config (flat JSON)
VALID_EXPERIMENT_FIELDS = {'ensemble', 'space', 'levels', 'radii', 'net_n',
                           'reps', 'pairs', 'disc_reps', 'seed', 'out',
                           'workers', 'M',}

REQUIRED_EXPERIMENT_FIELDS = {'ensemble', 'space', 'levels', 'radii', 'seed',}

# Versioned scan CSV layout
SCAN_COLUMNS_VERSION = 1
SCAN_COLUMNS = ('space', 'ensemble', 'L', 'N', 'radius',
                'var_emp', 'var_emp_se', 'var_mc', 'var_mc_se', 'var_bound',
                'disc_net', 'disc_slack', 'threshold_t', 'seed',)

VALID_FORMATS = {'csv', 'json',}

# Tail check table
TAIL_COLUMNS = ('t', 'freq', 'freq_se', 'bound',)
