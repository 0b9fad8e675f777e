"""Scan result tables

ScanTable is a wrapper on top of DataFrame that holds one row per
(level, radius) of a scaling experiment, with stable CSV / JSON output
and log-log fits of any column against N.

"""
from __future__ import absolute_import

import collections
import io
import json
import logging

import numpy as np
import pandas as pd
import six
from scipy import stats

from . import utils
from .errors import DomainError, ValidationError
from .valid import SCAN_COLUMNS, SCAN_COLUMNS_VERSION


logger = logging.getLogger(__name__)

# Columns that hold integers and strings; all others are floats
_INT_COLUMNS = ('L', 'N', 'seed')
_STR_COLUMNS = ('space', 'ensemble')


ScalingFit = collections.namedtuple(
    'ScalingFit', 'rows slope intercept r2 target tolerance passed')
ScalingFit.__doc__ = """Least-squares fit of log y against log N.

passed is True iff |slope - target| <= tolerance.
"""


def fit_exponent(rows, target, tolerance):
    """Fit y = exp(intercept) N^slope by least squares on (log N, log y).

    Parameters
    ----------
        rows : sequence of (N, y)
            At least 3 rows with y > 0 and two distinct N.
        target : float
            Expected exponent.
        tolerance : float
            Allowed |slope - target|.

    Examples
    --------
        fit_exponent([(4, 2.), (16, 4.), (64, 8.)], 0.5, 0.05).slope  # 0.5

    """
    target = utils.real_check(target, 'target')
    tolerance = utils.real_check(tolerance, 'tolerance')
    rows = [(float(n), float(y)) for n, y in rows]
    if len(rows) < 3:
        raise ValidationError("Invalid rows: need at least 3, got {0}."
                              .format(len(rows)))
    x = np.array([r[0] for r in rows])
    y = np.array([r[1] for r in rows])
    if np.any(~np.isfinite(y)) or np.any(y <= 0) or np.any(x <= 0):
        raise DomainError("Invalid rows: N and y should be positive.")
    if np.unique(x).size < 2:
        raise DomainError("Invalid rows: N should take two distinct values.")

    fit = stats.linregress(np.log(x), np.log(y))
    r2 = float(min(max(fit.rvalue ** 2, 0.), 1.))
    slope = float(fit.slope)
    return ScalingFit(rows=rows, slope=slope, intercept=float(fit.intercept),
                      r2=r2, target=target, tolerance=tolerance,
                      passed=bool(abs(slope - target) <= tolerance))


class ScanTable(object):
    """Rows of a scaling experiment based on pandas DataFrame.

    Parameters
    ----------
        df : DataFrame or list of dict
            Rows with the scan columns, in row order.
        errors : dict, optional
            Row index -> message for rows where a stage failed.
        meta : dict, optional
            Free-form provenance (config, net sizes).

    """
    def __init__(self, df, errors=None, meta=None):
        if isinstance(df, list):
            df = pd.DataFrame(df)
        if not isinstance(df, pd.DataFrame):
            raise TypeError("Invalid df '{0}'. "
                            "It should be DataFrame or list.".format(df))
        missing = [c for c in SCAN_COLUMNS if c not in df.columns]
        if missing:
            raise ValidationError("Invalid scan table: missing columns {0}."
                                  .format(missing))
        df = df.loc[:, list(SCAN_COLUMNS)].reset_index(drop=True)
        for col in SCAN_COLUMNS:
            if col in _INT_COLUMNS:
                df[col] = df[col].astype('int64')
            elif col not in _STR_COLUMNS:
                df[col] = pd.to_numeric(df[col], errors='coerce')
                df[col] = df[col].astype(float)
        self.df = df
        self.errors = dict(errors or {})
        self.meta = dict(meta or {})

    def __repr__(self):
        return str(self.to_frame())

    def __len__(self):
        return len(self.df)

    def __getitem__(self, column):
        return self.df[column]

    def __eq__(self, other):
        return isinstance(other, ScanTable) and self.df.equals(other.df)

    def __ne__(self, other):
        return not self.__eq__(other)

    __hash__ = None

    @property
    def shape(self):
        return self.df.shape

    def head(self, n=5):
        """Return first n rows as a DataFrame."""
        return self.df.head(n)

    def tail(self, n=5):
        """Return last n rows as a DataFrame."""
        return self.df.tail(n)

    def to_frame(self):
        """Return a copy of the underlying DataFrame."""
        return self.df.copy()

    def to_csv(self, path=None):
        """Write the versioned CSV layout; return it as a string if no path."""
        text = self.df.to_csv(index=False, columns=list(SCAN_COLUMNS))
        if path is None:
            return text
        with open(path, 'w') as f:
            f.write(text)

    @classmethod
    def from_csv(cls, source):
        """Read a table written by to_csv from a path or a CSV string."""
        if isinstance(source, six.string_types) and '\n' in source:
            source = io.StringIO(source)
        df = pd.read_csv(source, float_precision='round_trip')
        if tuple(df.columns) != SCAN_COLUMNS:
            raise ValidationError("Invalid scan CSV: columns {0} do not match "
                                  "layout version {1}."
                                  .format(list(df.columns),
                                          SCAN_COLUMNS_VERSION))
        return cls(df)

    def to_dict(self):
        rows = []
        for row in self.df.to_dict(orient='records'):
            rows.append({k: (None if isinstance(v, float) and np.isnan(v)
                             else (int(v) if k in _INT_COLUMNS else v))
                         for k, v in row.items()})
        return dict(version=SCAN_COLUMNS_VERSION,
                    columns=list(SCAN_COLUMNS),
                    rows=rows,
                    errors={str(k): v for k, v in sorted(self.errors.items())},
                    meta=self.meta)

    def to_json(self, path=None):
        """JSON with version, rows, per-row errors and metadata."""
        text = json.dumps(self.to_dict(), indent=2, sort_keys=True)
        if path is None:
            return text
        with open(path, 'w') as f:
            f.write(text)

    @classmethod
    def from_json(cls, source):
        if isinstance(source, six.string_types) and source.lstrip()[:1] == '{':
            data = json.loads(source)
        else:
            with open(source) as f:
                data = json.load(f)
        if data.get('version') != SCAN_COLUMNS_VERSION:
            raise ValidationError("Invalid scan JSON version '{0}'."
                                  .format(data.get('version')))
        df = pd.DataFrame(data['rows'], columns=list(SCAN_COLUMNS))
        errors = {int(k): v for k, v in data.get('errors', {}).items()}
        return cls(df, errors=errors, meta=data.get('meta'))

    def fit(self, column, target, tolerance, radius=None):
        """Fit the exponent of column against N at one radius.

        Parameters
        ----------
            column : string
                One of the scan columns, e.g. 'var_emp' or 'disc_net'.
            target, tolerance : float
                Passed to fit_exponent.
            radius : float, optional
                Required when the table holds several radii.

        """
        if column not in SCAN_COLUMNS:
            raise ValidationError("Invalid column '{0}'.".format(column))
        df = self.df
        radii = np.unique(df['radius'].values)
        if radius is None:
            if radii.size != 1:
                raise ValidationError("Table holds {0} radii; pass radius."
                                      .format(radii.size))
            radius = radii[0]
        df = df[np.isclose(df['radius'].values, radius, rtol=0, atol=1e-12)]
        df = df[np.isfinite(df[column].values.astype(float))]
        return fit_exponent(list(zip(df['N'].values, df[column].values)),
                            target, tolerance)
