"""Command line tool

    dppdisc spaces
    dppdisc sample --ensemble harmonic --space s2 --level 4 --seed 1 --reps 10
    dppdisc discrepancy --in sample.json --net-n 16 --seed 1
    dppdisc variance --space s2 --level 4 --radius 1.047 --seed 1
    dppdisc tails --space s2 --level 4 --radius 1.047 --seed 1
    dppdisc scan --config experiment.json --out scan.csv
    dppdisc fit --in scan.csv --column var_emp

Data go to --out or standard output, log lines to standard error.
--format picks csv or json output on every subcommand. spaces, tails
and scan default to csv, the others to json. A csv of a
JSON report is one flattened row (samples: one row per point,
discrepancy: one row per sample). --workers is taken by sample,
discrepancy, variance, tails and scan.

Exit codes: 0 success, 1 failed fit (fit only; the report is still
written), 2 invalid input or a space without points, 3 numerical failure.

"""
from __future__ import absolute_import

import argparse
import json
import logging
import sys

import numpy as np
import pandas as pd

from . import tools
from . import utils
from .core import ExperimentConfig, expected_rates, run_scaling
from .discrepancy import build_net, count_in_ball, discrepancy_sup
from .errors import NumericalError, ValidationError
from .factory import get_kernel, get_space, get_spaces
from .sampler import SampleSet, run_jobs, sample_replicates
from .scan import ScanTable
from .spaces import Ball, Point, require_points
from .tails import empirical_tail_check
from .valid import VALID_ENSEMBLES, VALID_FORMATS, VALID_LOG_LEVELS
from .variance import count_stats, variance_report
from .version import __version__


logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED_FIT = 1
EXIT_INVALID = 2
EXIT_NUMERICAL = 3


def _emit(text, out):
    if out is None:
        sys.stdout.write(text)
        if not text.endswith('\n'):
            sys.stdout.write('\n')
    else:
        with open(out, 'w') as f:
            f.write(text)
        logger.info("wrote %s", out)


def _dumps(data):
    return json.dumps(data, indent=2, sort_keys=True)


def _frame_text(df, fmt):
    if fmt == 'json':
        return df.to_json(orient='records', indent=2)
    return df.to_csv(index=False)


def _flat(data, prefix=''):
    """One-level dict of scalars; nested dicts join keys with '_'."""
    out = {}
    for key, value in data.items():
        name = prefix + key
        if isinstance(value, dict):
            out.update(_flat(value, name + '_'))
        elif isinstance(value, (list, tuple)):
            out[name] = json.dumps(value)
        else:
            out[name] = value
    return out


def _payload_text(data, fmt, rows=None):
    """JSON payload, or a CSV of rows (default: data flattened to one row)."""
    if fmt == 'json':
        return _dumps(data)
    if rows is None:
        rows = [_flat(data)]
    return pd.DataFrame(rows).to_csv(index=False)


def _ball(space, radius):
    require_points(space)
    center = np.zeros(space.ambient)
    center[0] = 1.
    return Ball(Point(space, center), radius)


def cmd_spaces(args):
    rows = [get_space(sid).to_dict() for sid in get_spaces(args.max_d)]
    _emit(_frame_text(pd.DataFrame(rows), args.format), args.out)


def _point_rows(sample, rep):
    X = np.asarray(sample.coords)
    rows = []
    for k, x in enumerate(X):
        row = dict(rep=rep, seed=sample.seed, point=k)
        for j, value in enumerate(x):
            if np.iscomplexobj(X):
                row['re{0}'.format(j)] = value.real
                row['im{0}'.format(j)] = value.imag
            else:
                row['x{0}'.format(j)] = value
        rows.append(row)
    return rows


def cmd_sample(args):
    kernel = get_kernel(args.ensemble, args.space, args.level)
    samples = sample_replicates(kernel, args.reps, args.seed,
                                workers=args.workers)
    rows = [row for i, s in enumerate(samples) for row in _point_rows(s, i)]
    _emit(_payload_text(dict(samples=[s.to_dict() for s in samples]),
                        args.format, rows), args.out)


def _discrepancy_job(job):
    sample, space, net = job
    return discrepancy_sup(sample, space, net)


def cmd_discrepancy(args):
    with open(args.input) as f:
        data = json.load(f)
    payload = data.get('samples', [data]) if isinstance(data, dict) else data
    samples = [SampleSet.from_dict(s) for s in payload]
    if not samples:
        raise ValidationError("No samples in '{0}'.".format(args.input))
    space = samples[0].space
    if any(s.space != space for s in samples):
        raise ValidationError("Samples live on different spaces.")
    net = build_net(space, args.net_n, args.seed)
    workers = utils.int_check(tools.config_default('workers', args.workers),
                              'workers', minimum=1)
    found = run_jobs(_discrepancy_job, [(s, space, net) for s in samples],
                     workers)
    results = [dict(res._asdict(), seed=s.seed, stream=list(s.stream))
               for s, res in zip(samples, found)]
    _emit(_payload_text(dict(net=net.to_dict(), results=results), args.format,
                        [_flat(res) for res in results]), args.out)


def cmd_variance(args):
    kernel = get_kernel(args.ensemble, args.space, args.level)
    ball = _ball(kernel.space, args.radius)
    report = variance_report(kernel, ball, args.reps, args.pairs, args.seed,
                             workers=args.workers)
    _emit(_payload_text(report.to_dict(), args.format), args.out)


def cmd_tails(args):
    kernel = get_kernel(args.ensemble, args.space, args.level)
    ball = _ball(kernel.space, args.radius)
    reps = utils.int_check(args.reps, 'reps', minimum=1000)
    samples = sample_replicates(kernel, reps, args.seed,
                                workers=args.workers)
    if args.t_grid:
        grid = [float(t) for t in args.t_grid.split(',')]
    else:
        sd = np.sqrt(count_stats([count_in_ball(s, ball) for s in samples])[1])
        grid = list(sd * np.arange(10) / 2.)
    frame = empirical_tail_check(kernel, ball, reps, grid, args.seed,
                                 samples=samples)
    _emit(_frame_text(frame, args.format), args.out)


def cmd_scan(args):
    with open(args.config) as f:
        data = json.load(f)
    if args.seed is not None:
        data['seed'] = args.seed
    if args.workers is not None:
        data['workers'] = args.workers
    data.pop('out', None)
    table = run_scaling(ExperimentConfig.from_dict(data))
    if table.errors:
        logger.warning("%d row(s) with failed stages", len(table.errors))
    text = table.to_json() if args.format == 'json' else table.to_csv()
    _emit(text, args.out)


def cmd_fit(args):
    if args.input.endswith('.json'):
        table = ScanTable.from_json(args.input)
    else:
        table = ScanTable.from_csv(args.input)
    target = args.target
    if target is None:
        space = get_space(table['space'].iloc[0])
        target = expected_rates(space)[args.column]
    fit = table.fit(args.column, target, args.tolerance, radius=args.radius)
    _emit(_payload_text(dict(fit._asdict(), column=args.column), args.format),
          args.out)
    return EXIT_OK if fit.passed else EXIT_FAILED_FIT


def _kernel_args(parser):
    parser.add_argument('--ensemble', choices=sorted(VALID_ENSEMBLES),
                        default='harmonic')
    parser.add_argument('--space', required=True, help="space id, e.g. s2")
    parser.add_argument('--level', type=int, required=True)


def make_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--log-level', type=str.upper,
                        choices=sorted(VALID_LOG_LEVELS), default=None)
    common.add_argument('--out', default=None,
                        help="output file (default: standard output)")

    parser = argparse.ArgumentParser(
        prog='dppdisc',
        description="Determinantal point processes on two-point homogeneous "
                    "spaces: sampling, ball discrepancy and variance.")
    parser.add_argument('--version', action='version',
                        version='%(prog)s ' + __version__)
    sub = parser.add_subparsers(dest='command')
    sub.required = True

    p = sub.add_parser('spaces', parents=[common],
                       help="table of supported spaces")
    p.add_argument('--max-d', type=int, default=4)
    p.add_argument('--format', choices=sorted(VALID_FORMATS), default='csv')
    p.set_defaults(func=cmd_spaces)

    p = sub.add_parser('sample', parents=[common], help="draw DPP samples")
    _kernel_args(p)
    p.add_argument('--seed', type=int, required=True)
    p.add_argument('--reps', type=int, default=1)
    p.add_argument('--workers', type=int, default=None)
    p.add_argument('--format', choices=sorted(VALID_FORMATS), default='json')
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser('discrepancy', parents=[common],
                       help="net discrepancy of samples")
    p.add_argument('--in', dest='input', required=True)
    p.add_argument('--net-n', type=int, required=True)
    p.add_argument('--seed', type=int, required=True)
    p.add_argument('--workers', type=int, default=None)
    p.add_argument('--format', choices=sorted(VALID_FORMATS), default='json')
    p.set_defaults(func=cmd_discrepancy)

    p = sub.add_parser('variance', parents=[common],
                       help="variance report for one ball")
    _kernel_args(p)
    p.add_argument('--radius', type=float, required=True)
    p.add_argument('--reps', type=int, default=2000)
    p.add_argument('--pairs', type=int, default=100000)
    p.add_argument('--seed', type=int, required=True)
    p.add_argument('--workers', type=int, default=None)
    p.add_argument('--format', choices=sorted(VALID_FORMATS), default='json')
    p.set_defaults(func=cmd_variance)

    p = sub.add_parser('tails', parents=[common],
                       help="empirical tails against the Bernstein bound")
    _kernel_args(p)
    p.add_argument('--radius', type=float, required=True)
    p.add_argument('--reps', type=int, default=4000)
    p.add_argument('--t-grid', default=None,
                   help="comma separated deviations")
    p.add_argument('--seed', type=int, required=True)
    p.add_argument('--workers', type=int, default=None)
    p.add_argument('--format', choices=sorted(VALID_FORMATS), default='csv')
    p.set_defaults(func=cmd_tails)

    p = sub.add_parser('scan', parents=[common], help="scaling experiment")
    p.add_argument('--config', required=True, help="experiment JSON")
    p.add_argument('--seed', type=int, default=None)
    p.add_argument('--workers', type=int, default=None)
    p.add_argument('--format', choices=sorted(VALID_FORMATS), default='csv')
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser('fit', parents=[common],
                       help="log-log exponent of a scan column")
    p.add_argument('--in', dest='input', required=True)
    p.add_argument('--column', default='var_emp')
    p.add_argument('--target', type=float, default=None)
    p.add_argument('--tolerance', type=float, default=0.15)
    p.add_argument('--radius', type=float, default=None)
    p.add_argument('--format', choices=sorted(VALID_FORMATS), default='json')
    p.set_defaults(func=cmd_fit)
    return parser


def main(argv=None):
    args = make_parser().parse_args(argv)
    level = args.log_level or tools.get_config_file('log_level').get(
        'log_level', 'WARNING')
    logging.basicConfig(stream=sys.stderr, level=level,
                        format='%(asctime)s %(name)s %(levelname)s '
                               '%(message)s')
    try:
        code = args.func(args)
    except (ValueError, TypeError, KeyError, IOError) as e:
        logger.error("%s", e)
        return EXIT_INVALID
    except NumericalError as e:
        logger.error("%s", e)
        diagnostics = getattr(e, 'diagnostics', None)
        if diagnostics:
            logger.error("diagnostics: %s", diagnostics)
        return EXIT_NUMERICAL
    return EXIT_OK if code is None else code


if __name__ == '__main__':
    sys.exit(main())
