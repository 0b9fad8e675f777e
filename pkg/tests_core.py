import json
import math

import numpy as np
import numpy.testing as npt
import pandas as pd
import pytest

import dppdisc as dd
from dppdisc import cli
from dppdisc.errors import (ConfigError, DomainError, SamplerBudgetError,
                            ValidationError)
from dppdisc.valid import SCAN_COLUMNS


def small_config(**kwargs):
    data = dict(ensemble='harmonic', space='s2', levels=[1, 2, 3],
                radii=[1.], seed=7, net_n=1, reps=20, pairs=2000,
                disc_reps=2, workers=1)
    data.update(kwargs)
    return data


class TestFitExponent(object):

    def test_exact_power_law(self):
        rows = [(N, 7. * N ** 0.75) for N in (4, 9, 16, 25, 36)]
        fit = dd.fit_exponent(rows, 0.75, 0.01)
        npt.assert_allclose(fit.slope, 0.75, atol=1e-12)
        npt.assert_allclose(fit.intercept, math.log(7), atol=1e-12)
        npt.assert_allclose(fit.r2, 1.)
        assert fit.passed

    def test_log_factor(self):
        rows = [(N, N ** 0.5 * math.log(N)) for N in (4, 16, 64, 256, 1024)]
        fit = dd.fit_exponent(rows, 0.5, 0.05)
        assert 0.5 < fit.slope < 0.75
        assert not fit.passed

    def test_invalid_rows(self):
        with pytest.raises(ValidationError):
            dd.fit_exponent([(4, 1.), (9, 2.)], 0.5, 0.1)
        with pytest.raises(DomainError):
            dd.fit_exponent([(4, 1.), (9, 0.), (16, 3.)], 0.5, 0.1)
        with pytest.raises(DomainError):
            dd.fit_exponent([(4, 1.), (4, 2.), (4, 3.)], 0.5, 0.1)

    def test_expected_rates(self):
        assert dd.expected_rates(dd.get_space('s2'))['var_emp'] == 0.5
        npt.assert_allclose(dd.expected_rates(dd.get_space('cp2'))['disc_net'],
                            0.375)


class TestExperimentConfig(object):

    def test_defaults(self):
        config = dd.ExperimentConfig('harmonic', 's2', [2, 4], [0.5, 1.],
                                     seed=3, workers=1)
        assert config.reps == 200 and config.net_n is None
        assert config.rows == [(0, 2, 0.5), (1, 2, 1.), (2, 4, 0.5),
                               (3, 4, 1.)]
        assert 'workers' not in config.to_dict()

    @pytest.mark.parametrize('change', [
        dict(ensemble='ginibre'), dict(ensemble='projective'),
        dict(levels=[]), dict(levels=[3, 2]), dict(levels=[2, 2]),
        dict(radii=[4.]), dict(radii=[]), dict(seed=None), dict(M=0.),
        dict(seed=2 ** 63)])
    def test_invalid(self, change):
        with pytest.raises(ConfigError):
            dd.ExperimentConfig.from_dict(small_config(**change))

    def test_field_checks(self):
        with pytest.raises(ConfigError):
            dd.ExperimentConfig.from_dict(small_config(colour='red'))
        data = small_config()
        del data['seed']
        with pytest.raises(ConfigError):
            dd.ExperimentConfig.from_dict(data)
        with pytest.raises(ConfigError):
            dd.ExperimentConfig.from_dict([('seed', 1)])
        with pytest.raises(ValidationError):
            dd.ExperimentConfig.from_dict(small_config(reps=1))

    def test_from_json(self, tmp_path):
        path = str(tmp_path / 'experiment.json')
        with open(path, 'w') as f:
            json.dump(small_config(), f)
        config = dd.ExperimentConfig.from_json(path)
        assert config.levels == [1, 2, 3]
        with pytest.raises(ConfigError):
            dd.ExperimentConfig.from_json(str(tmp_path / 'missing.json'))


class TestScanTable(object):

    def table(self):
        rows = []
        for i, L in enumerate((1, 2, 3)):
            row = {c: 0.5 for c in SCAN_COLUMNS}
            row.update(space='s2', ensemble='harmonic', L=L, N=(L + 1) ** 2,
                       radius=1., seed=7, var_emp=1. / 3 * (L + 1),
                       disc_net=float('nan'))
            rows.append(row)
        return dd.ScanTable(rows, errors={1: 'discrepancy: failed'},
                            meta=dict(seed=7))

    def test_csv(self):
        table = self.table()
        text = table.to_csv()
        assert text.splitlines()[0] == ','.join(SCAN_COLUMNS)
        back = dd.ScanTable.from_csv(text)
        assert back == table
        assert back['L'].dtype == np.int64

    def test_json(self, tmp_path):
        table = self.table()
        path = str(tmp_path / 'scan.json')
        table.to_json(path)
        back = dd.ScanTable.from_json(path)
        assert back == table
        assert back.errors == {1: 'discrepancy: failed'}
        data = json.loads(table.to_json())
        assert data['version'] == 1
        assert data['rows'][0]['disc_net'] is None

    def test_bad_layout(self):
        with pytest.raises(ValidationError):
            dd.ScanTable.from_csv('space,L\ns2,1\n')
        with pytest.raises(ValidationError):
            dd.ScanTable([dict(space='s2')])
        with pytest.raises(TypeError):
            dd.ScanTable('rows')

    def test_fit(self):
        fit = self.table().fit('var_emp', 0.5, 0.01)
        npt.assert_allclose(fit.slope, 0.5, atol=1e-12)
        with pytest.raises(ValidationError):
            self.table().fit('colour', 0.5, 0.1)

    def test_fit_needs_radius(self):
        df = self.table().to_frame()
        df.loc[0, 'radius'] = 2.
        table = dd.ScanTable(df)
        with pytest.raises(ValidationError):
            table.fit('var_emp', 0.5, 0.1)
        with pytest.raises(ValidationError):
            table.fit('var_emp', 0.5, 0.1, radius=1.)


class TestRunScaling(object):

    def test_rows(self):
        table = dd.run_scaling(small_config())
        assert len(table) == 3
        assert list(table['N']) == [4, 9, 16]
        assert not table.errors
        df = table.to_frame()
        for col in ('var_emp', 'var_mc', 'var_bound', 'disc_net',
                    'disc_slack', 'threshold_t'):
            assert np.all(np.isfinite(df[col])), col
        assert np.all(df['var_bound'] >= 0)
        assert table.meta['net_exponent'] >= 3.
        assert table.meta['config']['seed'] == 7

    def test_empty_ball(self):
        table = dd.run_scaling(small_config(levels=[2], radii=[0.],
                                            net_n=None))
        row = table.to_frame().iloc[0]
        assert row['var_emp'] == row['var_mc'] == row['var_bound'] == 0.
        assert np.isnan(row['disc_net'])
        assert np.isfinite(row['threshold_t'])

    def test_workers_do_not_change_table(self):
        one = dd.run_scaling(small_config(workers=1))
        two = dd.run_scaling(small_config(workers=2))
        assert one.to_csv() == two.to_csv()

    def test_out(self, tmp_path):
        path = str(tmp_path / 'scan.csv')
        table = dd.run_scaling(small_config(levels=[1], out=path,
                                            net_n=None))
        with open(path) as f:
            assert f.read() == table.to_csv()

    def test_failed_stage_is_recorded(self, monkeypatch):
        from dppdisc import core

        def broken(*args):
            raise SamplerBudgetError("budget", diagnostics={})

        monkeypatch.setattr(core, 'sample_replicates', broken)
        table = dd.run_scaling(small_config(levels=[1]))
        assert 0 in table.errors
        assert table.errors[0].startswith('sampling')
        assert np.isnan(table['var_emp'].iloc[0])
        assert np.isfinite(table['var_bound'].iloc[0])

    def test_space_without_points(self):
        table = dd.run_scaling(dict(ensemble='harmonic', space='hp1',
                                    levels=[2], radii=[1.], seed=1, reps=2,
                                    pairs=2, net_n=1, workers=1))
        row = table.to_frame().iloc[0]
        assert np.isfinite(row['var_bound'])
        assert row['var_bound'] > 0
        assert np.isfinite(row['threshold_t'])
        for col in ('var_emp', 'var_mc', 'disc_net'):
            assert np.isnan(row[col]), col
        assert table.errors[0].startswith('sampling')
        assert 'unsupported' in table.errors[0]
        assert 'net' not in table.meta


@pytest.mark.slow
class TestScalingLaws(object):

    def test_variance_exponent(self):
        table = dd.run_scaling(dict(ensemble='harmonic', space='s2',
                                    levels=[2, 4, 8, 16], radii=[np.pi / 3],
                                    seed=41, reps=300, pairs=2000))
        fit = table.fit('var_emp', 0.5, 0.25)
        assert 0.40 <= fit.slope <= 0.75

    def test_discrepancy_exponent(self):
        table = dd.run_scaling(dict(ensemble='harmonic', space='s2',
                                    levels=[2, 4, 8, 16], radii=[np.pi / 3],
                                    seed=42, reps=50, pairs=2000, net_n=4,
                                    disc_reps=50))
        df = table.to_frame()
        fit = table.fit('disc_net', 0.25, 0.2)
        assert 0.15 <= fit.slope <= 0.45
        N = df['N'].values.astype(float)
        certified = (df['disc_net'] + df['disc_slack']).values
        scaled = certified / (N ** 0.25 * np.log(N))
        assert scaled.max() / scaled.min() <= 10


class TestCommandLine(object):

    def run(self, *argv):
        return cli.main(list(argv) + ['--log-level', 'warning'])

    def test_spaces(self, tmp_path):
        path = str(tmp_path / 'spaces.csv')
        assert self.run('spaces', '--max-d', '2', '--out', path) == 0
        df = pd.read_csv(path)
        assert 's2' in set(df['id'])
        assert 'op2' in set(df['id'])

    def test_sample_workers(self, tmp_path):
        paths = []
        for workers in ('1', '2'):
            path = str(tmp_path / 'sample{0}.json'.format(workers))
            assert self.run('sample', '--space', 's2', '--level', '2',
                            '--seed', '5', '--reps', '3', '--workers',
                            workers, '--out', path) == 0
            paths.append(path)
        with open(paths[0], 'rb') as a, open(paths[1], 'rb') as b:
            assert a.read() == b.read()
        with open(paths[0]) as f:
            assert len(json.load(f)['samples']) == 3

    def test_discrepancy(self, tmp_path):
        sample = str(tmp_path / 'sample.json')
        out = str(tmp_path / 'disc.json')
        assert self.run('sample', '--space', 's2', '--level', '2', '--seed',
                        '6', '--reps', '2', '--out', sample) == 0
        assert self.run('discrepancy', '--in', sample, '--net-n', '1',
                        '--seed', '3', '--out', out) == 0
        with open(out) as f:
            data = json.load(f)
        assert len(data['results']) == 2
        assert data['results'][1]['stream'] == [1]

    def test_discrepancy_workers_and_csv(self, tmp_path):
        sample = str(tmp_path / 'sample.json')
        assert self.run('sample', '--space', 's2', '--level', '2', '--seed',
                        '6', '--reps', '3', '--out', sample) == 0
        outputs = []
        for workers in ('1', '2'):
            path = str(tmp_path / 'disc{0}.json'.format(workers))
            assert self.run('discrepancy', '--in', sample, '--net-n', '1',
                            '--seed', '3', '--workers', workers,
                            '--out', path) == 0
            with open(path, 'rb') as f:
                outputs.append(f.read())
        assert outputs[0] == outputs[1]

        path = str(tmp_path / 'disc.csv')
        assert self.run('discrepancy', '--in', sample, '--net-n', '1',
                        '--seed', '3', '--format', 'csv', '--out', path) == 0
        df = pd.read_csv(path)
        assert len(df) == 3
        assert list(df['seed']) == [6, 6, 6]
        npt.assert_allclose(df['certified_upper'],
                            df['net_sup'] + df['slack'])

    def test_sample_csv(self, tmp_path):
        path = str(tmp_path / 'sample.csv')
        assert self.run('sample', '--space', 's2', '--level', '2',
                        '--seed', '5', '--reps', '2', '--format', 'csv',
                        '--out', path) == 0
        df = pd.read_csv(path)
        assert len(df) == 2 * 9
        assert sorted(set(df['rep'])) == [0, 1]
        npt.assert_allclose(df['x0'] ** 2 + df['x1'] ** 2 + df['x2'] ** 2,
                            1., atol=1e-9)

    def test_variance_formats(self, tmp_path):
        paths = {}
        for fmt in ('json', 'csv'):
            paths[fmt] = str(tmp_path / ('variance.' + fmt))
            assert self.run('variance', '--space', 's2', '--level', '2',
                            '--radius', '1', '--reps', '20', '--pairs',
                            '2000', '--seed', '4', '--format', fmt,
                            '--out', paths[fmt]) == 0
        with open(paths['json']) as f:
            report = json.load(f)
        df = pd.read_csv(paths['csv'])
        assert len(df) == 1
        npt.assert_allclose(df['quadrature_bound'].iloc[0],
                            report['quadrature_bound'])
        npt.assert_allclose(df['empirical_variance'].iloc[0],
                            report['empirical']['variance'])
        npt.assert_allclose(df['exact_mc_estimate'].iloc[0],
                            report['exact_mc']['estimate'])

    def test_fit_csv(self, tmp_path):
        scan = str(tmp_path / 'scan.csv')
        table = dd.run_scaling(small_config(net_n=None, out=scan))
        assert len(table) == 3
        path = str(tmp_path / 'fit.csv')
        code = self.run('fit', '--in', scan, '--column', 'var_bound',
                        '--target', '5', '--tolerance', '0.01',
                        '--format', 'csv', '--out', path)
        assert code == cli.EXIT_FAILED_FIT == 1
        row = pd.read_csv(path).iloc[0]
        assert row['column'] == 'var_bound'
        assert not row['passed']
        assert len(json.loads(row['rows'])) == 3

    def test_space_without_points(self):
        assert self.run('variance', '--space', 'hp1', '--level', '2',
                        '--radius', '1.0', '--seed', '1',
                        '--reps', '10') == 2
        assert self.run('tails', '--space', 'hp1', '--level', '2',
                        '--radius', '1.0', '--seed', '1') == 2
        assert self.run('sample', '--space', 'op2', '--level', '1',
                        '--seed', '1') == 2

    def test_scan_and_fit(self, tmp_path):
        config = str(tmp_path / 'experiment.json')
        with open(config, 'w') as f:
            json.dump(small_config(net_n=None), f)
        outputs = []
        for workers in ('1', '2'):
            path = str(tmp_path / 'scan{0}.csv'.format(workers))
            assert self.run('scan', '--config', config, '--workers', workers,
                            '--out', path) == 0
            with open(path, 'rb') as f:
                outputs.append(f.read())
        assert outputs[0] == outputs[1]

        fit_out = str(tmp_path / 'fit.json')
        code = self.run('fit', '--in', path, '--column', 'var_bound',
                        '--target', '5', '--tolerance', '0.01',
                        '--out', fit_out)
        assert code == 1
        with open(fit_out) as f:
            assert json.load(f)['passed'] is False

    def test_invalid_input(self, tmp_path):
        assert self.run('sample', '--space', 'xx3', '--level', '2',
                        '--seed', '1') == 2
        assert self.run('discrepancy', '--in', str(tmp_path / 'none.json'),
                        '--net-n', '1', '--seed', '1') == 2
        assert self.run('tails', '--space', 's2', '--level', '1',
                        '--radius', '1', '--reps', '10', '--seed', '1') == 2
        with pytest.raises(SystemExit):
            cli.main(['sample', '--space', 's2'])

    def test_numerical_failure(self, monkeypatch):
        def broken(*args, **kwargs):
            raise SamplerBudgetError("budget", diagnostics=dict(point=3))

        monkeypatch.setattr(cli, 'sample_replicates', broken)
        assert self.run('sample', '--space', 's2', '--level', '2',
                        '--seed', '1') == 3
