import json
import os

import pytest

import dppdisc as dd
from dppdisc import auth, tools
from dppdisc.errors import ConfigError


@pytest.fixture
def config_file(tmp_path, monkeypatch):
    auth_dir = str(tmp_path / '.dppdisc')
    path = os.path.join(auth_dir, 'config.json')
    monkeypatch.setattr(auth, '_file_permissions', True)
    monkeypatch.setattr(tools, 'AUTH_DIR', auth_dir)
    monkeypatch.setattr(tools, 'CONFIG_FILE', path)
    monkeypatch.setitem(auth.FILE_CONTENT, path,
                        dict(auth.FILE_CONTENT[auth.CONFIG_FILE]))
    return path


DEFAULTS = auth.FILE_CONTENT[auth.CONFIG_FILE]


class TestConfigFile(object):

    def test_defaults_written(self, config_file):
        assert dd.get_config_file() == DEFAULTS
        assert os.path.exists(config_file)
        assert dd.get_config_file('workers', 'nope') == {'workers': 1}

    def test_set_and_read(self, config_file):
        dd.set_config_file(workers=3, quad_epsrel=1e-6)
        assert dd.get_config_file('workers') == {'workers': 3}
        assert tools.config_default('workers') == 3
        assert tools.config_default('workers', 5) == 5
        assert tools.config_default('quad_epsrel') == 1e-6

    def test_none_is_ignored(self, config_file):
        dd.set_config_file(workers=4)
        dd.set_config_file(workers=None)
        assert tools.config_default('workers') == 4

    def test_log_level(self, config_file):
        dd.set_config_file(log_level='debug')
        assert dd.get_config_file('log_level') == {'log_level': 'DEBUG'}
        with pytest.raises(ConfigError):
            dd.set_config_file(log_level='loud')
        with pytest.raises(TypeError):
            dd.set_config_file(log_level=10)

    def test_invalid_values_write_nothing(self, config_file):
        with pytest.raises(TypeError):
            dd.set_config_file(workers='3')
        with pytest.raises(ConfigError):
            dd.set_config_file(workers=2, max_proposals=0)
        with pytest.raises(ConfigError):
            dd.set_config_file(colour='red')
        assert dd.get_config_file() == DEFAULTS

    def test_reset(self, config_file):
        dd.set_config_file(net_batch=16)
        dd.reset_config_file()
        assert dd.get_config_file() == DEFAULTS

    def test_unknown_keys_dropped(self, config_file):
        os.makedirs(os.path.dirname(config_file))
        with open(config_file, 'w') as f:
            json.dump(dict(workers=2, theme='dark'), f)
        config = dd.get_config_file()
        assert config['workers'] == 2
        assert 'theme' not in config
        assert config['net_batch'] == DEFAULTS['net_batch']

    def test_corrupt_file(self, config_file):
        os.makedirs(os.path.dirname(config_file))
        with open(config_file, 'w') as f:
            f.write('{not json')
        assert dd.get_config_file() == DEFAULTS


class TestNoPermission(object):

    def test_read_only_home(self, config_file, monkeypatch):
        monkeypatch.setattr(auth, '_file_permissions', False)
        assert dd.get_config_file() == DEFAULTS
        assert dd.get_config_file('net_patience') == {'net_patience': 200}
        assert not os.path.exists(config_file)
        with pytest.raises(ConfigError):
            dd.set_config_file(workers=2)
