import json

import pytest

from evidence import config
from evidence import errors
from evidence.optimize import OptimizerConfig


def write(tmp_path, data):
    path = tmp_path / 'evidence.json'
    path.write_text(data if isinstance(data, str) else json.dumps(data))
    return str(path)


def test__defaults_without_a_file():
    assert config.load_optimizer_config(environ={}) == OptimizerConfig()


def test__from_a_file(tmp_path):
    path = write(tmp_path, {'optimizer': {'abs_tol_x': 1e-8, 'multistart_count': 3}})
    cfg = config.load_optimizer_config(path, environ={})
    assert cfg == OptimizerConfig(abs_tol_x=1e-8, multistart_count=3)


def test__from_the_environment(tmp_path):
    path = write(tmp_path, {'optimizer': {'seed': 7}})
    assert config.load_optimizer_config(environ={config.ENV_VAR: path}).seed == 7


def test__explicit_path_wins(tmp_path):
    path = write(tmp_path, {'optimizer': {'seed': 7}})
    other = tmp_path / 'other.json'
    other.write_text('{"optimizer": {"seed": 8}}')
    assert config.load_optimizer_config(str(other), environ={config.ENV_VAR: path}).seed == 8


@pytest.mark.parametrize('data', [
    '{not json',
    {'optimizer': {'tolerance': 1e-3}},
    {'optimizer': {'max_iters': 0}},
    {'optimizer': [1, 2]},
    {'logging': {}},
    [1, 2],
])
def test__bad_files(tmp_path, data):
    with pytest.raises(errors.UsageError):
        config.load_optimizer_config(write(tmp_path, data), environ={})


def test__missing_file(tmp_path):
    with pytest.raises(errors.UsageError):
        config.load_optimizer_config(str(tmp_path / 'nope.json'), environ={})
