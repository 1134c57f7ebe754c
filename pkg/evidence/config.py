import json as _json
import logging as _logging
import os as _os

from . import errors as _errors
from . import optimize as _optimize

logger = _logging.getLogger(__name__)

ENV_VAR = 'EVIDENCE_CONFIG'


def load_optimizer_config(path=None, environ=None):
    """OptimizerConfig from ``path``, else from $EVIDENCE_CONFIG, else the defaults.

    The file holds ``{"optimizer": {field: value, ...}}``.
    """
    environ = _os.environ if environ is None else environ
    path = path or environ.get(ENV_VAR)
    if not path:
        return _optimize.OptimizerConfig()
    try:
        with open(path) as f:
            data = _json.load(f)
    except OSError as ex:
        raise _errors.UsageError('cannot read config {}: {}'.format(path, ex))
    except ValueError as ex:
        raise _errors.UsageError('config {} is not valid JSON: {}'.format(path, ex))
    if not isinstance(data, dict) or set(data) - {'optimizer'}:
        raise _errors.UsageError('config {} may only contain an "optimizer" section'.format(path))
    section = data.get('optimizer', {})
    if not isinstance(section, dict):
        raise _errors.UsageError('"optimizer" in {} must be an object'.format(path))
    known = set(_optimize.OptimizerConfig.__dataclass_fields__)
    unknown = sorted(set(section) - known)
    if unknown:
        raise _errors.UsageError('unknown optimizer settings in {}: {}'.format(path, ', '.join(unknown)))
    logger.info('optimizer settings from %s: %s', path, section)
    try:
        return _optimize.OptimizerConfig(**section)
    except TypeError as ex:
        raise _errors.UsageError('bad optimizer settings in {}: {}'.format(path, ex))
