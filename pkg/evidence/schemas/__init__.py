import json as _json
import os as _os

COMMANDS = ('glr', 'support', 'profile', 'simulate', 'reduced')


def path(command):
    return _os.path.join(_os.path.dirname(__file__), command + '.json')


def load(command):
    """JSON schema of the report written by ``evidence <command>``."""
    if command not in COMMANDS:
        raise KeyError('no schema for command {!r}'.format(command))
    with open(path(command)) as f:
        return _json.load(f)
