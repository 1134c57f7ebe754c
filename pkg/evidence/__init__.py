import abc as _abc
import argparse as _argparse
import logging as _logging
import math as _math
import sys as _sys
import time as _time

__version__ = '0.3'


class LikelihoodModel(metaclass=_abc.ABCMeta):
    """A log-likelihood over a named parameter space.

    Concrete models declare the CLI flags they are built from in
    ``requirements`` and construct themselves in ``from_args``.  When a
    model profiles out nuisance parameters, ``space`` is the space of the
    parameter of interest and ``log_lik`` is the profile log-likelihood.
    """
    name = None
    requirements = {}
    nuisance = ()
    # grid resolution for scans; None means OptimizerConfig.grid_points
    scan_points = None

    @property
    @_abc.abstractmethod
    def space(self):
        pass
    @_abc.abstractmethod
    def log_lik(self, point):
        pass
    @property
    def interest(self):
        if self.space.dim == 1:
            return self.space.names[0]
        return None
    def search_bounds(self, name):
        p = self.space[name]
        if not (_math.isfinite(p.lower) and _math.isfinite(p.upper)):
            raise NotImplementedError(
                '{} must give finite search bounds for {}'.format(type(self).__name__, name))
        return p.lower, p.upper
    def restricted_max(self, bounds):
        """Exact maximum over a closed box, or None to fall back to the optimizer."""
        return None
    def profile_log_lik(self, name, value, cfg=None):
        from . import optimize
        if self.space.dim == 1:
            self.space[name]
            return self.log_lik((value,))
        box = [self.search_bounds(n) for n in self.space.names]
        box[self.space.index(name)] = (value, value)
        return optimize.maximize_box(
            lambda x: self.log_lik(tuple(x)), box, cfg or optimize.OptimizerConfig()).max_value
    def describe(self):
        return {'model': self.name}
    @classmethod
    def from_args(cls, **kwargs):
        raise NotImplementedError


class Command(metaclass=_abc.ABCMeta):
    name = None
    help = None
    requirements = {}

    def configure(self, parser):
        setup_args(parser, [self])
    @_abc.abstractmethod
    def perform(self, args, reporters):
        pass


class Reporter(metaclass=_abc.ABCMeta):
    def setup(self, **data):
        pass
    def on_part_completion(self, name, data):
        pass
    def on_completion(self, data):
        pass


def setup_args(parser, plugins, optional=False):
    reqs = {}
    for plugin in plugins:
        reqs.update(plugin.requirements)
    for name, h in reqs.items():
        h = dict(h)
        if optional:
            h['required'] = False
        elif 'required' not in h and 'default' not in h and h.get('action') is None:
            h['required'] = True
        parser.add_argument('--'+name, **h)


def main(argv=None):
    from . import commands as _commands
    from . import errors as _errors
    from .reporters import build_reporters

    parser = _argparse.ArgumentParser(
        prog='evidence',
        description='Statistical evidence for composite hypotheses from generalized likelihood ratios.')
    parser.add_argument('-v', '--verbose', action='count', default=0)
    parser.add_argument('--config', default=None, help='JSON file with optimizer settings (default: $EVIDENCE_CONFIG)')
    parser.add_argument('--output', nargs='?', type=_argparse.FileType('w'), default=_sys.stdout, help='where to write the JSON report')
    parser.add_argument('--format', choices=('json', 'text'), default='json')
    subparsers = parser.add_subparsers(dest='command', required=True)
    for command in _commands.COMMANDS:
        sub = subparsers.add_parser(command.name, help=command.help)
        command.configure(sub)
        sub.set_defaults(handler=command)
    argv = list(_sys.argv[1:] if argv is None else argv)
    args = parser.parse_args(argv)

    _logging.basicConfig(
        level=[_logging.WARNING, _logging.INFO, _logging.DEBUG][min(args.verbose, 2)],
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s')

    reporters = build_reporters(args.format, args.output)
    started = _time.monotonic()
    try:
        data = args.handler.perform(args, reporters)
    except _errors.EvidenceError as ex:
        _logging.getLogger(__name__).debug('command failed', exc_info=True)
        _sys.stderr.write('error: {}\n'.format(ex))
        return ex.exit_code
    data['manifest'] = {
        'command': args.command,
        'arguments': argv,
        'version': __version__,
        'seed': getattr(data.get('config'), 'seed', None),
        'duration_seconds': _time.monotonic() - started,
    }
    for reporter in reporters:
        reporter.on_completion(data)
    if args.output is not _sys.stdout:
        args.output.close()
    return 0


if __name__ == '__main__':
    _sys.exit(main())
