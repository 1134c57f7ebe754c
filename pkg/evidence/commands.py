"""The ``evidence`` sub-commands.

Each command declares its flags in ``requirements`` (merged with those of
the models it can build) and returns a JSON-ready dict from ``perform``.
"""
import argparse as _argparse
import dataclasses as _dataclasses
import logging as _logging
import types as _types

import evidence as _evidence

from . import asymptotics as _asymptotics
from . import config as _config
from . import core as _core
from . import errors as _errors
from . import models as _models
from . import reduced as _reduced
from . import regions as _regions
from .reporters import CSVReporter

logger = _logging.getLogger(__name__)

MODEL_FLAG = {
    'model': {
        'choices': sorted(_models.MODELS),
        'help': 'likelihood model to build from the model flags',
    },
}


class _ModelCommand(_evidence.Command):
    """A command evaluated on one model built from ``--model`` and its flags."""

    def configure(self, parser):
        _evidence.setup_args(parser, [self])
        _evidence.setup_args(parser, _models.MODELS.values(), optional=True)
    def build(self, args):
        kwargs = {k: v for k, v in vars(args).items() if k not in ('model', 'handler')}
        m = _models.build_model(args.model, **kwargs)
        logger.info('built %s', m.describe())
        return m, _config.load_optimizer_config(args.config)


class GLRCommand(_ModelCommand):
    name = 'glr'
    help = 'generalized likelihood ratio of H1 over H2'
    requirements = dict(MODEL_FLAG, **{
        'h1': {'help': 'predicate for H1, e.g. "theta > 0.2"'},
        'h2': {'default': None, 'help': 'predicate for H2'},
        'complement': {'action': 'store_true', 'help': 'take H2 to be the complement of H1'},
        'witness': {'action': 'store_true', 'help': 'report a point of H1 more likely than all of H2'},
    })

    def perform(self, args, reporters):
        m, cfg = self.build(args)
        h1 = _regions.parse_region(args.h1, m.space)
        if args.complement == (args.h2 is not None):
            raise _errors.UsageError('give exactly one of --h2 and --complement')
        h2 = _regions.complement(h1) if args.complement else _regions.parse_region(args.h2, m.space)
        report = _core.glr(m, h1, h2, cfg)
        data = {'model': m.describe(), 'report': report, 'config': cfg}
        if args.witness:
            w = _core.find_witness(m, h1, h2, cfg)
            data['witness'] = None if w is None else {'point': w[0], 'log_lik': w[1]}
        return data


class ProfileCommand(_ModelCommand):
    name = 'profile'
    help = 'normalized profile likelihood over a grid'

    def __init__(self):
        self.curve = None
        self.csv = CSVReporter(
            'profile', lambda data: self.curve.rows(),
            headings=('gamma', 'normalized_likelihood'), option='out')
        self.requirements = dict(MODEL_FLAG, **{
            'interest': {'default': None, 'help': 'parameter to profile (default: the model\'s only one)'},
            'grid': {'help': 'lo:hi:steps'},
        })
    def configure(self, parser):
        super().configure(parser)
        _evidence.setup_args(parser, [self.csv])
    def perform(self, args, reporters):
        m, cfg = self.build(args)
        interest = args.interest or m.interest
        if interest is None:
            raise _errors.UsageError('--interest is required for this model')
        self.curve = _core.profile_curve(m, interest, args.grid, cfg)
        data = {'model': m.describe(), 'profile': self.curve, 'config': cfg}
        self.csv.setup(**vars(args))
        self.csv.on_completion(data)
        return data


class SupportCommand(_ModelCommand):
    name = 'support'
    help = 'the 1/k support set {theta : L(theta) > sup L / k}'
    requirements = dict(MODEL_FLAG, **{
        'k': {'type': float, 'help': 'support level, k > 1'},
        'region': {'default': None, 'help': 'also report k* and the superset check for this predicate'},
    })

    def perform(self, args, reporters):
        m, cfg = self.build(args)
        s = _core.support_set(m, args.k, cfg)
        data = {'model': m.describe(), 'support': s, 'config': cfg}
        if args.region is not None:
            region = _regions.parse_region(args.region, m.space)
            check = _core.min_supported_superset_check(m, region, args.k, cfg)
            data['region'] = {
                'predicate': args.region,
                'k_star': _core.k_star(m, region, cfg),
                'glr_vs_complement': check.ratio,
                'supported_at_k': check.holds,
                'contains_support_set': check.verified,
            }
        return data


def _sizes(text):
    try:
        return tuple(int(n) for n in text.split(','))
    except ValueError:
        raise _argparse.ArgumentTypeError('expected comma-separated sample sizes, got {!r}'.format(text))


class SimulateCommand(_evidence.Command):
    name = 'simulate'
    help = 'Monte Carlo distribution of 2 log GLR against its limit'

    def __init__(self):
        self.values = None
        self.csv = CSVReporter(
            'simulate', lambda data: [(v,) for v in self.values],
            headings=('two_log_glr',), option='csv')
        self.requirements = {
            'scenario': {'choices': sorted(_asymptotics.SCENARIOS)},
            'family': {'choices': sorted(_asymptotics.FAMILIES), 'default': None},
            'theta0': {'type': float, 'default': None, 'help': 'true parameter value'},
            'h1': {'default': None},
            'h2': {'default': None},
            'complement': {'action': 'store_true', 'help': 'take H2 to be the complement of H1'},
            'sample-sizes': {'type': _sizes, 'default': None, 'help': 'comma-separated, e.g. 50,200,800'},
            'replications': {'type': int, 'default': None},
            'seed': {'type': int, 'default': None},
            'workers': {'type': int, 'default': None},
        }
    def configure(self, parser):
        _evidence.setup_args(parser, [self, self.csv])
    def perform(self, args, reporters):
        cfg, limit = _asymptotics.scenario(
            args.scenario, family=args.family, theta0=args.theta0, h1=args.h1, h2=args.h2,
            sample_sizes=args.sample_sizes, replications=args.replications,
            seed=args.seed, workers=args.workers)
        if args.complement:
            cfg = _dataclasses.replace(cfg, h2=None)
        if limit is None:
            report = _asymptotics.consistency_trend(cfg)
            for n, median in zip(report.sample_sizes, report.medians):
                for reporter in reporters:
                    reporter.on_part_completion('n={}'.format(n), {'median_log_glr': median})
            return {'config': cfg, 'consistency': report}
        e = _asymptotics.simulate_glr(cfg)
        self.values = e.values
        summary = e.summary()
        data = {
            'config': cfg,
            'limit': limit,
            'quantiles': summary['quantiles'],
            'fraction_positive': summary['fraction_positive'],
            'ks_distance': _asymptotics.ks_distance(e, limit) if len(e) >= _asymptotics.MIN_KS_SAMPLE else None,
            'failed': e.failed,
        }
        self.csv.setup(**vars(args))
        self.csv.on_completion(data)
        return data


_TEST_KINDS = {
    'one-sided': 'one_sided',
    'point-null-one-sided': 'point_null_one_sided',
    'two-sided-point-null': 'two_sided_point_null',
    'equivalence': 'equivalence',
}


class ReducedCommand(_evidence.Command):
    name = 'reduced'
    help = 'evidence from a test result or a p-value'
    test_requirements = {
        'alpha': {'type': float, 'help': 'significance level'},
        'kind': {'choices': sorted(_TEST_KINDS), 'default': 'one-sided'},
        'result': {'choices': ('reject', 'accept')},
        'pi-max': {'type': float, 'default': None, 'help': 'maximum power (equivalence tests)'},
    }
    pvalue_requirements = {
        'u': {'type': float, 'help': 'observed p-value'},
        'h1': {'default': None, 'help': 'H1 over the shift mu (default "mu <= 0")'},
        'h2': {'default': None, 'help': 'H2 over the shift mu (default "mu > 0")'},
        'n1': {'type': int, 'default': None, 'help': 'first sample size (two-sample test)'},
        'n2': {'type': int, 'default': None, 'help': 'second sample size (two-sample test)'},
        'sigma': {'type': float, 'default': 1.0},
    }

    def configure(self, parser):
        sub = parser.add_subparsers(dest='reduced_command', required=True)
        test = sub.add_parser('test', help='GLR from a rejection or non-rejection')
        _evidence.setup_args(test, [_types.SimpleNamespace(requirements=self.test_requirements)])
        pvalue = sub.add_parser('pvalue', help='GLR from a one-sided normal p-value')
        _evidence.setup_args(pvalue, [_types.SimpleNamespace(requirements=self.pvalue_requirements)])
    def perform(self, args, reporters):
        if args.reduced_command == 'test':
            kind = _TEST_KINDS[args.kind]
            if kind == 'equivalence':
                pf = _reduced.PowerFunction.equivalence(args.alpha, args.pi_max)
            else:
                pf = _reduced.PowerFunction(kind, args.alpha, args.pi_max)
            r = _reduced.glr_from_test(pf, 1 if args.result == 'reject' else 0)
            return {'test': {'kind': args.kind, 'alpha': args.alpha, 'result': args.result},
                    'evidence': _reduced.describe(r)}
        if args.h1 is None and args.h2 is None and args.n1 is None and args.n2 is None:
            r = _reduced.glr_from_pvalue_normal(args.u)
        else:
            if (args.n1 is None) != (args.n2 is None):
                raise _errors.UsageError('give both --n1 and --n2 for a two-sample test')
            if args.n1 is None:
                shift = _reduced.ShiftFamily.one_sample(sigma=args.sigma)
            else:
                shift = _reduced.ShiftFamily.two_sample(args.n1, args.n2, args.sigma)
            r = _reduced.glr_from_pvalue_general(
                args.u, shift, args.h1 or 'mu <= 0', args.h2 or 'mu > 0')
        return {'pvalue': args.u, 'evidence': _reduced.describe(r)}


COMMANDS = [GLRCommand(), ProfileCommand(), SupportCommand(), SimulateCommand(), ReducedCommand()]
