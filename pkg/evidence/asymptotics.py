import concurrent.futures as _futures
import dataclasses as _dataclasses
import logging as _logging
import math as _math
import multiprocessing as _multiprocessing
import traceback as _traceback

import numpy as _np
import scipy.special as _special
import scipy.stats as _stats

from . import core as _core
from . import errors as _errors
from . import models as _models
from . import optimize as _optimize
from . import regions as _regions

logger = _logging.getLogger(__name__)

# abort once more than this share of replications fails
FAILURE_TOLERANCE = 0.001
MIN_KS_SAMPLE = 100
QUANTILES = (0.01, 0.05, 0.1, 0.25, 0.5, 0.75, 0.9, 0.95, 0.99)


class Family:
    def __init__(self, name, space, draw, build, expected_loglik, bounds=None):
        self.name = name
        self.space = space
        self.draw = draw
        self.build = build
        self.expected_loglik = expected_loglik
        self.bounds = bounds
    @property
    def parameter(self):
        return self.space.names[0]
    def limit_model(self, theta0):
        bounds = None
        if self.bounds is not None:
            bounds = {self.parameter: self.bounds(theta0)}
        return _models.FunctionModel(self.space, lambda theta: self.expected_loglik(theta0, theta), bounds)


def _binomial_expected(theta0, theta):
    return float(_special.xlogy(theta0, theta) + _special.xlogy(1.0 - theta0, 1.0 - theta))


FAMILIES = {
    'binomial': Family(
        'binomial',
        _models.binomial.SPACE,
        lambda rng, theta0, n: int(rng.binomial(n, theta0)),
        lambda x, n: _models.BinomialModel(x, n),
        _binomial_expected),
    'normal': Family(
        'normal',
        _models.normal.SPACE,
        lambda rng, mu0, n: float(rng.normal(mu0, 1.0 / _math.sqrt(n))),
        lambda mean, n: _models.NormalMeanModel(mean, n, 1.0),
        lambda mu0, mu: -0.5 * (mu - mu0) ** 2,
        lambda mu0: (mu0 - 50.0, mu0 + 50.0)),
}


def get_family(name):
    try:
        return FAMILIES[name]
    except KeyError:
        raise _errors.UsageError('unknown family {!r} (expected one of {})'.format(name, ', '.join(FAMILIES)))


@_dataclasses.dataclass(frozen=True)
class SimulationConfig:
    family: str
    theta0: float
    h1: str
    # None means the complement of h1
    h2: str = None
    sample_sizes: tuple = (2500,)
    replications: int = 20000
    seed: int = 0
    workers: int = None

    def __post_init__(self):
        object.__setattr__(self, 'sample_sizes', tuple(int(n) for n in self.sample_sizes))
        fam = get_family(self.family)
        if self.replications < 1:
            raise _errors.UsageError('replications must be at least 1')
        if not self.sample_sizes or min(self.sample_sizes) < 1:
            raise _errors.UsageError('sample sizes must be positive')
        if not fam.space.params[0].bounds.contains(self.theta0):
            raise _errors.UsageError('theta0={} lies outside the {} parameter space'.format(self.theta0, self.family))
        if self.workers is not None and self.workers < 1:
            raise _errors.UsageError('workers must be at least 1')
    def regions(self):
        space = get_family(self.family).space
        h1 = _regions.parse_region(self.h1, space)
        h2 = _regions.complement(h1) if self.h2 is None else _regions.parse_region(self.h2, space)
        return h1, h2
    def to_json(self):
        return {
            'family': self.family,
            'theta0': self.theta0,
            'h1': self.h1,
            'h2': self.h2 if self.h2 is not None else 'not({})'.format(self.h1),
            'sample_sizes': list(self.sample_sizes),
            'replications': self.replications,
            'seed': self.seed,
        }


@_dataclasses.dataclass(frozen=True)
class LimitSpec:
    kind: str
    # (weight of +chi2, weight of -chi2) for the signed mixture
    weights: tuple = (0.5, 0.5)
    df: int = 1
    # limit of the GLR itself for divergent specs: inf or 0
    limit: float = None

    def __post_init__(self):
        if self.kind not in ('signed_chisq_mixture', 'neg_chisq', 'divergent'):
            raise _errors.UsageError('unknown limit kind {!r}'.format(self.kind))
        if self.df < 1:
            raise _errors.UsageError('degrees of freedom must be at least 1')
        if self.kind == 'signed_chisq_mixture':
            if len(self.weights) != 2 or min(self.weights) < 0 or abs(sum(self.weights) - 1.0) > 1e-12:
                raise _errors.UsageError('mixture weights must be two non-negative numbers summing to 1')
        if self.kind == 'divergent' and self.limit not in (0.0, _math.inf):
            raise _errors.UsageError('a divergent limit is either inf or 0')
    @classmethod
    def signed_chisq_mixture(cls, weights=(0.5, 0.5), df=1):
        return cls('signed_chisq_mixture', tuple(weights), df)
    @classmethod
    def neg_chisq(cls, df=1):
        return cls('neg_chisq', df=df)
    @classmethod
    def divergent(cls, limit):
        return cls('divergent', limit=float(limit))
    def to_json(self):
        if self.kind == 'signed_chisq_mixture':
            return {'kind': self.kind, 'weights': list(self.weights), 'df': self.df}
        if self.kind == 'neg_chisq':
            return {'kind': self.kind, 'df': self.df}
        return {'kind': self.kind, 'limit': 'inf' if self.limit == _math.inf else 0}


def limit_cdf(spec, x):
    x = _np.asarray(x, dtype=float)
    if spec.kind == 'divergent':
        # all mass escapes to +inf (GLR -> inf) or -inf (GLR -> 0)
        result = _np.full(x.shape, 0.0 if spec.limit == _math.inf else 1.0)
    else:
        # P(-chi2 <= x) = P(chi2 >= -x) for x < 0, and 1 from 0 on
        neg = _np.where(x < 0, _stats.chi2.sf(-_np.minimum(x, 0.0), spec.df), 1.0)
        if spec.kind == 'neg_chisq':
            result = neg
        else:
            w_pos, w_neg = spec.weights
            pos = _np.where(x < 0, 0.0, _stats.chi2.cdf(_np.maximum(x, 0.0), spec.df))
            result = w_neg * neg + w_pos * pos
    if result.ndim == 0:
        return float(result)
    return result


@_dataclasses.dataclass(frozen=True, eq=False)
class EmpiricalDistribution:
    values: _np.ndarray
    sample_size: int = None
    failed: int = 0

    def __post_init__(self):
        object.__setattr__(self, 'values', _np.sort(_np.asarray(self.values, dtype=float)))
    def __len__(self):
        return len(self.values)
    @property
    def fraction_positive(self):
        return float(_np.mean(self.values > 0))
    def quantiles(self, probs=QUANTILES):
        return {str(p): float(q) for p, q in zip(probs, _np.quantile(self.values, probs))}
    def cdf(self, x):
        return _np.searchsorted(self.values, x, side='right') / len(self.values)
    def summary(self):
        return {
            'replications': len(self.values),
            'failed': self.failed,
            'mean': float(_np.mean(self.values)),
            'quantiles': self.quantiles(),
            'fraction_positive': self.fraction_positive,
        }


def _replicate(family, cfg, h1, h2, n, index):
    rng = _np.random.default_rng([cfg.seed, n, index])
    model = family.build(family.draw(rng, cfg.theta0, n), n)
    return 2.0 * _core.glr(model, h1, h2).log_glr


def _run_chunk(family, cfg, h1, h2, n, indices):
    values, failures = {}, []
    for index in indices:
        try:
            values[index] = _replicate(family, cfg, h1, h2, n, index)
        except Exception:
            logger.warning('replication %d at n=%d failed', index, n, exc_info=True)
            failures.append((index, _traceback.format_exc()))
    return values, failures


def simulate_glr(cfg, n=None):
    # replication i draws from the stream seeded by (seed, n, i), whatever the worker count
    n = cfg.sample_sizes[-1] if n is None else int(n)
    family = get_family(cfg.family)
    h1, h2 = cfg.regions()
    workers = cfg.workers or _multiprocessing.cpu_count()
    chunk = max(1, -(-cfg.replications // (workers * 4)))
    chunks = [range(i, min(i + chunk, cfg.replications)) for i in range(0, cfg.replications, chunk)]
    values, failures = {}, []
    with _futures.ThreadPoolExecutor(max_workers=workers) as executor:
        procs = [executor.submit(_run_chunk, family, cfg, h1, h2, n, c) for c in chunks]
        for proc in _futures.as_completed(procs):
            v, f = proc.result()
            values.update(v)
            failures.extend(f)
    if len(failures) > FAILURE_TOLERANCE * cfg.replications:
        raise _errors.SimulationError(len(failures), cfg.replications, [t for _, t in sorted(failures)])
    logger.info('n=%d: %d replications, %d failed', n, cfg.replications, len(failures))
    ordered = [values[i] for i in sorted(values)]
    return EmpiricalDistribution(ordered, sample_size=n, failed=len(failures))


def ks_distance(e, spec):
    # kstest checks both sides of each jump
    if len(e) < MIN_KS_SAMPLE:
        raise _errors.UsageError('KS distance needs at least {} values, got {}'.format(MIN_KS_SAMPLE, len(e)))
    return float(_stats.kstest(e.values, lambda x: limit_cdf(spec, x)).statistic)


@_dataclasses.dataclass(frozen=True)
class ConsistencyReport:
    sample_sizes: tuple
    medians: tuple
    direction: str
    monotone: bool
    limit_log_glr: float

    def to_json(self):
        return {
            'sample_sizes': list(self.sample_sizes),
            'median_log_glr': list(self.medians),
            'direction': self.direction,
            'monotone': self.monotone,
            'limit_log_glr_per_observation': self.limit_log_glr,
        }


def limit_direction(cfg, opt=_optimize.OptimizerConfig()):
    family = get_family(cfg.family)
    h1, h2 = cfg.regions()
    report = _core.glr(family.limit_model(cfg.theta0), h1, h2, opt)
    return report.favors, report.log_glr


def consistency_trend(cfg):
    favors, limit_log_glr = limit_direction(cfg)
    medians = tuple(
        float(_np.median(simulate_glr(cfg, n).values)) / 2.0 for n in cfg.sample_sizes)
    steps = _np.diff(medians)
    if favors == 'H1':
        monotone = bool(_np.all(steps > 0))
    elif favors == 'H2':
        monotone = bool(_np.all(steps < 0))
    else:
        # equal limits: nothing grows, the medians stay at zero
        monotone = all(m == 0.0 for m in medians)
    if not monotone:
        logger.warning('median log GLR %s is not monotone towards %s', medians, favors)
    return ConsistencyReport(cfg.sample_sizes, medians, favors, monotone, limit_log_glr)


def _boundary():
    return SimulationConfig('binomial', 0.2, 'theta <= 0.2', 'theta > 0.2', (2500,), 20000), \
        LimitSpec.signed_chisq_mixture()


def _consistency():
    return SimulationConfig('binomial', 0.1, 'theta <= 0.2', 'theta > 0.2', (50, 200, 800), 2000), None


def _point_null():
    # exact at every n for normal means; override the family to see the limit on a lattice
    return SimulationConfig('normal', 0.0, 'mu == 0', None, (2500,), 20000), LimitSpec.neg_chisq(1)


SCENARIOS = {
    'boundary': _boundary,
    'consistency': _consistency,
    'point-null': _point_null,
}


def scenario(name, **overrides):
    try:
        cfg, limit = SCENARIOS[name]()
    except KeyError:
        raise _errors.UsageError('unknown scenario {!r}'.format(name))
    changes = {k: v for k, v in overrides.items() if v is not None}
    if 'family' in changes and 'theta0' not in changes and changes['family'] != cfg.family:
        raise _errors.UsageError('changing the family needs --theta0 and matching --h1')
    return _dataclasses.replace(cfg, **changes), limit
