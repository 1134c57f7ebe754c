import dataclasses as _dataclasses
import logging as _logging
import math as _math

import numpy as _np

from . import errors as _errors
from . import optimize as _optimize
from . import regions as _regions

logger = _logging.getLogger(__name__)

FAIRLY_STRONG = 8.0
STRONG = 32.0
# |log GLR| below this is reported as neutral
NEUTRAL_LOG_TOL = 1e-9


def _exp(x):
    if x > 709.0:
        return _math.inf
    return _math.exp(x)


def strength(log_ratio):
    if _math.isnan(log_ratio):
        raise _errors.NumericError('log GLR is nan')
    if abs(log_ratio) <= NEUTRAL_LOG_TOL:
        return 'neutral', None
    favors = 'H1' if log_ratio > 0 else 'H2'
    magnitude = abs(log_ratio)
    if magnitude >= _math.log(STRONG):
        return 'strong', favors
    if magnitude >= _math.log(FAIRLY_STRONG):
        return 'fairly strong', favors
    return 'weak', favors


def strength_label(log_ratio, names=('H1', 'H2')):
    level, favors = strength(log_ratio)
    if favors is None:
        return level
    return '{} (supports {})'.format(level, names[0] if favors == 'H1' else names[1])


@_dataclasses.dataclass(frozen=True)
class EvidenceReport:
    glr: float
    log_glr: float
    sup1: float
    sup2: float
    argmax1: tuple
    argmax2: tuple
    attained1: bool
    attained2: bool
    strength: str
    favors: str
    h1: str = ''
    h2: str = ''
    parameters: tuple = ()

    @property
    def strength_label(self):
        return strength_label(self.log_glr)
    def to_json(self):
        return {
            'glr': self.glr,
            'log_glr': self.log_glr,
            'h1': {'region': self.h1, 'sup_log_lik': self.sup1,
                   'argmax': dict(zip(self.parameters, self.argmax1)), 'attained': self.attained1},
            'h2': {'region': self.h2, 'sup_log_lik': self.sup2,
                   'argmax': dict(zip(self.parameters, self.argmax2)), 'attained': self.attained2},
            'strength': self.strength,
            'favors': self.favors,
            'strength_label': self.strength_label,
            'labels_descriptive': True,
        }


@_dataclasses.dataclass(frozen=True)
class SupportSet:
    k: float
    parameter: str
    intervals: tuple
    mle: float
    max_log_lik: float

    @property
    def threshold_log_lik(self):
        return self.max_log_lik - _math.log(self.k)
    def contains(self, x):
        return any(i.contains(x) for i in self.intervals)
    def as_region(self, space):
        return _regions.Region.from_scalar(
            space, self.parameter, _regions.ScalarRegion.of(self.intervals))
    def to_json(self):
        return {
            'k': self.k,
            'intervals': {self.parameter: [i.to_json() for i in self.intervals]},
            'mle': {self.parameter: self.mle},
            'max_log_lik': self.max_log_lik,
            'threshold_log_lik': self.threshold_log_lik,
        }


@_dataclasses.dataclass(frozen=True)
class ProfileCurve:
    parameter: str
    grid: tuple
    normalized_lik: tuple
    peak_index: int
    peak_location: float
    peak_log_lik: float

    def rows(self):
        return list(zip(self.grid, self.normalized_lik))
    def value_at(self, x):
        return float(_np.interp(x, self.grid, self.normalized_lik))
    def to_json(self):
        return {
            'parameter': self.parameter,
            'points': len(self.grid),
            'peak_index': self.peak_index,
            'peak_location': self.peak_location,
            'peak_log_lik': self.peak_log_lik,
        }


@_dataclasses.dataclass(frozen=True)
class SupersetCheck:
    ratio: float
    k: float
    holds: bool
    verified: bool
    violations: tuple = ()

    def __bool__(self):
        return self.holds and self.verified


def _finite_bounds(m, bounds):
    result = []
    for name, (lo, hi) in zip(m.space.names, bounds):
        if _math.isfinite(lo) and _math.isfinite(hi):
            result.append((lo, hi))
            continue
        slo, shi = m.search_bounds(name)
        lo2 = lo if _math.isfinite(lo) else min(slo, hi)
        hi2 = hi if _math.isfinite(hi) else max(shi, lo2)
        result.append((lo2, hi2))
    return result


def sup_log_lik(m, r, cfg=_optimize.OptimizerConfig()):
    if r.is_empty:
        raise _errors.EmptyRegionError('supremum over an empty region is undefined')
    if r.space != m.space:
        raise _errors.RegionError('region is not over the parameter space of the model')
    best = None
    for bounds in r.closed_boxes():
        res = m.restricted_max(bounds)
        if res is None:
            finite = _finite_bounds(m, bounds)
            if len(finite) == 1:
                res = _optimize.maximize_1d(lambda x: m.log_lik((x,)), finite[0], cfg)
            else:
                res = _optimize.maximize_box(lambda x: m.log_lik(tuple(x)), finite, cfg)
        if best is None or res.max_value > best.max_value:
            best = res
    attained = r.contains(best.argmax)
    if not attained:
        logger.debug('supremum %r over %s sits on an excluded endpoint %r', best.max_value, r, best.argmax)
    return _dataclasses.replace(best, attained=attained)


def glr(m, h1, h2, cfg=_optimize.OptimizerConfig()):
    s1 = sup_log_lik(m, h1, cfg)
    s2 = sup_log_lik(m, h2, cfg)
    log_glr = s1.max_value - s2.max_value
    level, favors = strength(log_glr)
    return EvidenceReport(
        glr=_exp(log_glr), log_glr=log_glr,
        sup1=s1.max_value, sup2=s2.max_value,
        argmax1=s1.argmax, argmax2=s2.argmax,
        attained1=s1.attained, attained2=s2.attained,
        strength=level, favors=favors,
        h1=str(h1), h2=str(h2), parameters=m.space.names)


def evidence_vs_complement(m, h, cfg=_optimize.OptimizerConfig()):
    return glr(m, h, _regions.complement(h), cfg)


def lrt_statistic(m, h1, cfg=_optimize.OptimizerConfig()):
    # equals max(GLR of the complement over h1, 1)
    full = sup_log_lik(m, _regions.Region.full(m.space), cfg)
    return _exp(full.max_value - sup_log_lik(m, h1, cfg).max_value)


def _scan_target(m, name=None, cfg=_optimize.OptimizerConfig()):
    name = name or m.interest
    if name is None:
        raise _errors.UsageError('model has no scalar parameter of interest to scan')
    if m.space.dim == 1:
        m.space[name]
        return name, lambda x: m.log_lik((x,))
    return name, lambda x: m.profile_log_lik(name, x, cfg)


def _peak(m, name, f, cfg):
    lo, hi = m.search_bounds(name)
    if m.space.dim == 1:
        res = sup_log_lik(m, _regions.Region.full(m.space), cfg)
        return res.argmax[0], res.max_value
    res = _optimize.maximize_1d(f, (lo, hi), cfg)
    return res.argmax[0], res.max_value


def _grid(m, name, cfg, extra=()):
    lo, hi = m.search_bounds(name)
    points = m.scan_points or cfg.grid_points
    return _np.unique(_np.concatenate([_np.linspace(lo, hi, points), _np.asarray(extra, dtype=float)]))


def support_set(m, k, cfg=_optimize.OptimizerConfig()):
    if not k > 1:
        raise _errors.UsageError('support sets need k > 1, got {}'.format(k))
    name, f = _scan_target(m, cfg=cfg)
    mle, top = _peak(m, name, f, cfg)
    level = top - _math.log(k)
    grid = _grid(m, name, cfg, extra=(mle,))
    above = _np.array([f(x) - level > 0 for x in grid])
    bounds = m.space[name].bounds

    def g(x):
        return f(x) - level

    intervals = []
    i = 0
    while i < len(grid):
        if not above[i]:
            i += 1
            continue
        j = i
        while j + 1 < len(grid) and above[j + 1]:
            j += 1
        if i == 0:
            lower, lower_closed = grid[0], bounds.contains(grid[0])
        else:
            lower, lower_closed = _optimize.find_root_1d(g, (grid[i - 1], grid[i]), cfg), False
        if j == len(grid) - 1:
            upper, upper_closed = grid[-1], bounds.contains(grid[-1])
        else:
            upper, upper_closed = _optimize.find_root_1d(g, (grid[j], grid[j + 1]), cfg), False
        intervals.append(_regions.Interval(lower, upper, lower_closed, upper_closed))
        i = j + 1
    return SupportSet(k=float(k), parameter=name, intervals=tuple(intervals), mle=float(mle), max_log_lik=top)


def min_supported_superset_check(m, s, k, cfg=_optimize.OptimizerConfig(), rtol=1e-9):
    report = evidence_vs_complement(m, s, cfg)
    holds = report.log_glr >= _math.log(k) + _math.log1p(-rtol)
    if not holds:
        return SupersetCheck(ratio=report.glr, k=k, holds=False, verified=False)
    name, f = _scan_target(m, cfg=cfg)
    _, top = _peak(m, name, f, cfg)
    level = top - _math.log(k)
    violations = tuple(
        float(x) for x in _grid(m, name, cfg)
        if f(x) - level > NEUTRAL_LOG_TOL and not s.contains((x,)))
    if violations:
        logger.warning('S_%g escapes %s at %d grid points', k, s, len(violations))
    return SupersetCheck(ratio=report.glr, k=k, holds=True, verified=not violations, violations=violations)


def k_star(m, a, cfg=_optimize.OptimizerConfig()):
    # sup{k > 1 : S_k inside a}
    r = evidence_vs_complement(m, a, cfg).glr
    return r if r > 1 else 1.0


def find_witness(m, h1, h2, cfg=_optimize.OptimizerConfig()):
    name, f = _scan_target(m, cfg=cfg)
    target = sup_log_lik(m, h2, cfg).max_value
    s1 = sup_log_lik(m, h1, cfg)
    best = None
    for x in _grid(m, name, cfg, extra=s1.argmax):
        if h1.contains((x,)):
            v = f(x)
            if v > target and (best is None or v > best[1]):
                best = (float(x), v)
    return best


def parse_grid(text):
    try:
        lo, hi, steps = text.split(':')
        lo, hi, steps = float(lo), float(hi), int(steps)
    except ValueError:
        raise _errors.UsageError('grid must look like lo:hi:steps, got {!r}'.format(text))
    if steps < 1 or (steps > 1 and not lo < hi) or (steps == 1 and lo != hi):
        raise _errors.UsageError('invalid grid {!r}'.format(text))
    return _np.linspace(lo, hi, steps)


def profile_curve(m, interest, grid, cfg=_optimize.OptimizerConfig()):
    if isinstance(grid, str):
        grid = parse_grid(grid)
    grid = _np.asarray(grid, dtype=float)
    if grid.ndim != 1 or len(grid) == 0 or _np.any(_np.diff(grid) <= 0):
        raise _errors.UsageError('profile grid must be a non-empty ascending sequence')
    if interest not in m.space.names:
        raise _errors.UsageError('model has no parameter {!r} to profile'.format(interest))
    bounds = m.space[interest].bounds
    outside = [x for x in grid if not bounds.contains(x)]
    if outside:
        raise _errors.UsageError('grid points {} lie outside {} for {}'.format(outside[:3], bounds, interest))
    name, f = _scan_target(m, interest, cfg)
    values = _np.array([f(x) for x in grid])
    peak_at, refined = _peak(m, name, f, cfg)
    if values.max() > refined:
        peak_at, refined = float(grid[int(values.argmax())]), float(values.max())
    normalized = _np.exp(values - refined)
    return ProfileCurve(
        parameter=name,
        grid=tuple(float(x) for x in grid),
        normalized_lik=tuple(float(v) for v in normalized),
        peak_index=int(normalized.argmax()),
        peak_location=float(peak_at),
        peak_log_lik=refined)
