"""Maximization and root-finding kernels.

Everything works on log-likelihood values.  Scalar problems use scipy's
bounded Brent search (golden section with parabolic steps) from several
deterministic starting sub-intervals; boxes use Nelder-Mead from several
seeded starting points; support-set boundaries use bisection.
"""
import dataclasses as _dataclasses
import logging as _logging
import math as _math

import numpy as _np
import scipy.optimize as _optimize

from . import errors as _errors

logger = _logging.getLogger(__name__)

# stand-in for -inf inside the search so simplex and parabola arithmetic stays finite
_FLOOR = -1e100


@_dataclasses.dataclass(frozen=True)
class OptimizerConfig:
    abs_tol_x: float = 1e-10
    abs_tol_f: float = 1e-12
    max_iters: int = 500
    multistart_count: int = 8
    seed: int = 0
    grid_points: int = 10001

    def __post_init__(self):
        if not (self.abs_tol_x > 0 and self.abs_tol_f > 0):
            raise _errors.UsageError('optimizer tolerances must be positive')
        if self.max_iters < 1:
            raise _errors.UsageError('max_iters must be at least 1')
        if self.multistart_count < 1:
            raise _errors.UsageError('multistart_count must be at least 1')
        if self.grid_points < 2:
            raise _errors.UsageError('grid_points must be at least 2')
    def replace(self, **changes):
        return _dataclasses.replace(self, **changes)
    def to_json(self):
        return _dataclasses.asdict(self)


@_dataclasses.dataclass(frozen=True)
class MaxResult:
    argmax: tuple
    max_value: float
    iterations: int = 0
    converged: bool = True
    attained: bool = True

    def to_json(self):
        return {
            'argmax': list(self.argmax),
            'max_value': self.max_value,
            'iterations': self.iterations,
            'converged': self.converged,
            'attained': self.attained,
        }


def _finite_or_floor(value):
    if value is None or _math.isnan(value):
        return -_math.inf
    return value


def maximize_1d(f, interval, cfg=OptimizerConfig()):
    a, b = float(interval[0]), float(interval[1])
    if a > b:
        raise _errors.UsageError('interval [{}, {}] is reversed'.format(a, b))
    if not (_math.isfinite(a) and _math.isfinite(b)):
        raise _errors.UsageError('maximize_1d needs a finite interval, got [{}, {}]'.format(a, b))
    def value(x):
        return _finite_or_floor(float(f(x)))

    if a == b:
        v = value(a)
        if v == -_math.inf:
            raise _errors.OptimizationError('objective is -inf at the only feasible point {}'.format(a))
        return MaxResult((a,), v)

    best_x, best_v = a, value(a)
    vb = value(b)
    if vb > best_v:
        best_x, best_v = b, vb
    iterations = 0
    converged = True
    edges = _np.linspace(a, b, cfg.multistart_count + 1)
    for lo, hi in zip(edges[:-1], edges[1:]):
        res = _optimize.minimize_scalar(
            lambda x: -max(value(x), _FLOOR),
            bounds=(lo, hi),
            method='bounded',
            options={'xatol': cfg.abs_tol_x, 'maxiter': cfg.max_iters})
        iterations += int(res.nfev)
        converged = converged and bool(res.success)
        v = value(res.x)
        if v > best_v:
            best_x, best_v = float(res.x), v
    if best_v == -_math.inf:
        raise _errors.OptimizationError('objective is -inf everywhere on [{}, {}]'.format(a, b))
    if not converged:
        logger.warning('maximize_1d on [%g, %g] hit max_iters=%d; best so far %r at %r',
                       a, b, cfg.max_iters, best_v, best_x)
    return MaxResult((best_x,), best_v, iterations, converged)


def maximize_box(f, box, cfg=OptimizerConfig(), x0=None):
    box = [(float(lo), float(hi)) for lo, hi in box]
    if not box:
        raise _errors.UsageError('maximize_box needs at least one dimension')
    for lo, hi in box:
        if not (_math.isfinite(lo) and _math.isfinite(hi)) or lo > hi:
            raise _errors.UsageError('maximize_box needs a finite box, got {}'.format(box))
    if len(box) == 1:
        return maximize_1d(lambda x: f(_np.array([x])), box[0], cfg)

    lower = _np.array([lo for lo, _ in box])
    upper = _np.array([hi for _, hi in box])
    free = lower < upper

    def full(z):
        x = lower.copy()
        x[free] = z
        return x
    def value(x):
        return _finite_or_floor(float(f(x)))

    if not free.any():
        v = value(lower)
        if v == -_math.inf:
            raise _errors.OptimizationError('objective is -inf at the only feasible point')
        return MaxResult(tuple(lower), v)

    rng = _np.random.default_rng(cfg.seed)
    starts = []
    if x0 is not None:
        starts.append(_np.clip(_np.asarray(x0, dtype=float), lower, upper)[free])
    while len(starts) < cfg.multistart_count:
        starts.append(rng.uniform(lower[free], upper[free]))

    best_x, best_v = None, -_math.inf
    iterations = 0
    converged = True
    bounds = list(zip(lower[free], upper[free]))
    for start in starts:
        res = _optimize.minimize(
            lambda z: -max(value(full(z)), _FLOOR),
            start,
            method='Nelder-Mead',
            bounds=bounds,
            options={
                'xatol': cfg.abs_tol_x,
                'fatol': cfg.abs_tol_f,
                'maxiter': cfg.max_iters,
                'adaptive': int(free.sum()) > 2,
            })
        iterations += int(res.nit)
        simplex = res.final_simplex[0]
        diameter = float(_np.max(_np.abs(simplex - simplex[0])))
        converged = converged and (bool(res.success) or diameter < cfg.abs_tol_x)
        v = value(full(res.x))
        if v > best_v:
            best_x, best_v = full(res.x), v
    if best_v == -_math.inf:
        raise _errors.OptimizationError('objective is -inf at every start in {}'.format(box))
    if not converged:
        logger.warning('maximize_box on %s did not converge in %d iterations; best so far %r',
                       box, cfg.max_iters, best_v)
    return MaxResult(tuple(float(v) for v in best_x), best_v, iterations, converged)


def find_root_1d(g, bracket, cfg=OptimizerConfig()):
    a, b = float(bracket[0]), float(bracket[1])
    ga, gb = float(g(a)), float(g(b))
    if ga == 0:
        return a
    if gb == 0:
        return b
    if _math.isnan(ga) or _math.isnan(gb) or (ga > 0) == (gb > 0):
        raise _errors.BracketError(a, b, ga, gb)
    root = _optimize.bisect(g, a, b, xtol=cfg.abs_tol_x, maxiter=cfg.max_iters)
    logger.debug('bisection on [%g, %g] -> %r', a, b, root)
    return float(root)
