"""Evidence from reduced data: the outcome of a test, or a p-value.

All ratios here are H2 over H1, where H1 is the hypothesis a test rejects.

p-values are handled through the density of U under each hypothesis.  The
tempting alternative of taking the best GLR over every level at which the
observed p-value would still reject (or, dually, the worst one over every
level at which it would not) is left out on purpose: the two versions
disagree in general, and once the level depends on the data the test result
is no longer the fixed-level statistic the test-result ratios are built on.
"""
import dataclasses as _dataclasses
import math as _math

import numpy as _np
import scipy.stats as _stats

from . import core as _core
from . import errors as _errors
from . import models as _models
from . import optimize as _optimize
from . import regions as _regions

KINDS = ('one_sided', 'point_null_one_sided', 'two_sided_point_null', 'equivalence', 'tabulated')
THETA_SPACE = _regions.ParameterSpace.of(_regions.Parameter('theta'))
MU_SPACE = _regions.ParameterSpace.of(_regions.Parameter('mu'))


@_dataclasses.dataclass(frozen=True, eq=False)
class PowerFunction:
    """pi(theta) = P(T = 1), either as an archetype shape or tabulated on a grid.

    The archetypes assume a power curve rising from 0 to 1 with pi = alpha
    at the boundary of H1 (for equivalence tests, peaking at pi_max inside
    the equivalence region).
    """
    kind: str
    alpha: float = None
    pi_max: float = None
    grid: _np.ndarray = None
    power: _np.ndarray = None
    h1: _regions.Region = None
    h2: _regions.Region = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise _errors.UsageError('unknown power function kind {!r} (expected one of {})'.format(
                self.kind, ', '.join(KINDS)))
        if self.kind == 'tabulated':
            self._check_table()
            return
        if self.alpha is None or not 0.0 < self.alpha < 1.0:
            raise _errors.UsageError('alpha must lie in (0, 1), got {}'.format(self.alpha))
        if self.kind == 'equivalence':
            if self.pi_max is None or not self.alpha < self.pi_max <= 1.0:
                raise _errors.UsageError('equivalence tests need alpha < pi_max <= 1, got pi_max={}'.format(self.pi_max))
        elif self.pi_max is not None:
            raise _errors.UsageError('pi_max only applies to equivalence tests')
    def _check_table(self):
        grid = _np.asarray(self.grid, dtype=float)
        power = _np.asarray(self.power, dtype=float)
        if grid.ndim != 1 or grid.shape != power.shape or len(grid) == 0:
            raise _errors.UsageError('tabulated power needs equally long grid and power vectors')
        if _np.any((power < 0) | (power > 1)) or not _np.all(_np.isfinite(power)):
            raise _errors.UsageError('power values must lie in [0, 1]')
        if self.h1 is None or self.h2 is None:
            raise _errors.UsageError('tabulated power needs both hypotheses')
        object.__setattr__(self, 'grid', grid)
        object.__setattr__(self, 'power', power)
    @classmethod
    def one_sided(cls, alpha):
        return cls('one_sided', alpha)
    @classmethod
    def point_null_one_sided(cls, alpha):
        return cls('point_null_one_sided', alpha)
    @classmethod
    def two_sided_point_null(cls, alpha):
        return cls('two_sided_point_null', alpha)
    @classmethod
    def equivalence(cls, alpha, pi_max):
        return cls('equivalence', alpha, pi_max)
    @classmethod
    def tabulated(cls, grid, power, h1, h2, space=THETA_SPACE):
        if isinstance(h1, str):
            h1 = _regions.parse_region(h1, space)
        if isinstance(h2, str):
            h2 = _regions.parse_region(h2, space)
        return cls('tabulated', grid=grid, power=power, h1=h1, h2=h2)
    def on(self, region):
        """Tabulated power values at the grid points inside region."""
        inside = _np.array([region.contains((x,)) for x in self.grid], dtype=bool)
        if not inside.any():
            raise _errors.UsageError('power grid has no point in {}'.format(region))
        return self.power[inside]


def _ratio(num, den):
    if den == 0.0:
        if num == 0.0:
            raise _errors.NumericError('both hypotheses give the observed result probability 0')
        return _math.inf
    return num / den


def glr_from_test(pf, t):
    """sup_H2 P(T = t) / sup_H1 P(T = t) for t = 1 (H1 rejected) or 0."""
    if t not in (0, 1):
        raise _errors.UsageError('test outcome must be 0 or 1, got {!r}'.format(t))
    if pf.kind == 'tabulated':
        p1, p2 = pf.on(pf.h1), pf.on(pf.h2)
        if t == 1:
            return _ratio(float(p2.max()), float(p1.max()))
        return _ratio(1.0 - float(p2.min()), 1.0 - float(p1.min()))
    if t == 1:
        if pf.kind == 'equivalence':
            return pf.pi_max / pf.alpha
        return 1.0 / pf.alpha
    if pf.kind in ('one_sided', 'equivalence'):
        return 1.0 - pf.alpha
    return 1.0


def glr_from_pvalue_normal(u):
    """exp(+-q^2 / 2) with q = Phi^-1(1 - u): the ratio for mu > 0 over mu <= 0 in a normal-shift test."""
    _check_pvalue(u)
    q = float(_stats.norm.isf(u))
    if u <= 0.5:
        return _math.exp(q * q / 2.0)
    return _math.exp(-q * q / 2.0)


def _check_pvalue(u):
    if not 0.0 < u < 1.0:
        raise _errors.UsageError('p-value must lie in (0, 1), got {}'.format(u))


@_dataclasses.dataclass(frozen=True)
class ShiftFamily:
    """V ~ N(scale * mu, 1), with the p-value U = 1 - Phi(V)."""
    scale: float = 1.0

    def __post_init__(self):
        if not self.scale > 0:
            raise _errors.UsageError('shift scale must be positive, got {}'.format(self.scale))
    @classmethod
    def one_sample(cls, n=1, sigma=1.0):
        return cls(_math.sqrt(n) / sigma)
    @classmethod
    def two_sample(cls, n1, n2, sigma=1.0):
        """V = (1/n1 + 1/n2)^(-1/2) (Ybar2 - Ybar1) / sigma, with mu = mu2 - mu1."""
        return cls(1.0 / (sigma * _math.sqrt(1.0 / n1 + 1.0 / n2)))
    def model(self, u):
        """Log density of U = u as a function of mu, up to a term free of mu."""
        q = float(_stats.norm.isf(u))

        def restricted(bounds):
            (lo, hi), = bounds
            mu = min(max(q / self.scale, lo), hi)
            return _optimize.MaxResult((mu,), -0.5 * (q - self.scale * mu) ** 2)

        return _models.FunctionModel(
            MU_SPACE, lambda mu: -0.5 * (q - self.scale * mu) ** 2,
            bounds={'mu': ((q - 50.0) / self.scale, (q + 50.0) / self.scale)},
            restricted=restricted)


def glr_from_pvalue_general(u, shift=ShiftFamily(), h1='mu <= 0', h2='mu > 0'):
    _check_pvalue(u)
    if isinstance(h1, str):
        h1 = _regions.parse_region(h1, MU_SPACE)
    if isinstance(h2, str):
        h2 = _regions.parse_region(h2, MU_SPACE)
    return _core.glr(shift.model(u), h2, h1).glr


@_dataclasses.dataclass(frozen=True)
class ReducedEvidence:
    glr: float
    direction: str
    strength_label: str

    def to_json(self):
        return {'glr': self.glr, 'direction': self.direction,
                'strength_label': self.strength_label, 'labels_descriptive': True}


def describe(r):
    """Direction and descriptive strength for an H2-over-H1 ratio."""
    if r <= 0 or _math.isnan(r):
        raise _errors.NumericError('ratio must be positive, got {}'.format(r))
    log_r = _math.log(r) if _math.isfinite(r) else _math.inf
    level, favors = _core.strength(log_r)
    direction = {'H1': 'H2', 'H2': 'H1', None: 'neutral'}[favors]
    return ReducedEvidence(r, direction, _core.strength_label(log_r, names=('H2', 'H1')))
