import math as _math

import evidence as _evidence

from evidence import errors as _errors
from evidence import optimize as _optimize
from evidence import regions as _regions

SPACE = _regions.ParameterSpace.of(_regions.Parameter('mu'))


class NormalMeanModel(_evidence.LikelihoodModel):
    """n draws from N(mu, sigma^2) with sigma known, summarized by their mean."""
    name = 'normal'
    requirements = {
        'mean': {'type': float, 'help': 'sample mean'},
        'n': {'type': int, 'help': 'sample size'},
        'sigma': {'type': float, 'default': 1.0, 'help': 'known standard deviation'},
    }

    def __init__(self, mean, n, sigma=1.0):
        if n < 1 or int(n) != n:
            raise _errors.UsageError('sample size must be a positive integer, got {}'.format(n))
        if not sigma > 0:
            raise _errors.UsageError('sigma must be positive, got {}'.format(sigma))
        self.mean = float(mean)
        self.n = int(n)
        self.sigma = float(sigma)
    @property
    def space(self):
        return SPACE
    @property
    def standard_error(self):
        return self.sigma / _math.sqrt(self.n)
    def log_lik(self, point):
        z = (self.mean - point[0]) / self.standard_error
        return -0.5 * z * z
    def search_bounds(self, name):
        SPACE[name]
        return self.mean - 50 * self.standard_error, self.mean + 50 * self.standard_error
    def restricted_max(self, bounds):
        (lo, hi), = bounds
        mu = min(max(self.mean, lo), hi)
        return _optimize.MaxResult((mu,), self.log_lik((mu,)))
    def describe(self):
        return {'model': self.name, 'mean': self.mean, 'n': self.n, 'sigma': self.sigma}
    @classmethod
    def from_args(cls, mean=None, n=None, sigma=1.0, **kwargs):
        if mean is None or n is None:
            raise _errors.UsageError('the normal model needs --mean and --n')
        return cls(mean, n, sigma)
