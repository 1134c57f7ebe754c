import evidence as _evidence
import scipy.special as _special

from evidence import errors as _errors
from evidence import optimize as _optimize
from evidence import regions as _regions

SPACE = _regions.ParameterSpace.of(_regions.Parameter('theta', 0.0, 1.0))


def binomial_loglik(x, n, theta):
    """x log(theta) + (n - x) log(1 - theta), with 0 log 0 = 0; the binomial coefficient is dropped."""
    if not 0.0 <= theta <= 1.0:
        raise _errors.UsageError('theta must lie in [0, 1], got {}'.format(theta))
    return float(_special.xlogy(x, theta) + _special.xlogy(n - x, 1.0 - theta))


def _check_counts(x, n, label=''):
    if int(x) != x or int(n) != n:
        raise _errors.UsageError('counts must be integers, got x{0}={1}, n{0}={2}'.format(label, x, n))
    if n < 1 or not 0 <= x <= n:
        raise _errors.UsageError('need 0 <= x{0} <= n{0} and n{0} >= 1, got {1}/{2}'.format(label, x, n))
    return int(x), int(n)


class BinomialModel(_evidence.LikelihoodModel):
    name = 'binomial'
    requirements = {
        'x': {'type': int, 'help': 'number of successes'},
        'n': {'type': int, 'help': 'number of trials'},
    }

    def __init__(self, x, n):
        self.x, self.n = _check_counts(x, n)
    @property
    def space(self):
        return SPACE
    @property
    def mle(self):
        return self.x / self.n
    def log_lik(self, point):
        return binomial_loglik(self.x, self.n, point[0])
    def restricted_max(self, bounds):
        # concave in theta: the restricted maximizer is the MLE clipped into the interval
        (lo, hi), = bounds
        theta = min(max(self.mle, lo), hi)
        return _optimize.MaxResult((theta,), self.log_lik((theta,)))
    def describe(self):
        return {'model': self.name, 'x': self.x, 'n': self.n}
    @classmethod
    def from_args(cls, x=None, n=None, **kwargs):
        if x is None or n is None:
            raise _errors.UsageError('the binomial model needs --x and --n')
        return cls(x, n)
