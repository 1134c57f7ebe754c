import evidence as _evidence

from evidence import errors as _errors
from evidence import optimize as _optimize
from evidence import regions as _regions

from .binomial import binomial_loglik, _check_counts

SPACE = _regions.ParameterSpace.of(_regions.Parameter('delta', -1.0, 1.0))


class TwoBinomialModel(_evidence.LikelihoodModel):
    """Difference delta = p1 - p2 of two response rates, with p2 profiled out.

    Group 1 is the group whose rate comes first in the difference (83/88 for
    chemotherapy against 69/76 for radiation therapy gives delta > 0).
    """
    name = 'two-binomial'
    nuisance = ('p2',)
    # each scan point runs a nuisance maximization
    scan_points = 2001
    requirements = {
        'x1': {'type': int, 'help': 'successes in group 1'},
        'n1': {'type': int, 'help': 'trials in group 1'},
        'x2': {'type': int, 'help': 'successes in group 2'},
        'n2': {'type': int, 'help': 'trials in group 2'},
    }

    def __init__(self, x1, n1, x2, n2, cfg=None):
        self.x1, self.n1 = _check_counts(x1, n1, '1')
        self.x2, self.n2 = _check_counts(x2, n2, '2')
        self.cfg = cfg or _optimize.OptimizerConfig(multistart_count=2)
    @property
    def space(self):
        return SPACE
    @property
    def mle(self):
        return self.x1 / self.n1 - self.x2 / self.n2
    def nuisance_range(self, delta):
        if not -1.0 <= delta <= 1.0:
            raise _errors.UsageError('delta must lie in [-1, 1], got {}'.format(delta))
        return max(0.0, -delta), min(1.0, 1.0 - delta)
    def joint_log_lik(self, delta, p2):
        p1 = min(max(p2 + delta, 0.0), 1.0)
        return binomial_loglik(self.x1, self.n1, p1) + binomial_loglik(self.x2, self.n2, p2)
    def profile(self, delta):
        return _optimize.maximize_1d(
            lambda p2: self.joint_log_lik(delta, p2), self.nuisance_range(delta), self.cfg)
    def log_lik(self, point):
        try:
            return self.profile(point[0]).max_value
        except _errors.OptimizationError:
            # only reachable at delta = +-1, where the single feasible p2 has zero likelihood
            return float('-inf')
    def describe(self):
        return {'model': self.name, 'x1': self.x1, 'n1': self.n1, 'x2': self.x2, 'n2': self.n2}
    @classmethod
    def from_args(cls, x1=None, n1=None, x2=None, n2=None, **kwargs):
        if None in (x1, n1, x2, n2):
            raise _errors.UsageError('the two-binomial model needs --x1 --n1 --x2 --n2')
        return cls(x1, n1, x2, n2)


def two_binomial_profile_loglik(model, delta):
    """Profile log-likelihood of delta, maximized over the feasible p2."""
    return model.profile(delta).max_value
