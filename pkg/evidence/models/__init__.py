import dataclasses as _dataclasses

import evidence as _evidence
from evidence import errors as _errors

from .binomial import BinomialModel, binomial_loglik
from .two_binomial import TwoBinomialModel, two_binomial_profile_loglik
from .normal import NormalMeanModel
from .bivnorm import BivariateNormalModel, PairedSample, simulate_paired_sample


class FunctionModel(_evidence.LikelihoodModel):
    name = 'function'

    def __init__(self, space, fn, bounds=None, restricted=None):
        self._space = space
        self.fn = fn
        self.bounds = dict(bounds or {})
        self.restricted = restricted
    @property
    def space(self):
        return self._space
    def log_lik(self, point):
        return float(self.fn(*point))
    def search_bounds(self, name):
        if name in self.bounds:
            return self.bounds[name]
        return super().search_bounds(name)
    def restricted_max(self, bounds):
        if self.restricted is None:
            return None
        return self.restricted(bounds)


class OffsetModel(_evidence.LikelihoodModel):
    """``model`` with a data-independent constant added to its log-likelihood."""

    def __init__(self, model, offset):
        self.model = model
        self.offset = float(offset)
        self.name = model.name
        self.scan_points = model.scan_points
    @property
    def space(self):
        return self.model.space
    def log_lik(self, point):
        return self.model.log_lik(point) + self.offset
    def search_bounds(self, name):
        return self.model.search_bounds(name)
    def restricted_max(self, bounds):
        res = self.model.restricted_max(bounds)
        if res is None:
            return None
        return _dataclasses.replace(res, max_value=res.max_value + self.offset)


MODELS = {
    m.name: m for m in (BinomialModel, TwoBinomialModel, NormalMeanModel, BivariateNormalModel)
}


def build_model(name, **kwargs):
    try:
        cls = MODELS[name]
    except KeyError:
        raise _errors.UsageError('unknown model {!r} (expected one of {})'.format(name, ', '.join(MODELS)))
    return cls.from_args(**kwargs)
