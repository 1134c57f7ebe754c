"""Bivariate normal model for paired log-AUC values of a two-period crossover.

No sequence or period effects.  The two profile likelihoods offered are for
the mean difference mu_T - mu_R (nuisance: mu_R, sigma_T, sigma_R, rho) and
for the standard deviation ratio sigma_T / sigma_R (nuisance: mu_T, mu_R,
sigma_R, rho); both are computed numerically in the stabilized coordinates
(log sigma, atanh rho).
"""
import csv as _csv
import dataclasses as _dataclasses
import math as _math

import numpy as _np

import evidence as _evidence
from evidence import errors as _errors
from evidence import optimize as _optimize
from evidence import regions as _regions

_LOG_2PI = _math.log(2 * _math.pi)
_RHO_LIMIT = 8.0  # bound on atanh(rho)

MEAN_DIFF_SPACE = _regions.ParameterSpace.of(_regions.Parameter('gamma'))
SD_RATIO_SPACE = _regions.ParameterSpace.of(
    _regions.Parameter('ratio', 0.0, _math.inf, lower_closed=False))


@_dataclasses.dataclass(frozen=True, eq=False)
class PairedSample:
    y_t: _np.ndarray
    y_r: _np.ndarray

    def __post_init__(self):
        y_t = _np.asarray(self.y_t, dtype=float)
        y_r = _np.asarray(self.y_r, dtype=float)
        if y_t.shape != y_r.shape or y_t.ndim != 1:
            raise _errors.UsageError('y_t and y_r must be equally long vectors')
        if len(y_t) < 3:
            raise _errors.UsageError('need at least 3 pairs, got {}'.format(len(y_t)))
        if not (_np.all(_np.isfinite(y_t)) and _np.all(_np.isfinite(y_r))):
            raise _errors.UsageError('paired sample contains non-finite values')
        object.__setattr__(self, 'y_t', y_t)
        object.__setattr__(self, 'y_r', y_r)
    @property
    def n(self):
        return len(self.y_t)
    @property
    def differences(self):
        return self.y_t - self.y_r
    def moments(self, mu_t=None, mu_r=None):
        """Second moments about (mu_t, mu_r) with divisor n; sample means by default."""
        mu_t = self.y_t.mean() if mu_t is None else mu_t
        mu_r = self.y_r.mean() if mu_r is None else mu_r
        et = self.y_t - mu_t
        er = self.y_r - mu_r
        return float(_np.mean(et * et)), float(_np.mean(er * er)), float(_np.mean(et * er))


@_dataclasses.dataclass(frozen=True)
class BivariateNormalParams:
    mu_t: float
    mu_r: float
    sd_t: float
    sd_r: float
    rho: float

    def __post_init__(self):
        if not (self.sd_t > 0 and self.sd_r > 0):
            raise _errors.UsageError('standard deviations must be positive')
        if not -1.0 < self.rho < 1.0:
            raise _errors.UsageError('correlation must lie in (-1, 1), got {}'.format(self.rho))
    @classmethod
    def from_stabilized(cls, mu_t, mu_r, log_sd_t, log_sd_r, atanh_rho):
        return cls(mu_t, mu_r, _math.exp(log_sd_t), _math.exp(log_sd_r), _math.tanh(atanh_rho))
    @property
    def covariance(self):
        c = self.rho * self.sd_t * self.sd_r
        return _np.array([[self.sd_t ** 2, c], [c, self.sd_r ** 2]])


def _loglik(s, mu_t, mu_r, sd_t, sd_r, rho):
    one_minus = 1.0 - rho * rho
    if not (sd_t > 0 and sd_r > 0 and one_minus > 0):
        raise _errors.NumericError('singular covariance (sd_t={}, sd_r={}, rho={})'.format(sd_t, sd_r, rho))
    zt = (s.y_t - mu_t) / sd_t
    zr = (s.y_r - mu_r) / sd_r
    quad = float(_np.sum(zt * zt - 2.0 * rho * zt * zr + zr * zr)) / one_minus
    log_det = 2.0 * _math.log(sd_t) + 2.0 * _math.log(sd_r) + _math.log(one_minus)
    return -s.n * _LOG_2PI - 0.5 * s.n * log_det - 0.5 * quad


def bivnorm_loglik(s, p):
    """Exact bivariate normal log-density summed over the pairs."""
    return _loglik(s, p.mu_t, p.mu_r, p.sd_t, p.sd_r, p.rho)


def sample_mle(s):
    stt, srr, str_ = s.moments()
    return BivariateNormalParams(
        float(s.y_t.mean()), float(s.y_r.mean()),
        _math.sqrt(stt), _math.sqrt(srr), str_ / _math.sqrt(stt * srr))


def max_log_lik(s):
    """-n (log 2 pi + 1 + log det(Sigma_hat) / 2) at the sample MLE."""
    stt, srr, str_ = s.moments()
    return -s.n * (_LOG_2PI + 1.0 + 0.5 * _math.log(stt * srr - str_ * str_))


def _covariance_start(stt, srr, str_):
    sd_t, sd_r = _math.sqrt(stt), _math.sqrt(srr)
    rho = max(min(str_ / (sd_t * sd_r), 0.999), -0.999)
    return _math.log(sd_t), _math.log(sd_r), _math.atanh(rho)


PROFILE_CONFIG = _optimize.OptimizerConfig(
    abs_tol_x=1e-9, abs_tol_f=1e-12, max_iters=5000, multistart_count=1)


def bivnorm_profile_mean_diff(s, gamma, cfg=PROFILE_CONFIG):
    """sup over (mu_R, sigma_T, sigma_R, rho) with mu_T = mu_R + gamma."""
    gamma = float(gamma)
    mt, mr = float(s.y_t.mean()), float(s.y_r.mean())
    shift = abs(gamma - (mt - mr))
    # start from the covariance that is optimal for mu_R at its sample mean
    log_t, log_r, z = _covariance_start(*s.moments(mr + gamma, mr))
    spread = max(_math.sqrt(s.moments()[0]), _math.sqrt(s.moments()[1]), 1e-8)
    box = [
        (min(mr, mt - gamma) - 10 * spread, max(mr, mt - gamma) + 10 * spread),
        (log_t - 12.0, log_t + 12.0),
        (log_r - 12.0, log_r + 12.0),
        (-_RHO_LIMIT, _RHO_LIMIT),
    ]

    def f(v):
        mu_r, lt, lr, a = v
        return _loglik(s, mu_r + gamma, mu_r, _math.exp(lt), _math.exp(lr), _math.tanh(a))

    res = _optimize.maximize_box(f, box, cfg, x0=(mr, log_t, log_r, max(min(z, _RHO_LIMIT), -_RHO_LIMIT)))
    if not res.converged:
        _optimize.logger.warning('mean-difference profile at gamma=%g (shift %g) did not converge', gamma, shift)
    return res


def bivnorm_profile_sd_ratio(s, ratio, cfg=PROFILE_CONFIG):
    """sup over (mu_T, mu_R, sigma_R, rho) with sigma_T = ratio * sigma_R; means sit at the sample means."""
    ratio = float(ratio)
    if not ratio > 0:
        raise _errors.UsageError('the standard deviation ratio must be positive, got {}'.format(ratio))
    mt, mr = float(s.y_t.mean()), float(s.y_r.mean())
    stt, srr, str_ = s.moments()
    _, log_r, z = _covariance_start(stt, srr, str_)
    # start sigma_R between the reference scale and the rescaled test scale
    log_r = 0.5 * (log_r + 0.5 * _math.log(stt) - _math.log(ratio))
    box = [(log_r - 12.0, log_r + 12.0), (-_RHO_LIMIT, _RHO_LIMIT)]

    def f(v):
        lr, a = v
        sd_r = _math.exp(lr)
        return _loglik(s, mt, mr, ratio * sd_r, sd_r, _math.tanh(a))

    return _optimize.maximize_box(f, box, cfg, x0=(log_r, max(min(z, _RHO_LIMIT), -_RHO_LIMIT)))


def simulate_paired_sample(n, mu_t=0.0, mu_r=0.0, sd_t=0.2, sd_r=0.2, rho=0.7, seed=0):
    params = BivariateNormalParams(mu_t, mu_r, sd_t, sd_r, rho)
    rng = _np.random.default_rng(seed)
    draws = rng.multivariate_normal([params.mu_t, params.mu_r], params.covariance, size=n)
    return PairedSample(draws[:, 0], draws[:, 1])


def read_paired_csv(f, **kwargs):
    reader = _csv.reader(f, **kwargs)
    headers = [h.strip() for h in next(reader, [])]
    if headers != ['y_t', 'y_r']:
        raise _errors.UsageError('paired sample CSV needs the header y_t,y_r, got {}'.format(','.join(headers)))
    y_t, y_r = [], []
    for row in reader:
        if not row:
            continue
        r = dict(zip(headers, row))
        try:
            y_t.append(float(r['y_t']))
            y_r.append(float(r['y_r']))
        except (KeyError, ValueError):
            raise _errors.UsageError('bad paired sample row: {}'.format(row))
    return PairedSample(y_t, y_r)


def write_paired_csv(f, s):
    writer = _csv.writer(f)
    writer.writerow(('y_t', 'y_r'))
    for t, r in zip(s.y_t, s.y_r):
        writer.writerow((repr(float(t)), repr(float(r))))


class BivariateNormalModel(_evidence.LikelihoodModel):
    name = 'bivnorm'
    scan_points = 401
    requirements = {
        'data': {'help': 'CSV file of paired log-AUC values with header y_t,y_r'},
        'contrast': {
            'choices': ('mean-diff', 'sd-ratio'),
            'default': None,
            'help': 'compare mu_T - mu_R (gamma) or sigma_T / sigma_R (ratio); default follows --interest',
        },
    }

    def __init__(self, sample, contrast='mean-diff', cfg=PROFILE_CONFIG):
        if contrast not in ('mean-diff', 'sd-ratio'):
            raise _errors.UsageError('contrast must be mean-diff or sd-ratio, got {!r}'.format(contrast))
        self.sample = sample
        self.kind = contrast
        self.cfg = cfg
        if contrast == 'mean-diff':
            self._space = MEAN_DIFF_SPACE
            self.nuisance = ('mu_r', 'sd_t', 'sd_r', 'rho')
        else:
            self._space = SD_RATIO_SPACE
            self.nuisance = ('mu_t', 'mu_r', 'sd_r', 'rho')
    @property
    def space(self):
        return self._space
    @property
    def mle(self):
        p = sample_mle(self.sample)
        if self.kind == 'mean-diff':
            return p.mu_t - p.mu_r
        return p.sd_t / p.sd_r
    def profile(self, value):
        if self.kind == 'mean-diff':
            return bivnorm_profile_mean_diff(self.sample, value, self.cfg)
        return bivnorm_profile_sd_ratio(self.sample, value, self.cfg)
    def log_lik(self, point):
        value = point[0]
        if self.kind == 'sd-ratio' and not value > 0:
            return float('-inf')
        return self.profile(value).max_value
    def search_bounds(self, name):
        self.space[name]
        if self.kind == 'mean-diff':
            spread = max(float(_np.std(self.sample.differences, ddof=1)), 1e-8)
            return self.mle - 20 * spread, self.mle + 20 * spread
        return self.mle * _math.exp(-6.0), self.mle * _math.exp(6.0)
    def describe(self):
        return {'model': self.name, 'contrast': self.kind, 'pairs': self.sample.n}
    @classmethod
    def from_args(cls, data=None, contrast=None, interest=None, **kwargs):
        if data is None:
            raise _errors.UsageError('the bivnorm model needs --data')
        try:
            with open(data, newline='') as f:
                sample = read_paired_csv(f)
        except OSError as ex:
            raise _errors.UsageError('cannot read {}: {}'.format(data, ex))
        if contrast is None:
            contrast = 'sd-ratio' if interest == 'ratio' else 'mean-diff'
        return cls(sample, contrast)
