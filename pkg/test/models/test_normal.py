import math

import pytest

from evidence import core
from evidence import errors
from evidence import regions
from evidence.models import NormalMeanModel


@pytest.fixture
def m():
    # z = 1 for mu = 0
    return NormalMeanModel(0.2, 25, 1.0)


def test__log_lik(m):
    assert m.log_lik((0.2,)) == 0.0
    assert m.log_lik((0.0,)) == pytest.approx(-0.5)
    assert m.standard_error == pytest.approx(0.2)


def test__search_bounds(m):
    assert m.search_bounds('mu') == pytest.approx((-9.8, 10.2))
    with pytest.raises(errors.UsageError):
        m.search_bounds('theta')


def test__one_sided_glr(m):
    report = core.glr(m, regions.parse_region('mu > 0', m.space), regions.parse_region('mu <= 0', m.space))
    assert report.log_glr == pytest.approx(0.5, abs=1e-12)
    assert report.glr == pytest.approx(math.exp(0.5))


def test__point_null_against_everything_else(m):
    report = core.evidence_vs_complement(m, regions.parse_region('mu == 0', m.space))
    assert report.log_glr == pytest.approx(-0.5)
    assert report.attained2
    assert report.argmax2 == (0.2,)


@pytest.mark.parametrize('kwargs', [
    {'mean': 0.0, 'n': 0},
    {'mean': 0.0, 'n': 2.5},
    {'mean': 0.0, 'n': 10, 'sigma': 0.0},
])
def test__validation(kwargs):
    with pytest.raises(errors.UsageError):
        NormalMeanModel(**kwargs)


def test__from_args():
    assert NormalMeanModel.from_args(mean=1.0, n=4, sigma=2.0).describe() == {
        'model': 'normal', 'mean': 1.0, 'n': 4, 'sigma': 2.0}
    with pytest.raises(errors.UsageError):
        NormalMeanModel.from_args(n=4)
