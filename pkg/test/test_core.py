import math

import hypothesis
import hypothesis.strategies as st
import numpy as np
import pytest

from evidence import core
from evidence import errors
from evidence import models
from evidence import optimize
from evidence import regions
from evidence.models import BinomialModel, OffsetModel

CFG = optimize.OptimizerConfig()
GRID_CFG = optimize.OptimizerConfig(grid_points=10 ** 4)
LOG_GLR_917 = 9 * math.log(9 / 17) + 8 * math.log(8 / 17) - 9 * math.log(0.2) - 8 * math.log(0.8)


@pytest.fixture
def m():
    return BinomialModel(9, 17)


def region(m, text):
    return regions.parse_region(text, m.space)


def test__sup_log_lik_monotone_piece(m):
    res = core.sup_log_lik(m, region(m, 'theta <= 0.2'), CFG)
    assert res.argmax == (0.2,)
    assert res.max_value == pytest.approx(-16.2700, abs=1e-4)
    assert res.attained


def test__sup_log_lik_full_space(m):
    res = core.sup_log_lik(m, regions.Region.full(m.space), CFG)
    assert res.argmax == (9 / 17,)
    assert res.max_value == pytest.approx(-11.7541, abs=1e-4)


def test__sup_log_lik_point(m):
    res = core.sup_log_lik(m, region(m, 'theta == 0.4'), CFG)
    assert res.argmax == (0.4,)
    assert res.max_value == m.log_lik((0.4,))


def test__sup_log_lik_open_endpoint_is_not_attained(m):
    res = core.sup_log_lik(m, region(m, 'theta < 0.2'), CFG)
    assert res.argmax == (0.2,)
    assert not res.attained


def test__sup_log_lik_without_closed_form():
    f = models.FunctionModel(
        regions.ParameterSpace.of(regions.Parameter('mu')),
        lambda mu: -0.5 * (mu - 1.5) ** 2,
        bounds={'mu': (-10.0, 10.0)})
    res = core.sup_log_lik(f, regions.parse_region('mu <= 1', f.space), CFG)
    assert res.argmax[0] == pytest.approx(1.0, abs=1e-8)
    res = core.sup_log_lik(f, regions.parse_region('mu > 1', f.space), CFG)
    assert res.argmax[0] == pytest.approx(1.5, abs=1e-6)


def test__sup_log_lik_empty_region(m):
    with pytest.raises(errors.EmptyRegionError):
        core.sup_log_lik(m, regions.Region.empty(m.space), CFG)


def test__glr_binomial(m):
    report = core.glr(m, region(m, 'theta > 0.2'), region(m, 'theta <= 0.2'), CFG)
    assert 89.5 <= report.glr <= 92.5
    assert report.log_glr == pytest.approx(LOG_GLR_917, rel=1e-12)
    assert report.strength == 'strong'
    assert report.favors == 'H1'
    assert report.argmax1 == (9 / 17,)
    assert report.argmax2 == (0.2,)


def test__glr_identical_hypotheses(m):
    h = region(m, 'theta <= 0.2')
    report = core.glr(m, h, h, CFG)
    assert report.glr == 1.0
    assert report.strength == 'neutral'
    assert report.favors is None


def test__glr_to_json(m):
    report = core.glr(m, region(m, 'theta > 0.2'), region(m, 'theta <= 0.2'), CFG)
    d = report.to_json()
    assert d['h1']['argmax'] == {'theta': 9 / 17}
    assert d['h2']['attained'] is True
    assert d['strength_label'] == 'strong (supports H1)'
    assert d['labels_descriptive'] is True


@pytest.mark.parametrize('ratio,expected', [
    (1.0, ('neutral', None)),
    (2.0, ('weak', 'H1')),
    (8.0, ('fairly strong', 'H1')),
    (31.9, ('fairly strong', 'H1')),
    (32.0, ('strong', 'H1')),
    (1 / 91.0, ('strong', 'H2')),
    (1 / 4.0, ('weak', 'H2')),
])
def test__strength(ratio, expected):
    assert core.strength(math.log(ratio)) == expected


def test__strength_label_names():
    assert core.strength_label(math.log(40), names=('H2', 'H1')) == 'strong (supports H2)'
    assert core.strength_label(0.0) == 'neutral'


def test__glr_overflow_is_infinite():
    big = models.FunctionModel(
        regions.ParameterSpace.of(regions.Parameter('mu', -1.0, 1.0)),
        lambda mu: -1e4 * mu * mu)
    report = core.glr(big, regions.parse_region('mu == 0', big.space), regions.parse_region('mu == 1', big.space))
    assert report.glr == math.inf
    assert report.log_glr == 1e4


def test__evidence_vs_complement(m):
    report = core.evidence_vs_complement(m, region(m, 'theta <= 0.2'), CFG)
    assert report.glr == pytest.approx(1 / math.exp(LOG_GLR_917), rel=1e-12)


def test__evidence_for_a_point_never_exceeds_one(m):
    report = core.evidence_vs_complement(m, region(m, 'theta == {!r}'.format(9 / 17)), CFG)
    assert report.glr <= 1.0
    assert not report.attained2


def test__lrt_statistic(m):
    assert core.lrt_statistic(m, region(m, 'theta <= 0.2'), CFG) == pytest.approx(math.exp(LOG_GLR_917), rel=1e-12)
    assert core.lrt_statistic(m, region(m, 'theta > 0.2'), CFG) == 1.0


def test__find_witness(m):
    h1, h2 = region(m, 'theta > 0.2'), region(m, 'theta <= 0.2')
    point, value = core.find_witness(m, h1, h2, CFG)
    assert h1.contains((point,))
    assert value > core.sup_log_lik(m, h2, CFG).max_value
    assert core.find_witness(m, h2, h1, CFG) is None


def _support_oracle(m, k):
    """Endpoints of {L > max / k} from a coarse scan refined on a 1e-7 grid."""
    top = m.log_lik((m.mle,))
    level = top - math.log(k)

    def ll(t):
        return 9 * np.log(t) + 8 * np.log1p(-t)

    coarse = np.arange(1, 10 ** 5) / 1e5
    inside = coarse[ll(coarse) > level]
    ends = []
    for edge, pick in ((inside[0], 0), (inside[-1], -1)):
        fine = edge + np.arange(-200, 201) / 1e7
        ends.append(fine[ll(fine) > level][pick])
    return ends


def test__support_set_binomial(m):
    s = core.support_set(m, 8, CFG)
    assert len(s.intervals) == 1
    lower, upper = _support_oracle(m, 8)
    assert s.intervals[0].lower == pytest.approx(lower, abs=1e-6)
    assert s.intervals[0].upper == pytest.approx(upper, abs=1e-6)
    assert not s.intervals[0].lower_closed
    assert s.mle == 9 / 17
    assert s.contains(9 / 17)
    assert not s.contains(0.2)


def test__support_set_threshold(m):
    s = core.support_set(m, 8, CFG)
    for t in (s.intervals[0].lower, s.intervals[0].upper):
        assert m.log_lik((t,)) == pytest.approx(s.threshold_log_lik, abs=1e-8)


def test__support_set_shrinks_toward_mle(m):
    s = core.support_set(m, 1.0001, CFG)
    i = s.intervals[0]
    assert i.lower < 9 / 17 < i.upper
    assert i.upper - i.lower < 0.02


def test__support_set_nesting(m):
    s8 = core.support_set(m, 8, CFG).intervals[0]
    s32 = core.support_set(m, 32, CFG).intervals[0]
    assert s32.lower < s8.lower and s8.upper < s32.upper


@pytest.mark.parametrize('k', [1.0, 0.5, -2.0])
def test__support_set_needs_k_above_one(m, k):
    with pytest.raises(errors.UsageError):
        core.support_set(m, k, CFG)


def test__support_set_boundary_mle():
    m = BinomialModel(0, 10)
    s = core.support_set(m, 8, CFG)
    assert s.intervals[0].lower == 0.0
    assert s.intervals[0].lower_closed
    assert s.intervals[0].upper == pytest.approx(1 - 8 ** (-1 / 10), abs=1e-8)


def test__support_set_as_region(m):
    s = core.support_set(m, 8, CFG)
    r = s.as_region(m.space)
    assert r.contains((9 / 17,))
    assert not r.contains((s.intervals[0].lower,))


def test__min_supported_superset(m):
    s = region(m, 'theta >= 0.3 and theta <= 0.8')
    k = core.evidence_vs_complement(m, s, CFG).glr
    check = core.min_supported_superset_check(m, s, k, CFG)
    assert check.holds and check.verified
    assert check


def test__min_supported_superset_of_support_set(m):
    s = core.support_set(m, 8, CFG).as_region(m.space)
    assert core.min_supported_superset_check(m, s, 8, CFG, rtol=1e-6)


def test__min_supported_superset_fails_away_from_mle(m):
    s = region(m, 'theta <= 0.2')
    check = core.min_supported_superset_check(m, s, 8, CFG)
    assert not check.holds
    assert not check.verified


def test__k_star(m):
    assert core.k_star(m, region(m, 'theta > 0.2'), CFG) == pytest.approx(math.exp(LOG_GLR_917), rel=1e-12)
    assert core.k_star(m, region(m, 'theta <= 0.2'), CFG) == 1.0
    far = region(m, 'not(theta == 0.95)')
    direct = math.exp(m.log_lik((9 / 17,)) - m.log_lik((0.95,)))
    assert core.k_star(m, far, CFG) == pytest.approx(direct, rel=1e-6)


def test__profile_curve_binomial(m):
    curve = core.profile_curve(m, 'theta', '0:1:1001', CFG)
    assert len(curve.grid) == 1001
    assert curve.peak_location == 9 / 17
    assert curve.grid[curve.peak_index] == pytest.approx(0.529)
    assert max(curve.normalized_lik) <= 1.0
    assert curve.normalized_lik[0] == 0.0
    assert curve.value_at(0.2) == pytest.approx(1 / math.exp(LOG_GLR_917), rel=1e-9)


def test__profile_curve_single_point(m):
    curve = core.profile_curve(m, 'theta', [9 / 17], CFG)
    assert curve.rows() == [(9 / 17, 1.0)]


@pytest.mark.parametrize('grid', ['-0.5:0.5:11', '0.5:0.1:3', 'a:b:c', [0.3, 0.2]])
def test__profile_curve_bad_grid(m, grid):
    with pytest.raises(errors.UsageError):
        core.profile_curve(m, 'theta', grid, CFG)


def test__profile_curve_unknown_interest(m):
    with pytest.raises(errors.UsageError):
        core.profile_curve(m, 'delta', '0:1:11', CFG)


def nuisance_profile(g):
    # max over w of -(g - 1)^2 - (w - g)^2 - w^2 / 2, reached at w = 2g/3
    return -(g - 1) ** 2 - g * g / 3


@pytest.fixture
def nuisance_model():
    space = regions.ParameterSpace.of(regions.Parameter('g'), regions.Parameter('w'))
    return models.FunctionModel(
        space,
        lambda g, w: -(g - 1) ** 2 - (w - g) ** 2 - w * w / 2,
        bounds={'g': (-5.0, 5.0), 'w': (-5.0, 5.0)})


NUISANCE_CFG = optimize.OptimizerConfig(multistart_count=2)


def test__profile_log_lik_over_a_nuisance(nuisance_model):
    assert nuisance_model.interest is None
    assert nuisance_model.profile_log_lik('g', 0.0, NUISANCE_CFG) == pytest.approx(-1.0, abs=1e-8)
    assert nuisance_model.profile_log_lik('g', 0.75, NUISANCE_CFG) == pytest.approx(-0.25, abs=1e-8)
    # max over g of -(g - 1)^2 - g^2
    assert nuisance_model.profile_log_lik('w', 0.0, NUISANCE_CFG) == pytest.approx(-0.5, abs=1e-8)


def test__sup_log_lik_over_a_box(nuisance_model):
    res = core.sup_log_lik(nuisance_model, regions.parse_region('g <= 0', nuisance_model.space), CFG)
    assert res.max_value == pytest.approx(-1.0, abs=1e-6)
    assert res.argmax == pytest.approx((0.0, 0.0), abs=1e-3)
    assert res.attained
    res = core.sup_log_lik(nuisance_model, regions.Region.full(nuisance_model.space), CFG)
    assert res.max_value == pytest.approx(-0.25, abs=1e-6)
    assert res.argmax == pytest.approx((0.75, 0.5), abs=1e-3)


def test__evidence_vs_complement_with_a_nuisance(nuisance_model):
    report = core.evidence_vs_complement(
        nuisance_model, regions.parse_region('g <= 0', nuisance_model.space), CFG)
    assert report.glr == pytest.approx(math.exp(-0.75), rel=1e-5)
    assert report.glr == pytest.approx(0.4724, abs=1e-4)
    assert report.favors == 'H2'
    assert report.parameters == ('g', 'w')
    assert report.argmax2 == pytest.approx((0.75, 0.5), abs=1e-3)


def test__profile_curve_with_a_nuisance(nuisance_model):
    grid = np.linspace(-1.0, 2.0, 13)
    curve = core.profile_curve(nuisance_model, 'g', grid, NUISANCE_CFG)
    assert curve.parameter == 'g'
    assert curve.peak_location == pytest.approx(0.75, abs=1e-4)
    assert curve.peak_log_lik == pytest.approx(-0.25, abs=1e-8)
    assert curve.peak_index == 7
    expected = [math.exp(nuisance_profile(g) + 0.25) for g in grid]
    assert list(curve.normalized_lik) == pytest.approx(expected, abs=1e-6)
    assert curve.value_at(0.0) == pytest.approx(math.exp(-0.75), abs=1e-6)


def test__scans_need_an_interest(nuisance_model):
    with pytest.raises(errors.UsageError):
        core.support_set(nuisance_model, 8, NUISANCE_CFG)


def test__parse_grid():
    assert list(core.parse_grid('0:1:5')) == [0.0, 0.25, 0.5, 0.75, 1.0]
    assert list(core.parse_grid('0.3:0.3:1')) == [0.3]


counts = st.integers(min_value=1, max_value=50).flatmap(
    lambda n: st.tuples(st.integers(min_value=0, max_value=n), st.just(n)))
ends = st.integers(min_value=0, max_value=100).map(lambda i: i / 100)


def glr_or_skip(m, h1, h2):
    try:
        return core.glr(m, h1, h2, CFG)
    except errors.NumericError:
        # both suprema are -inf
        hypothesis.assume(False)


def closed(m, a, b):
    lo, hi = min(a, b), max(a, b)
    return regions.parse_region('theta >= {} and theta <= {}'.format(lo, hi), m.space)


@hypothesis.settings(max_examples=1000, deadline=None)
@hypothesis.given(counts, ends, ends, ends, ends)
def test__reciprocity(xn, a, b, c, d):
    m = BinomialModel(*xn)
    h1, h2 = closed(m, a, b), closed(m, c, d)
    forward = glr_or_skip(m, h1, h2).log_glr
    assert forward == -core.glr(m, h2, h1, CFG).log_glr


@hypothesis.settings(max_examples=1000, deadline=None)
@hypothesis.given(counts, ends, ends, ends, ends)
def test__narrower_hypothesis_is_never_supported(xn, a, b, wider_lo, wider_hi):
    m = BinomialModel(*xn)
    lo, hi = min(a, b), max(a, b)
    narrow = closed(m, lo, hi)
    wide = closed(m, min(lo, wider_lo), max(hi, wider_hi))
    s_narrow = core.sup_log_lik(m, narrow, CFG).max_value
    s_wide = core.sup_log_lik(m, wide, CFG).max_value
    assert s_narrow <= s_wide + 1e-9
    if s_wide > -math.inf:
        assert core.glr(m, narrow, wide, CFG).glr <= 1.0


@hypothesis.settings(max_examples=1000, deadline=None)
@hypothesis.given(counts, ends, ends, ends, ends, st.floats(min_value=-1e3, max_value=1e3))
def test__offset_invariance(xn, a, b, c, d, offset):
    m = BinomialModel(*xn)
    h1, h2 = closed(m, a, b), closed(m, c, d)
    base = glr_or_skip(m, h1, h2)
    hypothesis.assume(math.isfinite(base.log_glr))
    shifted = core.glr(OffsetModel(m, offset), h1, h2, CFG)
    assert shifted.glr == pytest.approx(base.glr, rel=1e-12, abs=1e-300)


@hypothesis.settings(max_examples=300, deadline=None)
@hypothesis.given(counts, ends, ends, ends, ends)
def test__uniform_dominance_and_witness(xn, a, b, c, d):
    m = BinomialModel(*xn)
    h1, h2 = closed(m, a, b), closed(m, c, d)
    sup2 = core.sup_log_lik(m, h2, CFG).max_value
    grid = [t for t in np.linspace(0, 1, 1001) if h1.contains((t,))]
    report = glr_or_skip(m, h1, h2)
    if grid and min(m.log_lik((t,)) for t in grid) > sup2:
        assert report.glr > 1
    if report.log_glr > 0:
        witness = core.find_witness(m, h1, h2, GRID_CFG)
        assert witness is not None
        assert h1.contains((witness[0],)) and witness[1] > sup2


@hypothesis.settings(max_examples=100, deadline=None)
@hypothesis.given(counts, st.floats(min_value=1.01, max_value=50), st.floats(min_value=1.01, max_value=3))
def test__support_set_nesting_on_grid(xn, k, factor):
    m = BinomialModel(*xn)
    small = core.support_set(m, k, GRID_CFG)
    large = core.support_set(m, k * factor, GRID_CFG)
    for t in np.linspace(0, 1, 1001):
        if small.contains(t):
            assert large.contains(t)


@hypothesis.settings(max_examples=100, deadline=None)
@hypothesis.given(counts, ends, ends, st.floats(min_value=1.01, max_value=100))
def test__supported_region_contains_support_set(xn, a, b, k):
    m = BinomialModel(*xn)
    s = closed(m, a, b)
    hypothesis.assume(not s.is_full)
    check = core.min_supported_superset_check(m, s, k, GRID_CFG)
    if check.holds:
        assert check.verified, check.violations[:5]


@hypothesis.settings(max_examples=100, deadline=None)
@hypothesis.given(counts, ends, ends)
def test__k_star_matches_glr_against_complement(xn, a, b):
    m = BinomialModel(*xn)
    s = closed(m, a, b)
    hypothesis.assume(not s.is_full)
    r = core.evidence_vs_complement(m, s, GRID_CFG).glr
    ks = core.k_star(m, s, GRID_CFG)
    assert (r > 1) == (ks > 1)
    if 1.01 < r < math.inf:
        assert ks == pytest.approx(r, rel=1e-6)
        inside = core.support_set(m, ks * (1 - 1e-3), GRID_CFG)
        for i in inside.intervals:
            assert s.contains((i.lower,)) and s.contains((i.upper,))
