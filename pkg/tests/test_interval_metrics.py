import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from agerec.interval_metrics import (
    MetricConfig,
    RankStudy,
    beta_ie,
    bound_error,
    cos_theta,
    integral_error_numeric,
    jaccard,
    jaccard_year,
    l1,
    l2,
    load_default_study,
    local_error,
    metric_fn,
    mu_e,
    rank_hypotheses,
    run_metric_study,
    spearman_footrule,
    sym_ie,
    theta_l2,
)
from agerec.ranges import AgeRange


def rng(lo, hi):
    return AgeRange(lo, hi)


ages = st.floats(min_value=0, max_value=18, allow_nan=False)
ranges = st.tuples(ages, ages).map(lambda t: AgeRange(min(t), max(t)))
range_pairs = st.tuples(ranges, ranges)


class TestL1L2:
    def test_identity(self):
        assert l1(rng(8, 12), rng(8, 12)) == 0.0
        assert l2(rng(8, 12), rng(8, 12)) == 0.0

    def test_hand_values(self):
        assert l1(rng(8, 12), rng(6, 14)) == pytest.approx(4.0)
        assert l1(rng(4, 8), rng(4.73, 7.39)) == pytest.approx(1.34)
        assert l2(rng(8, 12), rng(6, 14)) == pytest.approx(math.sqrt(8))
        assert l2(rng(12, 14), rng(7.80, 12.04)) == pytest.approx(4.635, abs=1e-3)

    @given(range_pairs)
    def test_symmetric(self, pair):
        r, h = pair
        assert l1(r, h) == pytest.approx(l1(h, r))
        assert l2(r, h) == pytest.approx(l2(h, r))


class TestCosTheta:
    def test_equal_is_one(self):
        assert cos_theta(rng(8, 12), rng(8, 12)) == 1.0

    def test_inner_shrink_aligned(self):
        assert cos_theta(rng(8, 12), rng(10, 10)) == pytest.approx(1.0)

    def test_outer_growth_antialigned(self):
        assert cos_theta(rng(8, 12), rng(6, 14)) == pytest.approx(-1.0)

    @given(range_pairs)
    def test_bounded(self, pair):
        r, h = pair
        assert -1.0 - 1e-12 <= cos_theta(r, h) <= 1.0 + 1e-12


class TestThetaL2:
    # expected values from the worked four-pair example table
    @pytest.mark.parametrize("r,h,expected", [
        ((4, 8), (4.73, 7.39), 0.95),
        ((8, 11), (8.98, 11.27), 1.27),
        ((12, 14), (7.80, 12.04), 5.30),
    ])
    def test_worked_examples(self, r, h, expected):
        assert theta_l2(rng(*r), rng(*h), alpha=0.5) == pytest.approx(expected, abs=0.01)

    @given(range_pairs)
    def test_nonnegative_and_zero_iff_equal(self, pair):
        r, h = pair
        v = theta_l2(r, h, 0.5)
        assert v >= 0
        if r == h:
            assert v == 0.0

    def test_negative_alpha_rejected(self):
        with pytest.raises(ValueError):
            theta_l2(rng(1, 2), rng(1, 3), alpha=-1)


class TestJaccard:
    def test_identity(self):
        assert jaccard(rng(8, 12), rng(8, 12)) == 0.0

    def test_overlap(self):
        assert jaccard(rng(8, 12), rng(10, 14)) == pytest.approx(1 - 2 / 6)

    def test_disjoint(self):
        assert jaccard(rng(8, 12), rng(14, 16)) == 1.0

    def test_degenerate_pair(self):
        assert jaccard(rng(5, 5), rng(5, 5)) == 0.0

    @given(range_pairs)
    def test_bounded(self, pair):
        r, h = pair
        assert 0.0 <= jaccard(r, h) <= 1.0

    def test_gap_insensitive_when_disjoint(self):
        # known drawback: the gap size does not matter once disjoint
        near = jaccard(rng(8, 12), rng(13, 14))
        far = jaccard(rng(8, 12), rng(17, 18))
        assert near == far == 1.0


class TestJaccardYear:
    def test_identity(self):
        assert jaccard_year(rng(8, 12), rng(8, 12)) == 0.0

    def test_overlap(self):
        assert jaccard_year(rng(8, 12), rng(10, 14)) == pytest.approx(4 * (1 - 2 / 6))

    def test_degenerate_hypothesis(self):
        assert jaccard_year(rng(8, 12), rng(8, 8)) == pytest.approx(2.0)


class TestMeanMetrics:
    def test_mu_e_worked_examples(self):
        assert mu_e(rng(4, 8), rng(4.73, 7.39)) == pytest.approx(0.06, abs=1e-9)
        assert mu_e(rng(8, 11), rng(8.98, 11.27)) == pytest.approx(0.625, abs=1e-9)
        assert mu_e(rng(0, 18), rng(0, 18)) == 0.0

    def test_bound_error(self):
        assert bound_error(rng(8, 12), rng(9, 11)) == 0.0
        assert bound_error(rng(8, 12), rng(2, 4)) == pytest.approx(5.0)
        assert bound_error(rng(8, 12), rng(13, 15)) == pytest.approx(2.0)

    @given(range_pairs)
    def test_bound_error_zero_iff_mean_inside(self, pair):
        r, h = pair
        assert (bound_error(r, h) == 0.0) == r.contains(h.mean)

    @given(range_pairs)
    def test_mu_e_symmetric(self, pair):
        r, h = pair
        assert mu_e(r, h) == pytest.approx(mu_e(h, r))


class TestLocalError:
    def test_inside_both(self):
        assert local_error(10, rng(8, 12), rng(8, 12), 0.7) == 0.0

    def test_in_reference_only(self):
        assert local_error(9, rng(8, 12), rng(10, 14), 0.5) == pytest.approx(0.5)

    def test_in_hypothesis_only(self):
        assert local_error(13, rng(8, 12), rng(10, 14), 0.5) == pytest.approx(0.5)


class TestIntegralError:
    def test_identity(self):
        assert integral_error_numeric(rng(8, 12), rng(8, 12), 0.5) == 0.0

    def test_disjoint(self):
        v = integral_error_numeric(rng(8, 12), rng(20, 22), 0.5, step=1e-3)
        assert v == pytest.approx(61.0, rel=1e-3)

    def test_shift(self):
        v = integral_error_numeric(rng(8, 12), rng(10, 14), 0.5, step=1e-3)
        assert v == pytest.approx(2.0, rel=1e-3)

    def test_bad_step(self):
        with pytest.raises(ValueError):
            integral_error_numeric(rng(8, 12), rng(8, 12), 0.5, step=0)

    @settings(max_examples=50, deadline=None)
    @given(range_pairs, st.sampled_from([0.0, 1 / 3, 0.5, 1.0]))
    def test_closed_form_matches_quadrature(self, pair, beta):
        # closed-form beta_ie omits the 1/2 from the triangle areas, so the
        # testable identity is beta_ie^2 == 2 * integral
        r, h = pair
        numeric = integral_error_numeric(r, h, beta, step=1e-3)
        assert beta_ie(r, h, beta) ** 2 == pytest.approx(2 * numeric, rel=1e-3, abs=1e-6)


class TestSymBetaIE:
    def test_sym_ie_values(self):
        assert sym_ie(rng(8, 12), rng(8, 12)) == 0.0
        assert sym_ie(rng(8, 12), rng(6, 14)) == pytest.approx(2.0)
        assert sym_ie(rng(8, 12), rng(20, 22)) == pytest.approx(math.sqrt(122))

    @pytest.mark.parametrize("r,h,expected", [
        ((4, 8), (4.73, 7.39), 0.55),
        ((8, 11), (8.98, 11.27), 0.60),
        ((12, 14), (7.80, 12.04), 3.62),
    ])
    def test_beta_ie_worked_examples(self, r, h, expected):
        assert beta_ie(rng(*r), rng(*h), beta=1 / 3) == pytest.approx(expected, abs=0.02)

    @given(range_pairs)
    def test_half_beta_equals_sym_ie(self, pair):
        r, h = pair
        assert beta_ie(r, h, 0.5) == pytest.approx(sym_ie(r, h), abs=1e-12)

    @given(range_pairs)
    def test_sym_ie_is_l2_over_sqrt2(self, pair):
        r, h = pair
        assert sym_ie(r, h) == l2(r, h) / math.sqrt(2)

    def test_asymmetric_when_beta_not_half(self):
        r, h = rng(8, 12), rng(9, 11)
        assert beta_ie(r, h, 1 / 3) != pytest.approx(beta_ie(h, r, 1 / 3))


class TestFootrule:
    def test_identity(self):
        assert spearman_footrule([1, 2, 3], [1, 2, 3]) == 0.0

    def test_reversal(self):
        assert spearman_footrule([1, 2, 3], [3, 2, 1]) == pytest.approx(4 / 3)

    def test_adjacent_swaps(self):
        assert spearman_footrule([1, 2, 3, 4], [2, 1, 4, 3]) == pytest.approx(1.0)

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            spearman_footrule([1, 2], [1, 2, 3])

    def test_symmetric(self):
        a, b = [2, 1, 3], [1, 3, 2]
        assert spearman_footrule(a, b) == spearman_footrule(b, a)


class TestRanking:
    def test_simple_order(self):
        study = RankStudy(rng(8, 12), [rng(8, 12), rng(2, 4), rng(7, 11)],
                          [1, 3, 2])
        assert rank_hypotheses("mu_e", study) == [1, 3, 2]

    def test_tie_average_ranks(self):
        study = RankStudy(rng(8, 12), [rng(8, 12), rng(6, 14), rng(2, 4)],
                          [1, 2, 3])
        # mu_e ties the first two at zero
        assert rank_hypotheses("mu_e", study) == [1.5, 1.5, 3]

    def test_unknown_metric(self):
        study = RankStudy(rng(8, 12), [rng(8, 12)], [1])
        with pytest.raises(KeyError):
            rank_hypotheses("nope", study)

    def test_monotone_transform_invariance(self):
        study = load_default_study()
        base = rank_hypotheses("l2", study)
        # exp is strictly monotone, so ranking by exp(l2) must agree
        import numpy as np
        from scipy.stats import rankdata
        vals = [l2(study.reference, h) for h in study.hypotheses]
        assert list(rankdata(np.exp(vals), method="average")) == base


class TestStudy:
    def test_default_study_loads(self):
        study = load_default_study()
        assert len(study.hypotheses) == 20
        assert study.reference == rng(8, 12)

    def test_oracle_matching_metric_scores_zero(self):
        study = RankStudy(rng(8, 12), [rng(8, 12), rng(7, 11), rng(2, 4)],
                          [1, 2, 3])
        rows = dict(run_metric_study(study, metrics=("mu_e",), random_trials=0))
        assert rows["mu_e"] == 0.0

    def test_best_metrics_beat_jaccard_and_random(self):
        study = load_default_study()
        rows = dict(run_metric_study(study, config=MetricConfig(alpha=0.5, beta=1 / 3),
                                     random_trials=1000, seed=0))
        assert rows["beta_ie"] < rows["jaccard"]
        assert rows["theta_l2"] < rows["jaccard"]
        assert rows["beta_ie"] < rows["random"]
        assert rows["theta_l2"] < rows["random"]

    def test_invalid_oracle_rejected(self):
        with pytest.raises(ValueError):
            RankStudy(rng(8, 12), [rng(8, 12), rng(7, 11)], [1, 5])

    def test_empty_hypotheses_rejected(self):
        with pytest.raises(ValueError):
            RankStudy(rng(8, 12), [], [])


class TestMetricConfig:
    def test_defaults(self):
        cfg = MetricConfig()
        assert cfg.alpha == 0.5
        assert cfg.beta == pytest.approx(1 / 3)

    def test_invalid(self):
        with pytest.raises(ValueError):
            MetricConfig(beta=1.5)
        with pytest.raises(ValueError):
            MetricConfig(alpha=-0.1)

    def test_metric_fn_uses_config(self):
        fn = metric_fn("beta_ie", MetricConfig(beta=0.5))
        r, h = rng(8, 12), rng(9, 11)
        assert fn(r, h) == pytest.approx(sym_ie(r, h))


@given(range_pairs)
def test_all_metrics_identity_and_nonnegative(pair):
    r, h = pair
    for name in ("l1", "l2", "theta_l2", "jaccard", "jaccard_year",
                 "mu_e", "bound_error", "sym_ie", "beta_ie"):
        v = metric_fn(name)(r, h)
        assert v >= 0
        if r == h:
            assert v == pytest.approx(0.0)
