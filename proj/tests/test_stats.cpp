#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "vbscore/distributions.hpp"
#include "vbscore/errors.hpp"
#include "vbscore/stats.hpp"

using namespace vbscore;
using namespace vbscore::stats;

namespace {

std::vector<double> random_sample(oracle::Rng& rng, int n, double lo = -5.0,
                                  double hi = 5.0) {
    std::vector<double> v(static_cast<size_t>(n));
    for (auto& x : v) x = rng.uniform(lo, hi);
    return v;
}

VBScoreResult result_with(const std::string& id, double e, double s, double f, double o,
                          double vb) {
    VBScoreResult r;
    r.sample_id = id;
    r.model_id = "m";
    r.components = {e, s, f, o};
    r.vb_score = vb;
    r.weight_scheme_name = "vb";
    return r;
}

}  // namespace

TEST_SUITE("stats") {

TEST_CASE("describe on fixed fixtures") {
    auto s = describe({5, 5, 5});
    CHECK(s.mean == doctest::Approx(5.0));
    CHECK(s.sd == doctest::Approx(0.0));
    CHECK(s.median == doctest::Approx(5.0));

    auto t = describe({1, 2, 3, 4});
    CHECK(t.mean == doctest::Approx(2.5));
    CHECK(t.sd == doctest::Approx(1.2909944487).epsilon(1e-9));
    CHECK(t.median == doctest::Approx(2.5));
    CHECK(t.min == 1);
    CHECK(t.max == 4);

    auto single = describe({7});
    CHECK(single.mean == 7);
    CHECK(single.sd == 0.0);
    CHECK(single.min == 7);
    CHECK(single.max == 7);

    CHECK_THROWS_AS(describe({}), EmptyInput);
}

TEST_CASE("describe matches brute-force recomputation on random fixtures") {
    oracle::Rng rng(1);
    for (int trial = 0; trial < 150; ++trial) {
        auto v = random_sample(rng, rng.uniform_int(1, 30));
        auto s = describe(v);
        CHECK(s.mean == doctest::Approx(oracle::mean(v)).epsilon(1e-9));
        CHECK(s.sd == doctest::Approx(oracle::sample_sd(v)).epsilon(1e-9));
        CHECK(s.min == *std::min_element(v.begin(), v.end()));
        CHECK(s.max == *std::max_element(v.begin(), v.end()));
        CHECK(s.mean >= s.min - 1e-12);
        CHECK(s.mean <= s.max + 1e-12);
        CHECK(s.median >= s.min);
        CHECK(s.median <= s.max);
    }
}

TEST_CASE("describe is translation- and scale-consistent") {
    oracle::Rng rng(2);
    for (int trial = 0; trial < 50; ++trial) {
        auto v = random_sample(rng, rng.uniform_int(2, 20));
        double shift = rng.uniform(-10, 10);
        double scale = rng.uniform(0.1, 4.0);
        std::vector<double> shifted, scaled;
        for (double x : v) shifted.push_back(x + shift);
        for (double x : v) scaled.push_back(x * scale);
        CHECK(describe(shifted).sd == doctest::Approx(describe(v).sd).epsilon(1e-9));
        CHECK(describe(scaled).sd == doctest::Approx(describe(v).sd * scale).epsilon(1e-9));
    }
}

TEST_CASE("incomplete beta agrees with closed forms") {
    // I_x(1,1) = x, I_x(a,1) = x^a, I_x(1,b) = 1-(1-x)^b
    for (double x : {0.05, 0.3, 0.5, 0.77, 0.99}) {
        CHECK(regularized_incomplete_beta(1, 1, x) == doctest::Approx(x).epsilon(1e-12));
        CHECK(regularized_incomplete_beta(3, 1, x) ==
              doctest::Approx(x * x * x).epsilon(1e-12));
        CHECK(regularized_incomplete_beta(1, 4, x) ==
              doctest::Approx(1 - std::pow(1 - x, 4)).epsilon(1e-12));
    }
}

TEST_CASE("t p-values match the quadrature oracle") {
    oracle::Rng rng(3);
    for (int trial = 0; trial < 120; ++trial) {
        double t = rng.uniform(-6.0, 6.0);
        double df = rng.uniform_int(2, 60);
        double impl = t_two_sided_p(t, df);
        double quad = oracle::t_two_sided_p(t, df);
        CHECK(impl == doctest::Approx(quad).epsilon(1e-8));
        CHECK(impl >= 0.0);
        CHECK(impl <= 1.0);
    }
}

TEST_CASE("F p-values match the quadrature oracle") {
    oracle::Rng rng(4);
    for (int trial = 0; trial < 120; ++trial) {
        double f = rng.uniform(0.01, 8.0);
        double d1 = rng.uniform_int(1, 10);
        double d2 = rng.uniform_int(2, 40);
        double impl = f_upper_tail_p(f, d1, d2);
        double quad = oracle::f_upper_p(f, d1, d2);
        CHECK(impl == doctest::Approx(quad).epsilon(1e-8));
        CHECK(impl >= 0.0);
        CHECK(impl <= 1.0);
    }
}

TEST_CASE("anova on the worked fixture") {
    auto r = one_way_anova({{1, 2, 3}, {2, 3, 4}, {3, 4, 5}});
    CHECK(r.statistic == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(r.df1 == 2);
    CHECK(r.df2 == 6);
    // I_0.5(3,1) = 0.125 exactly
    CHECK(r.p_value == doctest::Approx(0.125).epsilon(1e-9));
}

TEST_CASE("anova degenerate cases") {
    auto identical = one_way_anova({{2, 2}, {2, 2}, {2, 2}});
    CHECK(identical.statistic == 0.0);
    CHECK(identical.p_value == 1.0);

    auto separated = one_way_anova({{1, 1}, {2, 2}});
    CHECK(std::isinf(separated.statistic));
    CHECK(separated.p_value == 0.0);

    CHECK_THROWS_AS(one_way_anova({{1, 2}}), ValidationError);
    CHECK_THROWS_AS(one_way_anova({{1, 2}, {1}}), ValidationError);
}

TEST_CASE("anova matches the brute-force F on random fixtures") {
    oracle::Rng rng(5);
    for (int trial = 0; trial < 120; ++trial) {
        std::vector<std::vector<double>> groups;
        int k = rng.uniform_int(2, 5);
        for (int g = 0; g < k; ++g) groups.push_back(random_sample(rng, rng.uniform_int(2, 12)));
        double df1, df2;
        double f = oracle::anova_f(groups, &df1, &df2);
        auto r = one_way_anova(groups);
        CHECK(r.statistic == doctest::Approx(f).epsilon(1e-9));
        CHECK(r.df1 == df1);
        CHECK(r.df2 == df2);
        CHECK(r.p_value == doctest::Approx(oracle::f_upper_p(f, df1, df2)).epsilon(1e-7));
    }
}

TEST_CASE("two-sample t on the worked fixture") {
    auto r = two_sample_t({1, 2, 3}, {2, 3, 4});
    CHECK(r.statistic == doctest::Approx(-1.2247448714).epsilon(1e-9));
    CHECK(r.df1 == 4);

    auto same = two_sample_t({1, 2, 3}, {1, 2, 3});
    CHECK(same.statistic == 0.0);
    CHECK(same.p_value == 1.0);
}

TEST_CASE("bonferroni adjustment divides alpha") {
    auto r = two_sample_t({1, 2, 3}, {2, 3, 4}, 0.05, 3);
    REQUIRE(r.alpha_adjusted.has_value());
    CHECK(*r.alpha_adjusted == doctest::Approx(0.05 / 3).epsilon(1e-12));
    CHECK(*r.alpha_adjusted == doctest::Approx(0.016667).epsilon(1e-4));
    CHECK(*r.alpha_adjusted < 0.05);
}

TEST_CASE("two-sample t matches brute force on random fixtures") {
    oracle::Rng rng(6);
    for (int trial = 0; trial < 150; ++trial) {
        auto a = random_sample(rng, rng.uniform_int(2, 15));
        auto b = random_sample(rng, rng.uniform_int(2, 15));
        double df;
        double t = oracle::pooled_t(a, b, &df);
        auto r = two_sample_t(a, b);
        CHECK(r.statistic == doctest::Approx(t).epsilon(1e-9));
        CHECK(r.df1 == df);
        CHECK(r.p_value == doctest::Approx(oracle::t_two_sided_p(t, df)).epsilon(1e-7));
        CHECK(r.significant == (r.p_value < 0.05));
    }
}

TEST_CASE("welch variant uses the Welch-Satterthwaite df") {
    std::vector<double> a = {1.0, 2.0, 3.0, 4.0, 5.0};
    std::vector<double> b = {10.0, 30.0};  // wildly different variance
    auto welch = two_sample_t(a, b, 0.05, 1, true);
    auto pooled = two_sample_t(a, b, 0.05, 1, false);
    CHECK(welch.df1 != pooled.df1);
    CHECK(pooled.df1 == 5);

    // brute-force Welch statistic and df
    double na = 5, nb = 2;
    double ma = oracle::mean(a), mb = oracle::mean(b);
    double va = oracle::sample_sd(a) * oracle::sample_sd(a);
    double vb = oracle::sample_sd(b) * oracle::sample_sd(b);
    double se = std::sqrt(va / na + vb / nb);
    double t = (ma - mb) / se;
    double df = (va / na + vb / nb) * (va / na + vb / nb) /
                ((va / na) * (va / na) / (na - 1) + (vb / nb) * (vb / nb) / (nb - 1));
    CHECK(welch.statistic == doctest::Approx(t).epsilon(1e-9));
    CHECK(welch.df1 == doctest::Approx(df).epsilon(1e-9));
    CHECK(welch.p_value == doctest::Approx(oracle::t_two_sided_p(t, df)).epsilon(1e-7));
}

TEST_CASE("paired t on fixed fixtures") {
    auto same = paired_t({1, 2, 3}, {1, 2, 3});
    CHECK(same.statistic == 0.0);
    CHECK(same.p_value == 1.0);

    // constant nonzero shift has zero variance: undefined statistic
    CHECK_THROWS_AS(paired_t({1, 2, 3}, {2, 3, 4}), DegenerateDifferences);

    auto r = paired_t({1, 2, 3}, {2, 2, 5});
    CHECK(r.statistic == doctest::Approx(-1.7320508076).epsilon(1e-9));
    CHECK(r.df1 == 2);

    CHECK_THROWS_AS(paired_t({1, 2}, {1, 2, 3}), ValidationError);
}

TEST_CASE("paired t matches brute force on random fixtures") {
    oracle::Rng rng(7);
    int used = 0;
    for (int trial = 0; trial < 200 && used < 120; ++trial) {
        int n = rng.uniform_int(2, 15);
        auto a = random_sample(rng, n);
        auto b = random_sample(rng, n);
        double df;
        double t = oracle::paired_t_stat(a, b, &df);
        if (!std::isfinite(t)) continue;
        auto r = paired_t(a, b);
        CHECK(r.statistic == doctest::Approx(t).epsilon(1e-9));
        CHECK(r.df1 == df);
        CHECK(r.p_value == doctest::Approx(oracle::t_two_sided_p(t, df)).epsilon(1e-7));
        ++used;
    }
    CHECK(used >= 100);
}

TEST_CASE("cohens d on fixed fixtures and properties") {
    CHECK(cohens_d({1, 2, 3}, {2, 3, 4}) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK_THROWS_AS(cohens_d({2, 2}, {2, 2}), ZeroPooledSD);

    oracle::Rng rng(8);
    for (int trial = 0; trial < 150; ++trial) {
        auto a = random_sample(rng, rng.uniform_int(2, 12));
        auto b = random_sample(rng, rng.uniform_int(2, 12));
        double expected = oracle::cohens_d(a, b);
        CHECK(cohens_d(a, b) == doctest::Approx(expected).epsilon(1e-9));
        // antisymmetry
        CHECK(cohens_d(b, a) == doctest::Approx(-expected).epsilon(1e-9));
        // translation invariance
        std::vector<double> a2 = a, b2 = b;
        double shift = rng.uniform(-3, 3);
        for (auto& x : a2) x += shift;
        for (auto& x : b2) x += shift;
        CHECK(cohens_d(a2, b2) == doctest::Approx(expected).epsilon(1e-9));
    }
}

TEST_CASE("effect size bands sit at the nearest anchor") {
    CHECK(effect_size_band(0.05) == "negligible");
    CHECK(effect_size_band(0.2) == "small");
    CHECK(effect_size_band(-0.24) == "small");
    CHECK(effect_size_band(0.41) == "medium");
    CHECK(effect_size_band(0.5) == "medium");
    CHECK(effect_size_band(-0.9) == "large");
    CHECK(effect_size_band(2.0) == "large");
}

TEST_CASE("gap analysis reproduces the documented average") {
    auto g = gap_analysis({0.516}, {0.062});
    CHECK(g.gap_pp == doctest::Approx(45.4).epsilon(0.05 / 45.4));
    REQUIRE(g.ratio.has_value());
    CHECK(*g.ratio == doctest::Approx(8.32).epsilon(0.05 / 8.32));

    auto equal = gap_analysis({0.4, 0.6}, {0.5, 0.5});
    CHECK(equal.gap_pp == doctest::Approx(0.0));
    CHECK(*equal.ratio == doctest::Approx(1.0));

    auto zero_entity = gap_analysis({0.7}, {0.0});
    CHECK(zero_entity.gap_pp == doctest::Approx(70.0));
    CHECK_FALSE(zero_entity.ratio.has_value());
}

TEST_CASE("failure overlap on constructed fixtures") {
    FailureThresholds t;
    std::vector<VBScoreResult> all_low_entity;
    for (int i = 0; i < 5; ++i)
        all_low_entity.push_back(result_with(std::to_string(i), 0.05, 0.6, 0.6, 0.2, 0.35));
    auto o = failure_overlap(all_low_entity, t);
    CHECK(o.high_semantic_low_entity == doctest::Approx(1.0));
    CHECK(o.high_semantic_contradiction == doctest::Approx(0.0));

    std::vector<VBScoreResult> below_semantic;
    for (int i = 0; i < 4; ++i)
        below_semantic.push_back(result_with(std::to_string(i), 0.05, 0.1, 0.1, 0.0, 0.05));
    auto o2 = failure_overlap(below_semantic, t);
    CHECK(o2.high_semantic_low_entity == 0.0);
    CHECK(o2.high_semantic_contradiction == 0.0);
}

TEST_CASE("failure overlap equals exhaustive counting on random sets") {
    FailureThresholds t;
    oracle::Rng rng(9);
    for (int trial = 0; trial < 100; ++trial) {
        int n = rng.uniform_int(1, 25);
        std::vector<VBScoreResult> results;
        for (int i = 0; i < n; ++i)
            results.push_back(result_with(std::to_string(i), rng.uniform(), rng.uniform(),
                                          rng.uniform(), rng.uniform(), rng.uniform()));
        size_t count1 = 0, count2 = 0;
        for (const auto& r : results) {
            if (r.components.semantic_similarity >= t.semantic &&
                r.components.entity_f1 < t.entity)
                ++count1;
            if (r.components.semantic_similarity >= t.semantic &&
                r.components.factual_consistency < t.factual)
                ++count2;
        }
        auto o = failure_overlap(results, t);
        CHECK(o.high_semantic_low_entity ==
              doctest::Approx(static_cast<double>(count1) / n).epsilon(1e-12));
        CHECK(o.high_semantic_contradiction ==
              doctest::Approx(static_cast<double>(count2) / n).epsilon(1e-12));
    }
}

TEST_CASE("relative gaps reproduce the documented disparity rows") {
    CHECK(relative_gap_percent(0.2894, 0.2601) == doctest::Approx(11.3).epsilon(0.1 / 11.3));
    CHECK(relative_gap_percent(0.2584, 0.2168) == doctest::Approx(19.2).epsilon(0.1 / 19.2));
    CHECK(relative_gap_percent(0.3630, 0.3235) == doctest::Approx(12.2).epsilon(0.1 / 12.2));
    CHECK(relative_gap_percent(0.3036, 0.2668) == doctest::Approx(13.8).epsilon(0.1 / 13.8));
}

TEST_CASE("stratified comparison separates the two largest strata") {
    std::vector<QARecord> dataset;
    std::vector<VBScoreResult> results;
    // 4 infectious (high scores) + 5 chronic (low scores) + 1 other
    for (int i = 0; i < 4; ++i) {
        QARecord rec;
        rec.id = "inf-" + std::to_string(i);
        rec.disease_category = DiseaseCategory::Infectious;
        rec.question = "q";
        rec.reference_answer = "a";
        dataset.push_back(rec);
        results.push_back(result_with(rec.id, 0.1, 0.5, 0.6, 0.1, 0.30 + 0.01 * i));
    }
    for (int i = 0; i < 5; ++i) {
        QARecord rec;
        rec.id = "chr-" + std::to_string(i);
        rec.disease_category = DiseaseCategory::Chronic;
        rec.question = "q";
        rec.reference_answer = "a";
        dataset.push_back(rec);
        results.push_back(result_with(rec.id, 0.1, 0.5, 0.6, 0.1, 0.20 + 0.01 * i));
    }
    {
        QARecord rec;
        rec.id = "oth-0";
        rec.disease_category = DiseaseCategory::Other;
        rec.question = "q";
        rec.reference_answer = "a";
        dataset.push_back(rec);
        results.push_back(result_with(rec.id, 0.1, 0.5, 0.6, 0.1, 0.5));
    }

    auto cmp = stratified_compare(results, dataset, StratumKey::DiseaseCategory);
    CHECK(cmp.per_stratum.size() == 3);
    // two largest strata are Chronic (5) and Infectious (4); higher mean first
    CHECK(cmp.stratum_a == "Infectious");
    CHECK(cmp.stratum_b == "Chronic");
    CHECK(cmp.per_stratum["Infectious"].mean == doctest::Approx(0.315));
    CHECK(cmp.per_stratum["Chronic"].mean == doctest::Approx(0.22));
    CHECK(cmp.relative_gap ==
          doctest::Approx(relative_gap_percent(0.315, 0.22)).epsilon(1e-9));
    CHECK(cmp.d > 0);
}

TEST_CASE("identical strata give zero gap and zero d") {
    std::vector<QARecord> dataset;
    std::vector<VBScoreResult> results;
    for (int i = 0; i < 6; ++i) {
        QARecord rec;
        rec.id = "r-" + std::to_string(i);
        rec.disease_category = i % 2 ? DiseaseCategory::Chronic : DiseaseCategory::Infectious;
        rec.question = "q";
        rec.reference_answer = "a";
        dataset.push_back(rec);
        results.push_back(result_with(rec.id, 0.1, 0.5, 0.6, 0.1, 0.4));
    }
    auto cmp = stratified_compare(results, dataset, StratumKey::DiseaseCategory);
    CHECK(cmp.relative_gap == doctest::Approx(0.0));
    CHECK(cmp.d == 0.0);
    CHECK(cmp.test.p_value == 1.0);
}

TEST_CASE("a single stratum is rejected") {
    std::vector<QARecord> dataset;
    std::vector<VBScoreResult> results;
    for (int i = 0; i < 3; ++i) {
        QARecord rec;
        rec.id = "r-" + std::to_string(i);
        rec.disease_category = DiseaseCategory::Chronic;
        rec.question = "q";
        rec.reference_answer = "a";
        dataset.push_back(rec);
        results.push_back(result_with(rec.id, 0.1, 0.5, 0.6, 0.1, 0.4));
    }
    CHECK_THROWS_AS(stratified_compare(results, dataset, StratumKey::DiseaseCategory),
                    SingleStratum);
}

}  // TEST_SUITE
