#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vbscore/datamodel.hpp"
#include "vbscore/scoring.hpp"

namespace vbscore::stats {

struct DescriptiveSummary {
    size_t n = 0;
    double mean = 0.0;
    double sd = 0.0;  // sample standard deviation (n-1); 0 for n == 1
    double median = 0.0;
    double min = 0.0;
    double max = 0.0;
};

DescriptiveSummary describe(const std::vector<double>& values);

struct TestResult {
    double statistic = 0.0;
    double p_value = 1.0;
    double df1 = 0.0;           // t tests: df; ANOVA: between-groups df
    double df2 = 0.0;           // ANOVA only: within-groups df
    std::optional<double> alpha_adjusted;
    bool significant = false;
};

// One-way ANOVA across >= 2 groups, each with n >= 2. All-identical
// groups give F = 0, p = 1; zero within-group variance with unequal
// means gives an infinite F and p = 0.
TestResult one_way_anova(const std::vector<std::vector<double>>& groups,
                         double alpha = 0.05);

// Student's pooled-variance two-sample t-test, df = n_a + n_b - 2.
// alpha_adjusted = alpha / num_comparisons (Bonferroni). Welch's form
// available behind the flag.
TestResult two_sample_t(const std::vector<double>& a, const std::vector<double>& b,
                        double alpha = 0.05, int num_comparisons = 1,
                        bool welch = false);

// Paired t-test on the element-wise differences, df = n - 1. All-zero
// differences give t = 0, p = 1; a constant nonzero shift has zero
// variance and throws DegenerateDifferences.
TestResult paired_t(const std::vector<double>& a, const std::vector<double>& b,
                    double alpha = 0.05, int num_comparisons = 1);

// (mean_a - mean_b) / pooled sd. Throws ZeroPooledSD.
double cohens_d(const std::vector<double>& a, const std::vector<double>& b);

// Verbal band for |d| by nearest of the standard anchors 0.2 / 0.5 / 0.8:
// "negligible", "small", "medium", "large".
std::string effect_size_band(double d);

struct GapReport {
    double semantic_mean = 0.0;
    double entity_mean = 0.0;
    double gap_pp = 0.0;           // 100 * (semantic_mean - entity_mean)
    std::optional<double> ratio;   // semantic_mean / entity_mean, absent when entity_mean == 0
};

GapReport gap_analysis(const std::vector<double>& semantic_scores,
                       const std::vector<double>& entity_scores);

struct FailureOverlap {
    // semantic similarity >= high threshold AND entity f1 below its threshold
    double high_semantic_low_entity = 0.0;
    // semantic similarity >= high threshold AND factual consistency below its threshold
    double high_semantic_contradiction = 0.0;
};

// "High semantic similarity" means >= semantic_high (default: the
// semantic failure threshold).
FailureOverlap failure_overlap(const std::vector<VBScoreResult>& results,
                               const FailureThresholds& thresholds,
                               std::optional<double> semantic_high = std::nullopt);

enum class StratumKey { Source, QuestionType, DiseaseCategory };

std::string to_string(StratumKey k);

// 100 * (mean_a - mean_b) / mean_b.
double relative_gap_percent(double mean_a, double mean_b);

struct StratifiedComparison {
    std::map<std::string, DescriptiveSummary> per_stratum;  // over vb_score
    // the two largest strata, higher mean first
    std::string stratum_a;
    std::string stratum_b;
    TestResult test;         // two-sample t between a and b
    double d = 0.0;          // Cohen's d (a vs b); 0 when pooled sd is 0
    double relative_gap = 0.0;  // percent, relative to stratum_b's mean
};

// Groups results by the chosen stratum of their dataset record and
// compares the two largest strata (ties on size broken by name; the
// higher-mean stratum is reported first). Throws SingleStratum with
// fewer than two nonempty strata.
StratifiedComparison stratified_compare(const std::vector<VBScoreResult>& results,
                                        const std::vector<QARecord>& dataset,
                                        StratumKey key, double alpha = 0.05);

}  // namespace vbscore::stats
