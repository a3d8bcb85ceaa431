#include "vbscore/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "vbscore/distributions.hpp"
#include "vbscore/errors.hpp"

namespace vbscore::stats {

namespace {

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

// sample variance, n-1 denominator; 0 for n == 1
double variance_of(const std::vector<double>& v, double mean) {
    if (v.size() < 2) return 0.0;
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return ss / static_cast<double>(v.size() - 1);
}

void require_min_n(const std::vector<double>& v, size_t n, const char* what) {
    if (v.size() < n)
        throw ValidationError(std::string(what) + " needs at least " + std::to_string(n) +
                              " values per sample");
}

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

DescriptiveSummary describe(const std::vector<double>& values) {
    if (values.empty()) throw EmptyInput();
    DescriptiveSummary s;
    s.n = values.size();
    s.mean = mean_of(values);
    s.sd = std::sqrt(variance_of(values, s.mean));
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    s.min = sorted.front();
    s.max = sorted.back();
    size_t m = sorted.size() / 2;
    s.median = (sorted.size() % 2 == 1) ? sorted[m] : 0.5 * (sorted[m - 1] + sorted[m]);
    return s;
}

TestResult one_way_anova(const std::vector<std::vector<double>>& groups, double alpha) {
    if (groups.size() < 2) throw ValidationError("ANOVA needs at least two groups");
    for (const auto& g : groups) require_min_n(g, 2, "ANOVA");

    size_t total_n = 0;
    double grand_sum = 0.0;
    for (const auto& g : groups) {
        total_n += g.size();
        for (double x : g) grand_sum += x;
    }
    double grand_mean = grand_sum / static_cast<double>(total_n);

    double ssb = 0.0, ssw = 0.0;
    for (const auto& g : groups) {
        double gm = mean_of(g);
        ssb += static_cast<double>(g.size()) * (gm - grand_mean) * (gm - grand_mean);
        for (double x : g) ssw += (x - gm) * (x - gm);
    }

    TestResult r;
    r.df1 = static_cast<double>(groups.size() - 1);
    r.df2 = static_cast<double>(total_n - groups.size());
    if (ssw == 0.0) {
        if (ssb == 0.0) {
            r.statistic = 0.0;  // every group identical: F defined as 0
            r.p_value = 1.0;
        } else {
            r.statistic = kInf;
            r.p_value = 0.0;
        }
    } else {
        double msb = ssb / r.df1;
        double msw = ssw / r.df2;
        r.statistic = msb / msw;
        r.p_value = f_upper_tail_p(r.statistic, r.df1, r.df2);
    }
    r.significant = r.p_value < alpha;
    return r;
}

TestResult two_sample_t(const std::vector<double>& a, const std::vector<double>& b,
                        double alpha, int num_comparisons, bool welch) {
    require_min_n(a, 2, "two-sample t-test");
    require_min_n(b, 2, "two-sample t-test");
    if (num_comparisons < 1) throw ValidationError("num_comparisons must be >= 1");

    double na = static_cast<double>(a.size());
    double nb = static_cast<double>(b.size());
    double ma = mean_of(a), mb = mean_of(b);
    double va = variance_of(a, ma), vb = variance_of(b, mb);

    TestResult r;
    r.alpha_adjusted = alpha / num_comparisons;
    double se, df;
    if (welch) {
        se = std::sqrt(va / na + vb / nb);
        double num = (va / na + vb / nb) * (va / na + vb / nb);
        double den = (va / na) * (va / na) / (na - 1) + (vb / nb) * (vb / nb) / (nb - 1);
        df = den > 0.0 ? num / den : na + nb - 2;
    } else {
        double pooled_var = ((na - 1) * va + (nb - 1) * vb) / (na + nb - 2);
        se = std::sqrt(pooled_var * (1.0 / na + 1.0 / nb));
        df = na + nb - 2;
    }
    r.df1 = df;
    if (se == 0.0) {
        if (ma == mb) {
            r.statistic = 0.0;  // no variance, no difference
            r.p_value = 1.0;
        } else {
            r.statistic = ma > mb ? kInf : -kInf;
            r.p_value = 0.0;
        }
    } else {
        r.statistic = (ma - mb) / se;
        r.p_value = t_two_sided_p(r.statistic, df);
    }
    r.significant = r.p_value < *r.alpha_adjusted;
    return r;
}

TestResult paired_t(const std::vector<double>& a, const std::vector<double>& b,
                    double alpha, int num_comparisons) {
    if (a.size() != b.size())
        throw ValidationError("paired t-test needs equal-length samples");
    require_min_n(a, 2, "paired t-test");
    if (num_comparisons < 1) throw ValidationError("num_comparisons must be >= 1");

    std::vector<double> diffs(a.size());
    for (size_t i = 0; i < a.size(); ++i) diffs[i] = a[i] - b[i];
    double md = mean_of(diffs);
    double sd = std::sqrt(variance_of(diffs, md));
    double n = static_cast<double>(diffs.size());

    TestResult r;
    r.alpha_adjusted = alpha / num_comparisons;
    r.df1 = n - 1;
    if (sd == 0.0) {
        if (md == 0.0) {
            r.statistic = 0.0;
            r.p_value = 1.0;
        } else {
            // constant nonzero shift: the statistic is undefined
            throw DegenerateDifferences();
        }
    } else {
        r.statistic = md / (sd / std::sqrt(n));
        r.p_value = t_two_sided_p(r.statistic, r.df1);
    }
    r.significant = r.p_value < *r.alpha_adjusted;
    return r;
}

double cohens_d(const std::vector<double>& a, const std::vector<double>& b) {
    require_min_n(a, 2, "Cohen's d");
    require_min_n(b, 2, "Cohen's d");
    double na = static_cast<double>(a.size());
    double nb = static_cast<double>(b.size());
    double ma = mean_of(a), mb = mean_of(b);
    double va = variance_of(a, ma), vb = variance_of(b, mb);
    double pooled = std::sqrt(((na - 1) * va + (nb - 1) * vb) / (na + nb - 2));
    if (pooled == 0.0) throw ZeroPooledSD();
    return (ma - mb) / pooled;
}

std::string effect_size_band(double d) {
    double a = std::fabs(d);
    // nearest of the 0.2 / 0.5 / 0.8 anchors
    if (a < 0.10) return "negligible";
    if (a < 0.35) return "small";
    if (a < 0.65) return "medium";
    return "large";
}

GapReport gap_analysis(const std::vector<double>& semantic_scores,
                       const std::vector<double>& entity_scores) {
    if (semantic_scores.empty() || entity_scores.empty()) throw EmptyInput();
    GapReport g;
    g.semantic_mean = mean_of(semantic_scores);
    g.entity_mean = mean_of(entity_scores);
    g.gap_pp = 100.0 * (g.semantic_mean - g.entity_mean);
    if (g.entity_mean > 0.0) g.ratio = g.semantic_mean / g.entity_mean;
    return g;
}

FailureOverlap failure_overlap(const std::vector<VBScoreResult>& results,
                               const FailureThresholds& thresholds,
                               std::optional<double> semantic_high) {
    if (results.empty()) throw EmptyInput();
    double high = semantic_high.value_or(thresholds.semantic);
    size_t low_entity = 0, contradiction = 0;
    for (const auto& r : results) {
        bool high_sem = r.components.semantic_similarity >= high;
        if (high_sem && r.components.entity_f1 < thresholds.entity) ++low_entity;
        if (high_sem && r.components.factual_consistency < thresholds.factual) ++contradiction;
    }
    double n = static_cast<double>(results.size());
    return {static_cast<double>(low_entity) / n, static_cast<double>(contradiction) / n};
}

std::string to_string(StratumKey k) {
    switch (k) {
        case StratumKey::Source: return "source";
        case StratumKey::QuestionType: return "question_type";
        case StratumKey::DiseaseCategory: return "disease_category";
    }
    return "source";
}

double relative_gap_percent(double mean_a, double mean_b) {
    if (mean_b == 0.0) return mean_a == 0.0 ? 0.0 : kInf;
    return 100.0 * (mean_a - mean_b) / mean_b;
}

StratifiedComparison stratified_compare(const std::vector<VBScoreResult>& results,
                                        const std::vector<QARecord>& dataset,
                                        StratumKey key, double alpha) {
    std::unordered_map<std::string, const QARecord*> by_id;
    for (const auto& rec : dataset) by_id[rec.id] = &rec;

    std::map<std::string, std::vector<double>> groups;
    for (const auto& r : results) {
        auto it = by_id.find(r.sample_id);
        if (it == by_id.end())
            throw ValidationError("result sample `" + r.sample_id +
                                  "` is not in the dataset");
        const QARecord& rec = *it->second;
        std::string stratum;
        switch (key) {
            case StratumKey::Source: stratum = vbscore::to_string(rec.source); break;
            case StratumKey::QuestionType: stratum = vbscore::to_string(rec.question_type); break;
            case StratumKey::DiseaseCategory:
                stratum = vbscore::to_string(rec.disease_category);
                break;
        }
        groups[stratum].push_back(r.vb_score);
    }
    if (groups.size() < 2) throw SingleStratum();

    StratifiedComparison out;
    for (const auto& [name, values] : groups) out.per_stratum[name] = describe(values);

    // two largest strata by count, names break ties
    std::vector<std::string> names;
    for (const auto& [name, values] : groups) names.push_back(name);
    std::sort(names.begin(), names.end(), [&](const std::string& x, const std::string& y) {
        if (groups[x].size() != groups[y].size()) return groups[x].size() > groups[y].size();
        return x < y;
    });
    std::string a = names[0], b = names[1];
    // report the higher-mean stratum first so the gap reads as an advantage
    if (out.per_stratum[b].mean > out.per_stratum[a].mean) std::swap(a, b);
    out.stratum_a = a;
    out.stratum_b = b;
    out.test = two_sample_t(groups[a], groups[b], alpha);
    try {
        out.d = cohens_d(groups[a], groups[b]);
    } catch (const ZeroPooledSD&) {
        double ma = out.per_stratum[a].mean, mb = out.per_stratum[b].mean;
        out.d = ma == mb ? 0.0 : (ma > mb ? kInf : -kInf);
    }
    out.relative_gap = relative_gap_percent(out.per_stratum[a].mean, out.per_stratum[b].mean);
    return out;
}

}  // namespace vbscore::stats
