#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "vbscore/datamodel.hpp"

namespace vbscore {

// Named vector of four nonnegative weights summing to 1.
struct WeightScheme {
    std::string name;
    double w_entity = 0.0;
    double w_semantic = 0.0;
    double w_factual = 0.0;
    double w_structured = 0.0;

    // Throws ValidationError unless all weights are >= 0 and sum to 1
    // within 1e-9.
    void validate() const;
    bool operator==(const WeightScheme&) const = default;
};

// The five named presets: vb (0.30/0.30/0.25/0.15), equal, entity,
// safety, semantic.
const std::vector<WeightScheme>& preset_schemes();

// Resolves against presets first, then `extra`. Throws ValidationError
// for unknown names.
WeightScheme resolve_scheme(const std::string& name,
                            const std::vector<WeightScheme>& extra = {});

struct FailureThresholds {
    double entity = 0.10;
    double semantic = 0.30;
    double factual = 0.50;
    double structured = 0.10;
    double overall = 0.20;

    void validate() const;  // each must lie in (0,1)
};

// Weighted linear combination of the four components.
double compose_vb(const ComponentScores& components, const WeightScheme& scheme);

// A flag is present iff the corresponding value is strictly below its
// threshold ("below" throughout, so boundary values pass).
std::set<FailureFlag> classify_failures(const ComponentScores& components,
                                        double vb_score,
                                        const FailureThresholds& thresholds);

struct RankingEntry {
    std::string model_id;
    double score = 0.0;
    bool tied_with_previous = false;
};

struct SchemeRanking {
    std::string scheme_name;
    std::vector<RankingEntry> entries;  // score descending, ties lexicographic
    bool has_ties = false;
};

// Orders models by composed score under each scheme. Requires >= 2 models.
std::vector<SchemeRanking> rank_models(
    const std::map<std::string, ComponentScores>& model_component_means,
    const std::vector<WeightScheme>& schemes);

// True iff every ranking lists the models in the same order.
bool rankings_stable(const std::vector<SchemeRanking>& rankings);

}  // namespace vbscore
