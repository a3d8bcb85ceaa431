#include "vbscore/scoring.hpp"

#include <algorithm>
#include <cmath>

#include "vbscore/errors.hpp"

namespace vbscore {

void WeightScheme::validate() const {
    if (name.empty()) throw ValidationError("weight scheme needs a name");
    for (double w : {w_entity, w_semantic, w_factual, w_structured}) {
        if (!(w >= 0.0)) throw ValidationError("weights must be nonnegative");
    }
    double sum = w_entity + w_semantic + w_factual + w_structured;
    if (std::abs(sum - 1.0) > 1e-9)
        throw ValidationError("weights of scheme `" + name + "` sum to " +
                              std::to_string(sum) + ", expected 1");
}

const std::vector<WeightScheme>& preset_schemes() {
    static const std::vector<WeightScheme> presets = {
        {"vb", 0.30, 0.30, 0.25, 0.15},
        {"equal", 0.25, 0.25, 0.25, 0.25},
        {"entity", 0.50, 0.20, 0.20, 0.10},
        {"safety", 0.20, 0.20, 0.45, 0.15},
        {"semantic", 0.20, 0.50, 0.20, 0.10},
    };
    return presets;
}

WeightScheme resolve_scheme(const std::string& name,
                            const std::vector<WeightScheme>& extra) {
    for (const auto& s : preset_schemes())
        if (s.name == name) return s;
    for (const auto& s : extra)
        if (s.name == name) return s;
    throw ValidationError("unknown weight scheme `" + name + "`");
}

void FailureThresholds::validate() const {
    for (double t : {entity, semantic, factual, structured, overall}) {
        if (!(t > 0.0 && t < 1.0))
            throw ValidationError("failure thresholds must lie in (0,1)");
    }
}

double compose_vb(const ComponentScores& c, const WeightScheme& scheme) {
    return scheme.w_entity * c.entity_f1 + scheme.w_semantic * c.semantic_similarity +
           scheme.w_factual * c.factual_consistency +
           scheme.w_structured * c.structured_overlap;
}

std::set<FailureFlag> classify_failures(const ComponentScores& c, double vb_score,
                                        const FailureThresholds& t) {
    std::set<FailureFlag> flags;
    if (c.entity_f1 < t.entity) flags.insert(FailureFlag::EntityFail);
    if (c.semantic_similarity < t.semantic) flags.insert(FailureFlag::SemanticFail);
    if (c.factual_consistency < t.factual) flags.insert(FailureFlag::FactualFail);
    if (c.structured_overlap < t.structured) flags.insert(FailureFlag::StructureFail);
    if (vb_score < t.overall) flags.insert(FailureFlag::SystemicFail);
    return flags;
}

std::vector<SchemeRanking> rank_models(
    const std::map<std::string, ComponentScores>& model_component_means,
    const std::vector<WeightScheme>& schemes) {
    if (model_component_means.size() < 2)
        throw ValidationError("ranking needs at least two models");
    std::vector<SchemeRanking> out;
    out.reserve(schemes.size());
    for (const auto& scheme : schemes) {
        scheme.validate();
        SchemeRanking ranking;
        ranking.scheme_name = scheme.name;
        for (const auto& [model, means] : model_component_means) {
            ranking.entries.push_back({model, compose_vb(means, scheme), false});
        }
        std::sort(ranking.entries.begin(), ranking.entries.end(),
                  [](const RankingEntry& a, const RankingEntry& b) {
                      if (a.score != b.score) return a.score > b.score;
                      return a.model_id < b.model_id;
                  });
        for (size_t i = 1; i < ranking.entries.size(); ++i) {
            if (ranking.entries[i].score == ranking.entries[i - 1].score) {
                ranking.entries[i].tied_with_previous = true;
                ranking.has_ties = true;
            }
        }
        out.push_back(std::move(ranking));
    }
    return out;
}

bool rankings_stable(const std::vector<SchemeRanking>& rankings) {
    if (rankings.size() <= 1) return true;
    auto order = [](const SchemeRanking& r) {
        std::vector<std::string> ids;
        ids.reserve(r.entries.size());
        for (const auto& e : r.entries) ids.push_back(e.model_id);
        return ids;
    };
    const auto first = order(rankings.front());
    for (size_t i = 1; i < rankings.size(); ++i) {
        if (order(rankings[i]) != first) return false;
    }
    return true;
}

}  // namespace vbscore
