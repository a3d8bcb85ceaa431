#include "vbscore/factual.hpp"

#include <cmath>

#include "vbscore/backends.hpp"
#include "vbscore/errors.hpp"
#include "vbscore/textnorm.hpp"

namespace vbscore {

void NLIVerdict::validate() const {
    for (double v : {entailment, neutral, contradiction}) {
        if (!(v >= 0.0 && v <= 1.0))
            throw ValidationError("NLI probabilities must lie in [0,1]");
    }
    if (std::fabs(entailment + neutral + contradiction - 1.0) > 1e-6)
        throw ValidationError("NLI probabilities must sum to 1");
}

NLIVerdict::Label NLIVerdict::dominant() const {
    if (entailment >= neutral && entailment >= contradiction) return Label::Entailment;
    if (neutral >= contradiction) return Label::Neutral;
    return Label::Contradiction;
}

NLIVerdict nli_classify(const std::string& premise, const std::string& hypothesis,
                        NLIBackend& backend) {
    if (premise.empty() || hypothesis.empty())
        throw ValidationError("NLI needs nonempty premise and hypothesis");
    auto verdicts = backend.classify({{premise, hypothesis}});
    if (verdicts.size() != 1)
        throw BackendProtocolError("NLI backend returned wrong verdict count");
    verdicts[0].validate();
    return verdicts[0];
}

double factual_consistency(const std::string& reference, const std::string& generated,
                           NLIBackend& backend, const LabelScoreMapping& mapping,
                           ConsistencyMode mode) {
    std::vector<std::string> hypotheses;
    if (mode == ConsistencyMode::WholeResponse) {
        if (!textnorm::basic_normalize(generated).empty()) hypotheses.push_back(generated);
    } else {
        for (auto& s : textnorm::split_sentences(generated)) {
            if (!textnorm::basic_normalize(s).empty()) hypotheses.push_back(std::move(s));
        }
    }
    if (hypotheses.empty()) throw EmptyGeneration();

    std::vector<NLIPair> pairs;
    pairs.reserve(hypotheses.size());
    for (const auto& h : hypotheses) pairs.push_back({reference, h});
    auto verdicts = backend.classify(pairs);
    if (verdicts.size() != pairs.size())
        throw BackendProtocolError("NLI backend returned wrong verdict count");

    double sum = 0.0;
    for (const auto& v : verdicts) {
        v.validate();
        switch (v.dominant()) {
            case NLIVerdict::Label::Entailment: sum += mapping.entailment; break;
            case NLIVerdict::Label::Neutral: sum += mapping.neutral; break;
            case NLIVerdict::Label::Contradiction: sum += mapping.contradiction; break;
        }
    }
    return sum / static_cast<double>(verdicts.size());
}

bool is_contradictory(double score, double threshold) {
    return score < threshold;
}

}  // namespace vbscore
