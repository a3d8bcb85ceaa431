#pragma once

#include <string>
#include <vector>

namespace vbscore {

class NLIBackend;  // see backends.hpp

// Three-way label distribution. Each value in [0,1]; the three sum to 1
// within 1e-6.
struct NLIVerdict {
    double entailment = 0.0;
    double neutral = 0.0;
    double contradiction = 0.0;

    void validate() const;
    // Argmax label; ties resolve entailment > neutral > contradiction.
    enum class Label { Entailment, Neutral, Contradiction };
    Label dominant() const;
};

// Maps the dominant NLI label of a sentence to a score contribution.
struct LabelScoreMapping {
    double entailment = 1.0;
    double neutral = 0.5;
    double contradiction = 0.0;
};

enum class ConsistencyMode { PerSentence, WholeResponse };

// Runs a single premise/hypothesis pair through the backend.
NLIVerdict nli_classify(const std::string& premise, const std::string& hypothesis,
                        NLIBackend& backend);

// Splits the generated answer into sentences, classifies each one with
// the reference as premise, maps each dominant label through `mapping`,
// and averages. WholeResponse mode classifies the full text as a single
// hypothesis. Throws EmptyGeneration when no sentences survive.
double factual_consistency(const std::string& reference, const std::string& generated,
                           NLIBackend& backend, const LabelScoreMapping& mapping = {},
                           ConsistencyMode mode = ConsistencyMode::PerSentence);

// Scores strictly below 0.50 signal likely contradictions.
bool is_contradictory(double score, double threshold = 0.50);

}  // namespace vbscore
