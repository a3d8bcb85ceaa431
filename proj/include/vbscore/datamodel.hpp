#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace vbscore {

enum class Source { CDC, WHO, NHS, MayoClinic, Other };
enum class DiseaseCategory { Infectious, Chronic, Other };
enum class QuestionType { Definition, GeneralHealth, Treatment, Prevention, Other };
enum class PromptConfigKind { ZeroShotBaseline, ZeroShotStrict, RAGContext, FewShot };
enum class FailureFlag { EntityFail, SemanticFail, FactualFail, StructureFail, SystemicFail };

std::string to_string(Source v);
std::string to_string(DiseaseCategory v);
std::string to_string(QuestionType v);
std::string to_string(PromptConfigKind v);
std::string to_string(FailureFlag v);

// Parsers throw ValidationError on unknown names.
Source source_from_string(const std::string& s);
DiseaseCategory disease_category_from_string(const std::string& s);
QuestionType question_type_from_string(const std::string& s);
PromptConfigKind prompt_config_from_string(const std::string& s);
FailureFlag failure_flag_from_string(const std::string& s);

// One benchmark item: a question, its authoritative reference answer, and
// the strata used for disparity analysis.
struct QARecord {
    std::string id;
    Source source = Source::Other;
    std::string topic;
    DiseaseCategory disease_category = DiseaseCategory::Other;
    QuestionType question_type = QuestionType::Other;
    std::string question;
    std::string reference_answer;
};

struct GenerationParams {
    double temperature = 0.0;
    int max_tokens = 300;
    double top_p = 1.0;
    double frequency_penalty = 0.0;
    double presence_penalty = 0.0;

    // Throws ValidationError if temperature < 0, max_tokens <= 0, or
    // top_p outside (0,1].
    void validate() const;
    bool operator==(const GenerationParams&) const = default;
};

// A generated answer plus provenance.
struct ModelResponse {
    std::string sample_id;
    std::string model_id;
    PromptConfigKind prompt_config = PromptConfigKind::ZeroShotBaseline;
    std::string text;
    std::int64_t input_tokens = 0;
    std::int64_t output_tokens = 0;
    std::string created_at;  // UTC ISO-8601

    bool operator==(const ModelResponse&) const = default;
};

// The four per-sample component values, each in [0,1].
struct ComponentScores {
    double entity_f1 = 0.0;
    double semantic_similarity = 0.0;
    double factual_consistency = 0.0;
    double structured_overlap = 0.0;

    void validate() const;  // throws ValidationError if any value leaves [0,1]
    bool operator==(const ComponentScores&) const = default;
};

struct VBScoreResult {
    std::string sample_id;
    std::string model_id;
    PromptConfigKind prompt_config = PromptConfigKind::ZeroShotBaseline;
    ComponentScores components;
    double vb_score = 0.0;
    std::string weight_scheme_name;
    std::set<FailureFlag> failure_flags;

    bool operator==(const VBScoreResult&) const = default;
};

// Component scores for a sample where one or more scoring backends
// failed. Missing values stay absent; no zero is substituted and no
// composite score is computed for such samples.
struct PartialScores {
    std::optional<double> entity_f1;
    std::optional<double> semantic_similarity;
    std::optional<double> factual_consistency;
    std::optional<double> structured_overlap;
};

struct PartialResult {
    std::string sample_id;
    std::string model_id;
    PromptConfigKind prompt_config = PromptConfigKind::ZeroShotBaseline;
    PartialScores scores;
    std::string failed_component;
    std::string error;
};

}  // namespace vbscore
