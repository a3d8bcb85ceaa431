#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "vbscore/backends.hpp"
#include "vbscore/entity.hpp"
#include "vbscore/factual.hpp"
#include "vbscore/harness.hpp"
#include "vbscore/scoring.hpp"

namespace vbscore {

// Everything a command run needs. Defaults are compiled in; a JSON
// config file (comments allowed) overrides them; command-line flags
// override the file.
struct RunConfig {
    // inputs / outputs
    std::string dataset_path;
    std::vector<std::string> responses_paths;
    std::string results_path;
    std::string out_dir = "out";

    // scoring
    std::string scheme_name = "vb";
    std::vector<WeightScheme> extra_schemes;
    std::vector<std::string> sensitivity_schemes;  // empty = all presets
    FailureThresholds thresholds;
    double semantic_high = 0.30;  // "high similarity" cutoff for overlap analysis
    int min_token_len = kDefaultMinTokenLen;
    LabelScoreMapping nli_mapping;
    ConsistencyMode nli_mode = ConsistencyMode::PerSentence;
    size_t embedding_dim = 256;
    bool welch = false;
    double alpha = 0.05;

    // backends
    bool reference_backends = false;
    std::map<std::string, std::string> backend_urls;  // entity/embedding/nli/model
    std::string model_auth_header;
    std::string model_auth_env;

    // resources
    std::string abbreviations_path;
    std::string lexicon_path;
    std::string prices_path;
    std::string templates_dir;

    // sweep
    std::vector<std::string> sweep_models;
    size_t few_shot_count = 2;
    RetryPolicy retry;

    int parallel = 1;
};

// Parses the JSON config file into `config`. Paths inside the file are
// resolved relative to the file's directory.
void apply_config_file(RunConfig& config, const std::string& path);

AbbreviationTable load_abbreviations(const RunConfig& config);
PriceTable load_prices(const RunConfig& config);
PromptTemplates load_templates(const RunConfig& config);

// Entity phrases used by the reference backend when no lexicon file is
// configured.
const std::vector<std::string>& default_lexicon();

struct ScoringBackends {
    std::unique_ptr<EntityBackend> entity;
    std::unique_ptr<EmbeddingBackend> embedding;
    std::unique_ptr<NLIBackend> nli;
};

// Reference backends when requested (or when no URL is configured for a
// component), HTTP clients otherwise.
ScoringBackends make_scoring_backends(const RunConfig& config);

std::unique_ptr<ModelBackend> make_model_backend(const RunConfig& config);

}  // namespace vbscore
