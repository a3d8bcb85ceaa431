#pragma once

#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vbscore/backends.hpp"
#include "vbscore/datamodel.hpp"

namespace vbscore {

// The four prompt templates. Placeholders: {question} everywhere,
// {context} in rag, {examples} in few_shot. The defaults ship as
// editable files under configs/templates/ and are compiled in here so
// the toolkit runs without any config.
struct PromptTemplates {
    std::string baseline;
    std::string strict;
    std::string rag;
    std::string few_shot;
    std::vector<std::pair<std::string, std::string>> examples;  // (question, answer)

    static PromptTemplates defaults();
    // Overrides any template for which <dir>/<name>.txt exists
    // (zero_shot_baseline, zero_shot_strict, rag_context, few_shot).
    static PromptTemplates load(const std::string& dir);
};

struct PromptConfig {
    PromptConfigKind kind = PromptConfigKind::ZeroShotBaseline;
    std::string instruction_text;  // template with placeholders
    std::vector<std::pair<std::string, std::string>> examples;  // FewShot only
    std::optional<std::string> context;                          // RAGContext only
};

// Builds the config for a record: RAG context comes from the record's
// reference answer (the perfect-retrieval upper bound), FewShot carries
// the template example pairs.
PromptConfig make_prompt_config(PromptConfigKind kind, const PromptTemplates& templates,
                                const QARecord& record);

// Substitutes the record's question (and context / examples) into the
// template. Throws MissingContext for a RAG config without context and
// ValidationError for a FewShot config without the expected number of
// examples.
std::string render_prompt(const PromptConfig& config, const QARecord& record,
                          size_t expected_examples = 2);

// --- response cache ---

// Append-only JSONL cache keyed by a digest of (model id, prompt,
// generation parameters). Corrupt lines are skipped on load so one bad
// entry never invalidates the rest. Writes are idempotent: a key always
// maps to the same value.
class ResponseCache {
public:
    explicit ResponseCache(std::string path);

    static std::string make_key(const std::string& model_id, const std::string& prompt,
                                const GenerationParams& params);

    std::optional<ModelResponse> get(const std::string& key) const;
    void put(const std::string& key, const ModelResponse& response);
    size_t size() const;

private:
    std::string path_;
    mutable std::mutex mutex_;
    std::map<std::string, ModelResponse> entries_;
};

struct RetryPolicy {
    int max_attempts = 3;
    int initial_delay_ms = 100;
    double multiplier = 2.0;
};

struct GenerateOutcome {
    ModelResponse response;
    int attempts = 0;      // backend calls actually made (0 on a cache hit)
    bool from_cache = false;
};

using ClockFn = std::function<std::string()>;

std::string utc_now_iso8601();

// Serves from cache when possible; otherwise calls the backend with
// exponential backoff on transient failures (unavailable / rate limited)
// and stores the response. Authentication errors are not retried.
GenerateOutcome generate(ModelBackend& client, const std::string& model_id,
                         const std::string& sample_id, PromptConfigKind prompt_config,
                         const std::string& prompt, const GenerationParams& params,
                         ResponseCache& cache, const RetryPolicy& retry = {},
                         const ClockFn& clock = utc_now_iso8601);

// --- cost accounting ---

struct ModelPrice {
    double input_price_per_million = 0.0;
    double output_price_per_million = 0.0;
};

class PriceTable {
public:
    PriceTable() = default;
    // JSON object: model id -> {input_price_per_million, output_price_per_million}.
    static PriceTable load(const std::string& path);
    static PriceTable defaults();

    void set(const std::string& model_id, ModelPrice price);
    std::optional<ModelPrice> price_for(const std::string& model_id) const;
    const std::map<std::string, ModelPrice>& all() const { return prices_; }

private:
    std::map<std::string, ModelPrice> prices_;
};

// input_tokens * input_price/1e6 + output_tokens * output_price/1e6.
double cost(std::int64_t input_tokens, std::int64_t output_tokens, const ModelPrice& price);

// (total_cost / n_samples) * target_queries.
double scale_projection(double total_cost, std::int64_t n_samples,
                        std::int64_t target_queries);

}  // namespace vbscore
