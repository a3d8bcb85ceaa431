#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "vbscore/datamodel.hpp"
#include "vbscore/factual.hpp"

namespace vbscore {

// ---------------------------------------------------------------------------
// entity extraction
// ---------------------------------------------------------------------------

struct EntitySpan {
    std::string text;
    size_t start = 0;  // byte offsets; 0/0 when the backend reports none
    size_t end = 0;
};

class EntityBackend {
public:
    virtual ~EntityBackend() = default;
    // One span list per input text, aligned by index.
    virtual std::vector<std::vector<EntitySpan>> extract_spans(
        const std::vector<std::string>& texts) = 0;
};

// Deterministic gazetteer backend: finds whole-word, case-insensitive
// occurrences of lexicon phrases. The lexicon file holds one entity
// phrase per line ('#' comments allowed).
class LexiconEntityBackend : public EntityBackend {
public:
    explicit LexiconEntityBackend(std::vector<std::string> phrases);
    static LexiconEntityBackend from_file(const std::string& path);

    std::vector<std::vector<EntitySpan>> extract_spans(
        const std::vector<std::string>& texts) override;

    size_t lexicon_size() const { return phrases_.size(); }

private:
    std::vector<std::string> phrases_;  // lowercased, sorted, deduplicated
};

// Wire contract: POST {"texts":[...]} -> {"entities":[[...],...]}.
class HttpEntityBackend : public EntityBackend {
public:
    explicit HttpEntityBackend(std::string url);
    std::vector<std::vector<EntitySpan>> extract_spans(
        const std::vector<std::string>& texts) override;

private:
    std::string url_;
};

// ---------------------------------------------------------------------------
// embeddings
// ---------------------------------------------------------------------------

class EmbeddingBackend {
public:
    virtual ~EmbeddingBackend() = default;
    // One vector per text, all of equal dimension.
    virtual std::vector<std::vector<double>> embed(const std::vector<std::string>& texts) = 0;
};

// Deterministic term-frequency vectors over hashed word tokens. Not
// comparable to a trained embedding model; intended for tests and for
// runs that must be reproducible without model downloads.
class HashingEmbeddingBackend : public EmbeddingBackend {
public:
    explicit HashingEmbeddingBackend(size_t dimension = 256);
    std::vector<std::vector<double>> embed(const std::vector<std::string>& texts) override;

private:
    size_t dimension_;
};

// Wire contract: POST {"texts":[...]} -> {"vectors":[[...],...]}.
class HttpEmbeddingBackend : public EmbeddingBackend {
public:
    explicit HttpEmbeddingBackend(std::string url);
    std::vector<std::vector<double>> embed(const std::vector<std::string>& texts) override;

private:
    std::string url_;
};

// ---------------------------------------------------------------------------
// natural language inference
// ---------------------------------------------------------------------------

struct NLIPair {
    std::string premise;
    std::string hypothesis;
};

class NLIBackend {
public:
    virtual ~NLIBackend() = default;
    virtual std::vector<NLIVerdict> classify(const std::vector<NLIPair>& pairs) = 0;
};

// Deterministic rule backend: entailment when the hypothesis equals or
// is contained in the premise (after basic normalization), contradiction
// when negation polarity flips over shared content words, neutral
// otherwise.
class RuleNLIBackend : public NLIBackend {
public:
    std::vector<NLIVerdict> classify(const std::vector<NLIPair>& pairs) override;
};

// Wire contract: POST {"pairs":[{"premise":...,"hypothesis":...},...]}
// -> {"verdicts":[[entailment,neutral,contradiction],...]}.
class HttpNLIBackend : public NLIBackend {
public:
    explicit HttpNLIBackend(std::string url);
    std::vector<NLIVerdict> classify(const std::vector<NLIPair>& pairs) override;

private:
    std::string url_;
};

// ---------------------------------------------------------------------------
// chat-completion model backends
// ---------------------------------------------------------------------------

struct Completion {
    std::string text;
    std::int64_t input_tokens = 0;
    std::int64_t output_tokens = 0;
};

class ModelBackend {
public:
    virtual ~ModelBackend() = default;
    virtual Completion complete(const std::string& model_id, const std::string& prompt,
                                const GenerationParams& params) = 0;
};

// Wire contract:
//   POST {"model":..., "prompt":..., "params":{temperature, max_tokens,
//         top_p, frequency_penalty, presence_penalty}}
//   -> {"text":..., "usage":{"input_tokens":..., "output_tokens":...}}
// Credentials, when needed, come from the environment variable named in
// auth_env and are sent in the auth_header request header.
class HttpModelBackend : public ModelBackend {
public:
    explicit HttpModelBackend(std::string url, std::string auth_header = "",
                              std::string auth_env = "");
    Completion complete(const std::string& model_id, const std::string& prompt,
                        const GenerationParams& params) override;

private:
    std::string url_;
    std::string auth_header_;
    std::string auth_env_;
};

// Deterministic offline model backend. Behavior keys off the model id:
//   mock-verbatim   echoes injected context when present, otherwise a
//                   short generic referral
//   mock-listy      answers with a bulleted list (plus context lead-in
//                   when present)
//   mock-vague      fluent filler with no specific entities
// Any other id behaves like mock-vague. Token usage is the whitespace
// word count of prompt and response.
class MockModelBackend : public ModelBackend {
public:
    Completion complete(const std::string& model_id, const std::string& prompt,
                        const GenerationParams& params) override;
};

// Whitespace word count, the token proxy used when a backend does not
// report usage.
std::int64_t approx_token_count(const std::string& text);

}  // namespace vbscore
