#include "vbscore/harness.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "vbscore/digest.hpp"
#include "vbscore/errors.hpp"
#include "vbscore/io.hpp"

namespace vbscore {

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr const char* kBaselineTemplate =
    "You are a helpful medical information assistant. Answer the following health "
    "question based on reliable medical knowledge. Provide accurate, clear, and concise "
    "information suitable for a general audience. Question: {question} Answer:";

constexpr const char* kStrictTemplate =
    "You are a helpful medical information assistant. Answer the following health "
    "question based on reliable medical knowledge. Provide accurate, clear, and concise "
    "information suitable for a general audience. Name every relevant disease, symptom, "
    "medication, dosage, procedure, and anatomical term explicitly, using precise medical "
    "terminology rather than general phrases. Include specific values where standard "
    "guidance provides them, and do not omit entities that standard guidance mentions. "
    "Question: {question} Answer:";

constexpr const char* kRagTemplate =
    "You are a helpful medical information assistant. Answer the following health "
    "question based on reliable medical knowledge. Provide accurate, clear, and concise "
    "information suitable for a general audience. Use the authoritative reference "
    "information below when forming your answer.\n\n"
    "Context: {context}\n\n"
    "Question: {question} Answer:";

constexpr const char* kFewShotTemplate =
    "You are a helpful medical information assistant. Answer the following health "
    "question based on reliable medical knowledge. Provide accurate, clear, and concise "
    "information suitable for a general audience. Here are example question-answer pairs "
    "in the expected format.\n\n"
    "{examples}"
    "Question: {question} Answer:";

std::string replace_all(std::string text, const std::string& placeholder,
                        const std::string& value) {
    size_t pos = 0;
    while ((pos = text.find(placeholder, pos)) != std::string::npos) {
        text.replace(pos, placeholder.size(), value);
        pos += value.size();
    }
    return text;
}

std::optional<std::string> read_template_file(const fs::path& path) {
    if (!fs::exists(path)) return std::nullopt;
    std::string content = io::read_file(path.string());
    while (!content.empty() && (content.back() == '\n' || content.back() == '\r'))
        content.pop_back();
    return content;
}

}  // namespace

PromptTemplates PromptTemplates::defaults() {
    PromptTemplates t;
    t.baseline = kBaselineTemplate;
    t.strict = kStrictTemplate;
    t.rag = kRagTemplate;
    t.few_shot = kFewShotTemplate;
    t.examples = {
        {"What is influenza?",
         "Influenza, or flu, is a contagious respiratory illness caused by influenza "
         "viruses. Common symptoms include fever, cough, sore throat, runny nose, muscle "
         "aches, and fatigue. Most people recover within one to two weeks, but influenza "
         "can cause severe illness in older adults, young children, pregnant women, and "
         "people with chronic conditions. Annual vaccination is the best way to prevent "
         "infection."},
        {"How can dehydration be prevented?",
         "Drink fluids regularly throughout the day, especially water. Fluid needs "
         "increase during hot weather, exercise, fever, vomiting, or diarrhea. Warning "
         "signs of dehydration include dark urine, dizziness, dry mouth, and fatigue. "
         "Older adults and young children are at higher risk and should be monitored "
         "closely."},
    };
    return t;
}

PromptTemplates PromptTemplates::load(const std::string& dir) {
    PromptTemplates t = defaults();
    fs::path base(dir);
    if (auto s = read_template_file(base / "zero_shot_baseline.txt")) t.baseline = *s;
    if (auto s = read_template_file(base / "zero_shot_strict.txt")) t.strict = *s;
    if (auto s = read_template_file(base / "rag_context.txt")) t.rag = *s;
    if (auto s = read_template_file(base / "few_shot.txt")) t.few_shot = *s;
    return t;
}

PromptConfig make_prompt_config(PromptConfigKind kind, const PromptTemplates& templates,
                                const QARecord& record) {
    PromptConfig config;
    config.kind = kind;
    switch (kind) {
        case PromptConfigKind::ZeroShotBaseline:
            config.instruction_text = templates.baseline;
            break;
        case PromptConfigKind::ZeroShotStrict:
            config.instruction_text = templates.strict;
            break;
        case PromptConfigKind::RAGContext:
            config.instruction_text = templates.rag;
            config.context = record.reference_answer;
            break;
        case PromptConfigKind::FewShot:
            config.instruction_text = templates.few_shot;
            config.examples = templates.examples;
            break;
    }
    return config;
}

std::string render_prompt(const PromptConfig& config, const QARecord& record,
                          size_t expected_examples) {
    std::string text = config.instruction_text;
    switch (config.kind) {
        case PromptConfigKind::ZeroShotBaseline:
        case PromptConfigKind::ZeroShotStrict:
            break;
        case PromptConfigKind::RAGContext: {
            if (!config.context || config.context->empty()) throw MissingContext();
            text = replace_all(std::move(text), "{context}", *config.context);
            break;
        }
        case PromptConfigKind::FewShot: {
            if (config.examples.size() != expected_examples)
                throw ValidationError("FewShot config carries " +
                                      std::to_string(config.examples.size()) +
                                      " examples, expected " +
                                      std::to_string(expected_examples));
            std::string block;
            for (const auto& [q, a] : config.examples) {
                block += "Question: " + q + " Answer: " + a + "\n\n";
            }
            text = replace_all(std::move(text), "{examples}", block);
            break;
        }
    }
    return replace_all(std::move(text), "{question}", record.question);
}

// --- ResponseCache ---

ResponseCache::ResponseCache(std::string path) : path_(std::move(path)) {
    std::ifstream in(path_);
    if (!in) return;  // cache starts empty
    std::string line;
    while (std::getline(in, line)) {
        json obj = json::parse(line, nullptr, false);
        if (obj.is_discarded() || !obj.is_object()) continue;  // skip corrupt entries
        try {
            std::string key = obj.at("key").get<std::string>();
            const json& r = obj.at("response");
            ModelResponse resp;
            resp.sample_id = r.at("sample_id").get<std::string>();
            resp.model_id = r.at("model_id").get<std::string>();
            resp.prompt_config =
                prompt_config_from_string(r.at("prompt_config").get<std::string>());
            resp.text = r.at("text").get<std::string>();
            resp.input_tokens = r.at("input_tokens").get<std::int64_t>();
            resp.output_tokens = r.at("output_tokens").get<std::int64_t>();
            resp.created_at = r.at("created_at").get<std::string>();
            entries_[key] = std::move(resp);
        } catch (const std::exception&) {
            continue;
        }
    }
}

std::string ResponseCache::make_key(const std::string& model_id, const std::string& prompt,
                                    const GenerationParams& params) {
    json canonical{{"model", model_id},
                   {"params",
                    {{"temperature", params.temperature},
                     {"max_tokens", params.max_tokens},
                     {"top_p", params.top_p},
                     {"frequency_penalty", params.frequency_penalty},
                     {"presence_penalty", params.presence_penalty}}},
                   {"prompt", prompt}};
    return sha256_hex(canonical.dump());
}

std::optional<ModelResponse> ResponseCache::get(const std::string& key) const {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

void ResponseCache::put(const std::string& key, const ModelResponse& response) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = entries_.find(key);
    if (it != entries_.end()) return;  // idempotent: same key, same value
    entries_[key] = response;

    fs::path dir = fs::path(path_).parent_path();
    if (!dir.empty()) {
        std::error_code ec;
        fs::create_directories(dir, ec);
    }
    std::ofstream out(path_, std::ios::app);
    if (!out) throw IOFailure("cannot append to cache " + path_);
    json obj{{"key", key},
             {"response",
              {{"sample_id", response.sample_id},
               {"model_id", response.model_id},
               {"prompt_config", to_string(response.prompt_config)},
               {"text", response.text},
               {"input_tokens", response.input_tokens},
               {"output_tokens", response.output_tokens},
               {"created_at", response.created_at}}}};
    out << obj.dump() << '\n';
}

size_t ResponseCache::size() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return entries_.size();
}

std::string utc_now_iso8601() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

GenerateOutcome generate(ModelBackend& client, const std::string& model_id,
                         const std::string& sample_id, PromptConfigKind prompt_config,
                         const std::string& prompt, const GenerationParams& params,
                         ResponseCache& cache, const RetryPolicy& retry,
                         const ClockFn& clock) {
    params.validate();
    std::string key = ResponseCache::make_key(model_id, prompt, params);
    if (auto cached = cache.get(key)) {
        return {*cached, 0, true};
    }

    int attempts = 0;
    double delay = retry.initial_delay_ms;
    for (;;) {
        ++attempts;
        try {
            Completion completion = client.complete(model_id, prompt, params);
            ModelResponse response;
            response.sample_id = sample_id;
            response.model_id = model_id;
            response.prompt_config = prompt_config;
            response.text = std::move(completion.text);
            response.input_tokens = completion.input_tokens;
            response.output_tokens = completion.output_tokens;
            response.created_at = clock();
            cache.put(key, response);
            return {std::move(response), attempts, false};
        } catch (const AuthenticationError&) {
            throw;
        } catch (const RateLimited&) {
            if (attempts >= retry.max_attempts) throw;
        } catch (const BackendUnavailable&) {
            if (attempts >= retry.max_attempts) throw;
        }
        if (delay > 0)
            std::this_thread::sleep_for(
                std::chrono::milliseconds(static_cast<int>(delay)));
        delay *= retry.multiplier;
    }
}

// --- PriceTable ---

PriceTable PriceTable::load(const std::string& path) {
    std::string content = io::read_file(path);
    json obj = json::parse(content, nullptr, false, /*ignore_comments=*/true);
    if (obj.is_discarded() || !obj.is_object())
        throw ValidationError("price table " + path + " must be a JSON object");
    PriceTable table;
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        const json& entry = it.value();
        ModelPrice price;
        price.input_price_per_million = entry.at("input_price_per_million").get<double>();
        price.output_price_per_million = entry.at("output_price_per_million").get<double>();
        if (price.input_price_per_million < 0 || price.output_price_per_million < 0)
            throw ValidationError("prices must be nonnegative (" + it.key() + ")");
        table.prices_[it.key()] = price;
    }
    return table;
}

PriceTable PriceTable::defaults() {
    PriceTable table;
    table.set("gpt-4", {30.0, 60.0});
    table.set("claude-sonnet-4-5-20250929", {3.0, 15.0});
    table.set("gemini-2.5-flash", {0.0, 0.0});
    return table;
}

void PriceTable::set(const std::string& model_id, ModelPrice price) {
    prices_[model_id] = price;
}

std::optional<ModelPrice> PriceTable::price_for(const std::string& model_id) const {
    auto it = prices_.find(model_id);
    if (it == prices_.end()) return std::nullopt;
    return it->second;
}

double cost(std::int64_t input_tokens, std::int64_t output_tokens, const ModelPrice& price) {
    return static_cast<double>(input_tokens) * price.input_price_per_million / 1e6 +
           static_cast<double>(output_tokens) * price.output_price_per_million / 1e6;
}

double scale_projection(double total_cost, std::int64_t n_samples,
                        std::int64_t target_queries) {
    if (n_samples <= 0) throw ValidationError("scale projection needs n_samples > 0");
    return total_cost / static_cast<double>(n_samples) *
           static_cast<double>(target_queries);
}

}  // namespace vbscore
