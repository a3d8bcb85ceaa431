#include "vbscore/backends.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <set>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "vbscore/errors.hpp"
#include "vbscore/textnorm.hpp"

namespace vbscore {

using json = nlohmann::json;
namespace tn = textnorm;

namespace {

struct ParsedUrl {
    std::string base;  // scheme://host[:port]
    std::string path;  // leading '/', defaults to "/"
};

ParsedUrl parse_url(const std::string& url) {
    auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos)
        throw ValidationError("backend url must start with http:// : " + url);
    auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

json post_json(const std::string& url, const json& body,
               const std::string& auth_header = "", const std::string& auth_value = "") {
    ParsedUrl parsed = parse_url(url);
    httplib::Client client(parsed.base);
    client.set_connection_timeout(5, 0);
    client.set_read_timeout(60, 0);
    httplib::Headers headers;
    if (!auth_header.empty() && !auth_value.empty()) headers.emplace(auth_header, auth_value);
    auto res = client.Post(parsed.path, headers, body.dump(), "application/json");
    if (!res) throw BackendUnavailable(url + ": " + httplib::to_string(res.error()));
    if (res->status == 401 || res->status == 403)
        throw AuthenticationError(url + " returned " + std::to_string(res->status));
    if (res->status == 429) throw RateLimited(url);
    if (res->status >= 500)
        throw BackendUnavailable(url + " returned " + std::to_string(res->status));
    if (res->status != 200)
        throw BackendProtocolError(url + " returned " + std::to_string(res->status));
    json parsed_body = json::parse(res->body, nullptr, false);
    if (parsed_body.is_discarded())
        throw BackendProtocolError(url + " returned invalid JSON");
    return parsed_body;
}


}  // namespace

// --- LexiconEntityBackend ---

LexiconEntityBackend::LexiconEntityBackend(std::vector<std::string> phrases) {
    std::set<std::string> unique;
    for (auto& p : phrases) {
        std::string lowered = tn::to_lower(p);
        // trim
        auto b = lowered.find_first_not_of(" \t\r\n");
        auto e = lowered.find_last_not_of(" \t\r\n");
        if (b == std::string::npos) continue;
        unique.insert(lowered.substr(b, e - b + 1));
    }
    phrases_.assign(unique.begin(), unique.end());
}

LexiconEntityBackend LexiconEntityBackend::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IOFailure("cannot open lexicon " + path);
    std::vector<std::string> phrases;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        phrases.push_back(line);
    }
    return LexiconEntityBackend(std::move(phrases));
}

std::vector<std::vector<EntitySpan>> LexiconEntityBackend::extract_spans(
    const std::vector<std::string>& texts) {
    std::vector<std::vector<EntitySpan>> out;
    out.reserve(texts.size());
    for (const auto& text : texts) {
        std::string lowered = tn::to_lower(text);
        std::vector<EntitySpan> spans;
        for (const auto& phrase : phrases_) {
            size_t pos = 0;
            while ((pos = lowered.find(phrase, pos)) != std::string::npos) {
                size_t end = pos + phrase.size();
                bool left_ok = pos == 0 ||
                               !std::isalnum(static_cast<unsigned char>(lowered[pos - 1]));
                bool right_ok = end >= lowered.size() ||
                                !std::isalnum(static_cast<unsigned char>(lowered[end]));
                if (left_ok && right_ok) spans.push_back({text.substr(pos, phrase.size()), pos, end});
                pos = end;
            }
        }
        std::sort(spans.begin(), spans.end(), [](const EntitySpan& a, const EntitySpan& b) {
            if (a.start != b.start) return a.start < b.start;
            return a.end < b.end;
        });
        out.push_back(std::move(spans));
    }
    return out;
}

// --- HttpEntityBackend ---

HttpEntityBackend::HttpEntityBackend(std::string url) : url_(std::move(url)) {}

std::vector<std::vector<EntitySpan>> HttpEntityBackend::extract_spans(
    const std::vector<std::string>& texts) {
    json body{{"texts", texts}};
    json reply = post_json(url_, body);
    if (!reply.is_object() || !reply.contains("entities") || !reply["entities"].is_array() ||
        reply["entities"].size() != texts.size())
        throw BackendProtocolError(url_ + ": expected `entities` aligned with `texts`");
    std::vector<std::vector<EntitySpan>> out;
    out.reserve(texts.size());
    for (const auto& list : reply["entities"]) {
        if (!list.is_array()) throw BackendProtocolError(url_ + ": `entities` rows must be arrays");
        std::vector<EntitySpan> spans;
        for (const auto& e : list) {
            if (!e.is_string()) throw BackendProtocolError(url_ + ": entities must be strings");
            spans.push_back({e.get<std::string>(), 0, 0});
        }
        out.push_back(std::move(spans));
    }
    return out;
}

// --- HashingEmbeddingBackend ---

namespace {
uint64_t fnv1a64(const std::string& s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}
}  // namespace

HashingEmbeddingBackend::HashingEmbeddingBackend(size_t dimension) : dimension_(dimension) {
    if (dimension_ == 0) throw ValidationError("embedding dimension must be positive");
}

std::vector<std::vector<double>> HashingEmbeddingBackend::embed(
    const std::vector<std::string>& texts) {
    std::vector<std::vector<double>> out;
    out.reserve(texts.size());
    for (const auto& text : texts) {
        std::vector<double> v(dimension_, 0.0);
        for (const auto& tok : tn::word_tokens(text)) {
            v[fnv1a64(tok) % dimension_] += 1.0;
        }
        out.push_back(std::move(v));
    }
    return out;
}

// --- HttpEmbeddingBackend ---

HttpEmbeddingBackend::HttpEmbeddingBackend(std::string url) : url_(std::move(url)) {}

std::vector<std::vector<double>> HttpEmbeddingBackend::embed(
    const std::vector<std::string>& texts) {
    json body{{"texts", texts}};
    json reply = post_json(url_, body);
    if (!reply.is_object() || !reply.contains("vectors") || !reply["vectors"].is_array() ||
        reply["vectors"].size() != texts.size())
        throw BackendProtocolError(url_ + ": expected `vectors` aligned with `texts`");
    std::vector<std::vector<double>> out;
    for (const auto& vec : reply["vectors"]) {
        if (!vec.is_array()) throw BackendProtocolError(url_ + ": vectors must be arrays");
        std::vector<double> v;
        v.reserve(vec.size());
        for (const auto& x : vec) {
            if (!x.is_number()) throw BackendProtocolError(url_ + ": vector entries must be numbers");
            v.push_back(x.get<double>());
        }
        out.push_back(std::move(v));
    }
    return out;
}

// --- RuleNLIBackend ---

namespace {

const std::set<std::string>& stopwords() {
    static const std::set<std::string> words = {
        "a",   "an",  "the", "is",  "are", "was",  "were", "be",   "been", "being",
        "to",  "of",  "in",  "on",  "at",  "for",  "with", "and",  "or",   "it",
        "its", "this","that","as",  "by",  "from", "do",   "does", "did",  "should",
        "can", "may", "will","you", "your",
    };
    return words;
}

const std::set<std::string>& negators() {
    static const std::set<std::string> words = {
        "not", "no", "never", "none", "nor", "cannot", "can't", "don't", "doesn't",
        "didn't", "isn't", "aren't", "wasn't", "weren't", "won't", "shouldn't",
        "couldn't", "wouldn't", "without",
    };
    return words;
}

struct SentenceProfile {
    std::set<std::string> content;
    size_t negation_count = 0;
};

SentenceProfile profile_of(const std::string& text) {
    SentenceProfile p;
    for (const auto& tok : tn::word_tokens(text)) {
        if (negators().count(tok)) {
            ++p.negation_count;
        } else if (!stopwords().count(tok)) {
            p.content.insert(tok);
        }
    }
    return p;
}

double content_jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
    if (a.empty() && b.empty()) return 0.0;
    size_t inter = 0;
    for (const auto& x : a)
        if (b.count(x)) ++inter;
    return static_cast<double>(inter) / static_cast<double>(a.size() + b.size() - inter);
}

}  // namespace

std::vector<NLIVerdict> RuleNLIBackend::classify(const std::vector<NLIPair>& pairs) {
    std::vector<NLIVerdict> out;
    out.reserve(pairs.size());
    for (const auto& pair : pairs) {
        std::string p = tn::basic_normalize(pair.premise);
        std::string h = tn::basic_normalize(pair.hypothesis);

        NLIVerdict v;
        SentenceProfile pp = profile_of(pair.premise);
        SentenceProfile hp = profile_of(pair.hypothesis);
        bool polarity_flip = (pp.negation_count % 2) != (hp.negation_count % 2);
        bool shared_content = content_jaccard(pp.content, hp.content) >= 0.5;

        if (p == h) {
            v = {0.96, 0.03, 0.01};
        } else if (polarity_flip && shared_content) {
            v = {0.02, 0.03, 0.95};
        } else if (!h.empty() && p.find(h) != std::string::npos) {
            v = {0.93, 0.05, 0.02};  // hypothesis contained in premise
        } else {
            v = {0.08, 0.87, 0.05};
        }
        out.push_back(v);
    }
    return out;
}

// --- HttpNLIBackend ---

HttpNLIBackend::HttpNLIBackend(std::string url) : url_(std::move(url)) {}

std::vector<NLIVerdict> HttpNLIBackend::classify(const std::vector<NLIPair>& pairs) {
    json body_pairs = json::array();
    for (const auto& p : pairs)
        body_pairs.push_back({{"premise", p.premise}, {"hypothesis", p.hypothesis}});
    json reply = post_json(url_, json{{"pairs", body_pairs}});
    if (!reply.is_object() || !reply.contains("verdicts") || !reply["verdicts"].is_array() ||
        reply["verdicts"].size() != pairs.size())
        throw BackendProtocolError(url_ + ": expected `verdicts` aligned with `pairs`");
    std::vector<NLIVerdict> out;
    for (const auto& row : reply["verdicts"]) {
        if (!row.is_array() || row.size() != 3)
            throw BackendProtocolError(url_ + ": verdicts must be [entailment,neutral,contradiction]");
        NLIVerdict v{row[0].get<double>(), row[1].get<double>(), row[2].get<double>()};
        v.validate();
        out.push_back(v);
    }
    return out;
}

// --- HttpModelBackend ---

HttpModelBackend::HttpModelBackend(std::string url, std::string auth_header,
                                   std::string auth_env)
    : url_(std::move(url)), auth_header_(std::move(auth_header)), auth_env_(std::move(auth_env)) {}

Completion HttpModelBackend::complete(const std::string& model_id, const std::string& prompt,
                                      const GenerationParams& params) {
    std::string auth_value;
    if (!auth_env_.empty()) {
        const char* v = std::getenv(auth_env_.c_str());
        if (v) auth_value = v;
    }
    json body{{"model", model_id},
              {"prompt", prompt},
              {"params",
               {{"temperature", params.temperature},
                {"max_tokens", params.max_tokens},
                {"top_p", params.top_p},
                {"frequency_penalty", params.frequency_penalty},
                {"presence_penalty", params.presence_penalty}}}};
    json reply = post_json(url_, body, auth_header_, auth_value);
    if (!reply.is_object() || !reply.contains("text"))
        throw BackendProtocolError(url_ + ": completion reply must carry `text`");
    Completion c;
    c.text = reply["text"].get<std::string>();
    if (reply.contains("usage") && reply["usage"].is_object()) {
        c.input_tokens = reply["usage"].value("input_tokens", std::int64_t{0});
        c.output_tokens = reply["usage"].value("output_tokens", std::int64_t{0});
    } else {
        c.input_tokens = approx_token_count(prompt);
        c.output_tokens = approx_token_count(c.text);
    }
    return c;
}

// --- MockModelBackend ---

namespace {

std::string trim_copy(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    auto e = s.find_last_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

std::string prompt_question(const std::string& prompt) {
    auto q = prompt.rfind("Question:");
    if (q == std::string::npos) return "";
    auto a = prompt.find("Answer:", q);
    std::string raw = a == std::string::npos ? prompt.substr(q + 9)
                                             : prompt.substr(q + 9, a - q - 9);
    return trim_copy(raw);
}

std::string prompt_context(const std::string& prompt) {
    auto c = prompt.find("Context:");
    if (c == std::string::npos) return "";
    auto q = prompt.find("Question:", c);
    std::string raw = q == std::string::npos ? prompt.substr(c + 8)
                                             : prompt.substr(c + 8, q - c - 8);
    return trim_copy(raw);
}

}  // namespace

Completion MockModelBackend::complete(const std::string& model_id, const std::string& prompt,
                                      const GenerationParams&) {
    std::string question = prompt_question(prompt);
    std::string context = prompt_context(prompt);

    std::string text;
    if (model_id == "mock-verbatim") {
        if (!context.empty()) {
            text = context;
        } else {
            text = "Regarding \"" + question +
                   "\": this is best discussed with a qualified clinician. General guidance "
                   "emphasizes prevention, healthy habits, and timely medical care.";
        }
    } else if (model_id == "mock-listy") {
        std::string lead;
        if (!context.empty()) {
            auto sentences = tn::split_sentences(context);
            lead = sentences.empty() ? "" : sentences.front() + "\n";
        }
        text = lead +
               "Key points:\n"
               "- talk to a healthcare provider\n"
               "- follow the recommended treatment plan\n"
               "- monitor your symptoms\n"
               "- keep up with prevention measures";
    } else {  // mock-vague and anything unrecognized
        std::string lead;
        if (!context.empty()) {
            auto sentences = tn::split_sentences(context);
            if (!sentences.empty()) lead = sentences.front() + " ";
        }
        text = lead +
               "That is an important health topic. Many people have questions about it, and "
               "reliable information can help you make good decisions. A healthcare "
               "professional can give advice for your specific situation.";
    }

    Completion c;
    c.text = std::move(text);
    c.input_tokens = approx_token_count(prompt);
    c.output_tokens = approx_token_count(c.text);
    return c;
}

std::int64_t approx_token_count(const std::string& text) {
    return static_cast<std::int64_t>(tn::split_ws(text).size());
}

}  // namespace vbscore
