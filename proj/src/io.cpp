#include "vbscore/io.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "vbscore/errors.hpp"
#include "vbscore/textnorm.hpp"

namespace vbscore::io {

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

bool is_blank(const std::string& s) {
    return std::all_of(s.begin(), s.end(),
                       [](unsigned char c) { return std::isspace(c); });
}

json parse_line(const std::string& path, size_t line_no, const std::string& line) {
    json obj = json::parse(line, nullptr, false);
    if (obj.is_discarded() || !obj.is_object())
        throw MalformedLine(path, line_no, "not a JSON object");
    return obj;
}

std::string require_string(const json& obj, const std::string& path, size_t line_no,
                           const char* key) {
    if (!obj.contains(key)) throw MissingField(path, line_no, key);
    const auto& v = obj.at(key);
    if (!v.is_string()) throw MalformedLine(path, line_no, std::string(key) + " must be a string");
    return v.get<std::string>();
}

std::int64_t require_int(const json& obj, const std::string& path, size_t line_no,
                         const char* key) {
    if (!obj.contains(key)) throw MissingField(path, line_no, key);
    const auto& v = obj.at(key);
    if (!v.is_number_integer()) throw MalformedLine(path, line_no, std::string(key) + " must be an integer");
    return v.get<std::int64_t>();
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IOFailure("cannot open " + path + " for reading");
    return in;
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

std::string format_score(double v) {
    // shortest representation that round-trips, same as the json writer
    return json(v).dump();
}

std::string flags_cell(const std::set<FailureFlag>& flags) {
    std::vector<std::string> names;
    names.reserve(flags.size());
    for (auto f : flags) names.push_back(to_string(f));
    std::sort(names.begin(), names.end());
    std::string out;
    for (size_t i = 0; i < names.size(); ++i) {
        if (i) out += ';';
        out += names[i];
    }
    return out;
}

json result_to_json(const VBScoreResult& r) {
    json flags = json::array();
    std::vector<std::string> names;
    for (auto f : r.failure_flags) names.push_back(to_string(f));
    std::sort(names.begin(), names.end());
    for (const auto& n : names) flags.push_back(n);
    return json{
        {"sample_id", r.sample_id},
        {"model_id", r.model_id},
        {"prompt_config", to_string(r.prompt_config)},
        {"components",
         {{"entity_f1", r.components.entity_f1},
          {"semantic_similarity", r.components.semantic_similarity},
          {"factual_consistency", r.components.factual_consistency},
          {"structured_overlap", r.components.structured_overlap}}},
        {"vb_score", r.vb_score},
        {"weight_scheme", r.weight_scheme_name},
        {"failure_flags", flags},
    };
}

}  // namespace

std::vector<QARecord> load_dataset(const std::string& path) {
    auto in = open_input(path);
    std::vector<QARecord> records;
    std::unordered_set<std::string> seen_ids;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_blank(line)) continue;
        json obj = parse_line(path, line_no, line);
        QARecord rec;
        rec.id = require_string(obj, path, line_no, "id");
        rec.source = source_from_string(require_string(obj, path, line_no, "source"));
        rec.topic = require_string(obj, path, line_no, "topic");
        rec.disease_category =
            disease_category_from_string(require_string(obj, path, line_no, "disease_category"));
        rec.question_type =
            question_type_from_string(require_string(obj, path, line_no, "question_type"));
        rec.question = require_string(obj, path, line_no, "question");
        rec.reference_answer = require_string(obj, path, line_no, "reference_answer");
        if (rec.id.empty())
            throw MalformedLine(path, line_no, "id must be nonempty");
        if (is_blank(rec.question))
            throw MalformedLine(path, line_no, "question must be nonempty");
        if (is_blank(rec.reference_answer))
            throw MalformedLine(path, line_no, "reference_answer must be nonempty");
        if (!seen_ids.insert(rec.id).second) throw DuplicateId(path, line_no, rec.id);
        records.push_back(std::move(rec));
    }
    return records;
}

void save_dataset(const std::vector<QARecord>& records, const std::string& path) {
    std::string out;
    for (const auto& rec : records) {
        json obj{
            {"id", rec.id},
            {"source", to_string(rec.source)},
            {"topic", rec.topic},
            {"disease_category", to_string(rec.disease_category)},
            {"question_type", to_string(rec.question_type)},
            {"question", rec.question},
            {"reference_answer", rec.reference_answer},
        };
        out += obj.dump();
        out += '\n';
    }
    write_file_atomic(path, out);
}

std::vector<ModelResponse> load_responses(const std::string& path,
                                          const std::vector<QARecord>& dataset) {
    std::unordered_set<std::string> known_ids;
    for (const auto& rec : dataset) known_ids.insert(rec.id);

    auto in = open_input(path);
    std::vector<ModelResponse> responses;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_blank(line)) continue;
        json obj = parse_line(path, line_no, line);
        ModelResponse r;
        r.sample_id = require_string(obj, path, line_no, "sample_id");
        r.model_id = require_string(obj, path, line_no, "model_id");
        r.prompt_config =
            prompt_config_from_string(require_string(obj, path, line_no, "prompt_config"));
        r.text = require_string(obj, path, line_no, "text");
        r.input_tokens = require_int(obj, path, line_no, "input_tokens");
        r.output_tokens = require_int(obj, path, line_no, "output_tokens");
        r.created_at = require_string(obj, path, line_no, "created_at");
        if (!known_ids.count(r.sample_id)) throw UnknownSampleId(path, line_no, r.sample_id);
        if (r.input_tokens < 0 || r.output_tokens < 0)
            throw MalformedLine(path, line_no, "token counts must be nonnegative");
        responses.push_back(std::move(r));
    }
    return responses;
}

void save_responses(const std::vector<ModelResponse>& responses, const std::string& path) {
    std::string out;
    for (const auto& r : responses) {
        json obj{
            {"sample_id", r.sample_id},
            {"model_id", r.model_id},
            {"prompt_config", to_string(r.prompt_config)},
            {"text", r.text},
            {"input_tokens", r.input_tokens},
            {"output_tokens", r.output_tokens},
            {"created_at", r.created_at},
        };
        out += obj.dump();
        out += '\n';
    }
    write_file_atomic(path, out);
}

void write_results(const std::vector<VBScoreResult>& results, const std::string& path,
                   ResultFormat format, const std::vector<WeightScheme>& extra_schemes,
                   const std::vector<PartialResult>& partials) {
    for (const auto& r : results) {
        r.components.validate();
        WeightScheme scheme = resolve_scheme(r.weight_scheme_name, extra_schemes);
        double recomposed = compose_vb(r.components, scheme);
        if (std::abs(recomposed - r.vb_score) > 1e-12)
            throw ValidationError("result for sample `" + r.sample_id +
                                  "` violates the vb_score/weights invariant (stored " +
                                  format_score(r.vb_score) + ", recomposed " +
                                  format_score(recomposed) + ")");
    }

    if (format == ResultFormat::Json) {
        json arr = json::array();
        for (const auto& r : results) arr.push_back(result_to_json(r));
        write_file_atomic(path, arr.dump(2) + "\n");
        return;
    }

    std::string out =
        "sample_id,model_id,prompt_config,entity_f1,semantic_similarity,"
        "factual_consistency,structured_overlap,vb_score,weight_scheme,failure_flags\n";
    for (const auto& r : results) {
        out += csv_escape(r.sample_id) + ',' + csv_escape(r.model_id) + ',' +
               to_string(r.prompt_config) + ',' + format_score(r.components.entity_f1) +
               ',' + format_score(r.components.semantic_similarity) + ',' +
               format_score(r.components.factual_consistency) + ',' +
               format_score(r.components.structured_overlap) + ',' +
               format_score(r.vb_score) + ',' + csv_escape(r.weight_scheme_name) + ',' +
               flags_cell(r.failure_flags) + '\n';
    }
    for (const auto& p : partials) {
        auto cell = [](const std::optional<double>& v) {
            return v ? format_score(*v) : std::string();
        };
        out += csv_escape(p.sample_id) + ',' + csv_escape(p.model_id) + ',' +
               to_string(p.prompt_config) + ',' + cell(p.scores.entity_f1) + ',' +
               cell(p.scores.semantic_similarity) + ',' +
               cell(p.scores.factual_consistency) + ',' +
               cell(p.scores.structured_overlap) + ",,,\n";
    }
    write_file_atomic(path, out);
}

std::vector<VBScoreResult> read_results(const std::string& path) {
    std::string content = read_file(path);
    json arr = json::parse(content, nullptr, false);
    if (arr.is_discarded() || !arr.is_array())
        throw MalformedLine(path, 1, "expected a JSON array of results");
    std::vector<VBScoreResult> results;
    for (const auto& obj : arr) {
        VBScoreResult r;
        r.sample_id = obj.at("sample_id").get<std::string>();
        r.model_id = obj.at("model_id").get<std::string>();
        r.prompt_config = prompt_config_from_string(obj.at("prompt_config").get<std::string>());
        const auto& c = obj.at("components");
        r.components.entity_f1 = c.at("entity_f1").get<double>();
        r.components.semantic_similarity = c.at("semantic_similarity").get<double>();
        r.components.factual_consistency = c.at("factual_consistency").get<double>();
        r.components.structured_overlap = c.at("structured_overlap").get<double>();
        r.vb_score = obj.at("vb_score").get<double>();
        r.weight_scheme_name = obj.at("weight_scheme").get<std::string>();
        for (const auto& f : obj.at("failure_flags"))
            r.failure_flags.insert(failure_flag_from_string(f.get<std::string>()));
        results.push_back(std::move(r));
    }
    return results;
}

void write_file_atomic(const std::string& path, const std::string& content) {
    fs::path target(path);
    fs::path dir = target.parent_path();
    if (!dir.empty()) {
        std::error_code ec;
        fs::create_directories(dir, ec);
    }
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IOFailure("cannot open " + tmp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw IOFailure("short write to " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) throw IOFailure("cannot rename " + tmp.string() + " to " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IOFailure("cannot open " + path + " for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace vbscore::io
