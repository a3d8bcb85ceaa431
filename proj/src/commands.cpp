#include "vbscore/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "vbscore/entity.hpp"
#include "vbscore/errors.hpp"
#include "vbscore/factual.hpp"
#include "vbscore/harness.hpp"
#include "vbscore/io.hpp"
#include "vbscore/semantic.hpp"
#include "vbscore/stats.hpp"
#include "vbscore/structure.hpp"
#include "vbscore/textnorm.hpp"

namespace vbscore::cli {

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string out_path(const RunConfig& config, const std::string& name) {
    return (fs::path(config.out_dir) / name).string();
}

std::string fmt(double v, int precision = 4) {
    std::ostringstream ss;
    ss << std::fixed << std::setprecision(precision) << v;
    return ss.str();
}

WeightScheme active_scheme(const RunConfig& config) {
    return resolve_scheme(config.scheme_name, config.extra_schemes);
}

const QARecord* find_record(const std::vector<QARecord>& dataset, const std::string& id) {
    for (const auto& rec : dataset)
        if (rec.id == id) return &rec;
    return nullptr;
}

// One response scored against its record. Backend failures leave the
// component absent.
void score_one(const QARecord& record, const ModelResponse& response,
               const RunConfig& config, ScoringBackends& backends,
               const AbbreviationTable& table, const WeightScheme& scheme,
               std::optional<VBScoreResult>& result_slot,
               std::optional<PartialResult>& partial_slot) {
    PartialScores scores;
    std::vector<std::string> failed;
    std::string first_error;
    auto record_failure = [&](const char* component, const std::exception& e) {
        failed.push_back(component);
        if (first_error.empty()) first_error = e.what();
    };

    bool blank = textnorm::basic_normalize(response.text).empty();
    if (blank) {
        // an empty generation is a model failure, not a backend failure:
        // every dimension bottoms out
        scores.entity_f1 = 0.0;
        scores.semantic_similarity = 0.0;
        scores.factual_consistency = 0.0;
        scores.structured_overlap = 0.0;
    } else {
        try {
            EntitySet ref = extract_entities(record.reference_answer, *backends.entity, table);
            EntitySet gen = extract_entities(response.text, *backends.entity, table);
            MatchReport report = match_entities(ref, gen, table, config.min_token_len);
            scores.entity_f1 = entity_prf(report).f1;
        } catch (const Error& e) {
            record_failure("entity", e);
        }
        try {
            scores.semantic_similarity = semantic_similarity(
                record.reference_answer, response.text, *backends.embedding);
        } catch (const ZeroVector&) {
            scores.semantic_similarity = 0.0;  // degenerate text, not a backend fault
        } catch (const Error& e) {
            record_failure("semantic", e);
        }
        try {
            scores.factual_consistency =
                factual_consistency(record.reference_answer, response.text, *backends.nli,
                                    config.nli_mapping, config.nli_mode);
        } catch (const Error& e) {
            record_failure("factual", e);
        }
        scores.structured_overlap =
            structured_overlap(extract_enumerations(record.reference_answer),
                               extract_enumerations(response.text), table,
                               config.min_token_len);
    }

    if (failed.empty()) {
        VBScoreResult result;
        result.sample_id = response.sample_id;
        result.model_id = response.model_id;
        result.prompt_config = response.prompt_config;
        result.components = {*scores.entity_f1, *scores.semantic_similarity,
                             *scores.factual_consistency, *scores.structured_overlap};
        result.vb_score = compose_vb(result.components, scheme);
        result.weight_scheme_name = scheme.name;
        result.failure_flags =
            classify_failures(result.components, result.vb_score, config.thresholds);
        result_slot = std::move(result);
    } else {
        PartialResult partial;
        partial.sample_id = response.sample_id;
        partial.model_id = response.model_id;
        partial.prompt_config = response.prompt_config;
        partial.scores = scores;
        std::string joined;
        for (size_t i = 0; i < failed.size(); ++i) {
            if (i) joined += ",";
            joined += failed[i];
        }
        partial.failed_component = joined;
        partial.error = first_error;
        partial_slot = std::move(partial);
    }
}

template <typename Fn>
void parallel_for(size_t count, int parallelism, Fn&& fn) {
    int workers = std::max(1, parallelism);
    if (workers == 1 || count <= 1) {
        for (size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> threads;
    threads.reserve(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        threads.emplace_back([&]() {
            for (;;) {
                size_t i = next.fetch_add(1);
                if (i >= count) return;
                fn(i);
            }
        });
    }
    for (auto& t : threads) t.join();
}

void sort_results(std::vector<VBScoreResult>& results) {
    std::sort(results.begin(), results.end(),
              [](const VBScoreResult& a, const VBScoreResult& b) {
                  if (a.model_id != b.model_id) return a.model_id < b.model_id;
                  if (a.prompt_config != b.prompt_config)
                      return to_string(a.prompt_config) < to_string(b.prompt_config);
                  return a.sample_id < b.sample_id;
              });
}

void sort_partials(std::vector<PartialResult>& partials) {
    std::sort(partials.begin(), partials.end(),
              [](const PartialResult& a, const PartialResult& b) {
                  if (a.model_id != b.model_id) return a.model_id < b.model_id;
                  if (a.prompt_config != b.prompt_config)
                      return to_string(a.prompt_config) < to_string(b.prompt_config);
                  return a.sample_id < b.sample_id;
              });
}

std::map<std::string, std::vector<const VBScoreResult*>> group_by_model(
    const std::vector<VBScoreResult>& results) {
    std::map<std::string, std::vector<const VBScoreResult*>> by_model;
    for (const auto& r : results) by_model[r.model_id].push_back(&r);
    return by_model;
}

ComponentScores component_means(const std::vector<const VBScoreResult*>& results) {
    ComponentScores mean;
    for (const auto* r : results) {
        mean.entity_f1 += r->components.entity_f1;
        mean.semantic_similarity += r->components.semantic_similarity;
        mean.factual_consistency += r->components.factual_consistency;
        mean.structured_overlap += r->components.structured_overlap;
    }
    double n = static_cast<double>(results.size());
    mean.entity_f1 /= n;
    mean.semantic_similarity /= n;
    mean.factual_consistency /= n;
    mean.structured_overlap /= n;
    return mean;
}

std::vector<double> collect(const std::vector<const VBScoreResult*>& results,
                            double ComponentScores::*member) {
    std::vector<double> out;
    out.reserve(results.size());
    for (const auto* r : results) out.push_back(r->components.*member);
    return out;
}

std::vector<double> collect_vb(const std::vector<const VBScoreResult*>& results) {
    std::vector<double> out;
    out.reserve(results.size());
    for (const auto* r : results) out.push_back(r->vb_score);
    return out;
}

void print_component_summary(std::ostream& out, const std::string& model,
                             const std::vector<const VBScoreResult*>& results) {
    struct Row {
        const char* name;
        double ComponentScores::*member;
    };
    static const Row rows[] = {
        {"entity_f1", &ComponentScores::entity_f1},
        {"semantic_similarity", &ComponentScores::semantic_similarity},
        {"factual_consistency", &ComponentScores::factual_consistency},
        {"structured_overlap", &ComponentScores::structured_overlap},
    };
    out << "model " << model << " (" << results.size() << " samples)\n";
    for (const auto& row : rows) {
        auto s = stats::describe(collect(results, row.member));
        out << "  " << std::left << std::setw(22) << row.name << " mean " << fmt(s.mean)
            << "  sd " << fmt(s.sd) << "  median " << fmt(s.median) << "  min "
            << fmt(s.min) << "  max " << fmt(s.max) << "\n";
    }
    auto vb = stats::describe(collect_vb(results));
    out << "  " << std::left << std::setw(22) << "vb_score" << " mean " << fmt(vb.mean)
        << "  sd " << fmt(vb.sd) << "  median " << fmt(vb.median) << "  min "
        << fmt(vb.min) << "  max " << fmt(vb.max) << "\n";
}

json test_result_json(const stats::TestResult& t) {
    json obj{{"statistic", std::isfinite(t.statistic) ? json(t.statistic) : json("inf")},
             {"p_value", t.p_value},
             {"df", t.df1},
             {"significant", t.significant}};
    if (t.df2 > 0) obj["df2"] = t.df2;
    if (t.alpha_adjusted) obj["alpha_adjusted"] = *t.alpha_adjusted;
    return obj;
}

}  // namespace

EvaluationOutput score_all(const std::vector<QARecord>& dataset,
                           const std::vector<ModelResponse>& responses,
                           const RunConfig& config, ScoringBackends& backends) {
    AbbreviationTable table = load_abbreviations(config);
    WeightScheme scheme = active_scheme(config);
    scheme.validate();
    config.thresholds.validate();

    std::vector<std::optional<VBScoreResult>> result_slots(responses.size());
    std::vector<std::optional<PartialResult>> partial_slots(responses.size());

    parallel_for(responses.size(), config.parallel, [&](size_t i) {
        const ModelResponse& response = responses[i];
        const QARecord* record = find_record(dataset, response.sample_id);
        if (!record) {
            PartialResult p;
            p.sample_id = response.sample_id;
            p.model_id = response.model_id;
            p.prompt_config = response.prompt_config;
            p.failed_component = "dataset";
            p.error = "sample_id not present in dataset";
            partial_slots[i] = std::move(p);
            return;
        }
        score_one(*record, response, config, backends, table, scheme, result_slots[i],
                  partial_slots[i]);
    });

    EvaluationOutput out;
    for (auto& slot : result_slots)
        if (slot) out.results.push_back(std::move(*slot));
    for (auto& slot : partial_slots)
        if (slot) out.partials.push_back(std::move(*slot));
    sort_results(out.results);
    sort_partials(out.partials);
    return out;
}

int cmd_evaluate(const RunConfig& config, std::ostream& out) {
    if (config.dataset_path.empty()) throw ValidationError("evaluate needs --dataset");
    if (config.responses_paths.empty()) throw ValidationError("evaluate needs --responses");

    auto dataset = io::load_dataset(config.dataset_path);
    std::vector<ModelResponse> responses;
    for (const auto& path : config.responses_paths) {
        auto batch = io::load_responses(path, dataset);
        responses.insert(responses.end(), batch.begin(), batch.end());
    }
    if (responses.empty()) throw ValidationError("no responses to evaluate");

    ScoringBackends backends = make_scoring_backends(config);
    EvaluationOutput evaluation = score_all(dataset, responses, config, backends);

    io::write_results(evaluation.results, out_path(config, "results.csv"),
                      io::ResultFormat::Rows, config.extra_schemes, evaluation.partials);
    io::write_results(evaluation.results, out_path(config, "results.json"),
                      io::ResultFormat::Json, config.extra_schemes);

    if (!evaluation.partials.empty()) {
        json manifest = json::array();
        for (const auto& p : evaluation.partials) {
            manifest.push_back({{"sample_id", p.sample_id},
                                {"model_id", p.model_id},
                                {"prompt_config", to_string(p.prompt_config)},
                                {"failed_component", p.failed_component},
                                {"error", p.error}});
        }
        io::write_file_atomic(out_path(config, "failures.json"), manifest.dump(2) + "\n");
        out << evaluation.partials.size() << " of " << responses.size()
            << " samples degraded; see failures.json\n";
    }

    for (const auto& [model, rs] : group_by_model(evaluation.results))
        print_component_summary(out, model, rs);
    out << "wrote " << evaluation.results.size() << " results to " << config.out_dir
        << "\n";

    if (evaluation.results.empty() && !evaluation.partials.empty()) return kBackend;
    if (!evaluation.partials.empty()) return kPartial;
    return kOk;
}

namespace {

std::vector<VBScoreResult> load_results_input(const RunConfig& config) {
    std::string path = config.results_path.empty() ? out_path(config, "results.json")
                                                   : config.results_path;
    return io::read_results(path);
}

void require_matching_sample_sets(
    const std::map<std::string, std::vector<const VBScoreResult*>>& by_model) {
    std::optional<std::set<std::string>> expected;
    std::string first_model;
    for (const auto& [model, results] : by_model) {
        std::set<std::string> keys;
        for (const auto* r : results)
            keys.insert(r->sample_id + "/" + to_string(r->prompt_config));
        if (!expected) {
            expected = std::move(keys);
            first_model = model;
        } else if (keys != *expected) {
            throw MismatchedSampleSets(model + " vs " + first_model);
        }
    }
}

}  // namespace

int cmd_compare(const RunConfig& config, std::ostream& out) {
    auto results = load_results_input(config);
    if (results.empty()) {
        out << "no results to compare\n";
        return kValidation;
    }
    auto by_model = group_by_model(results);
    if (by_model.size() < 2)
        throw ValidationError("compare needs results for at least two models");
    require_matching_sample_sets(by_model);

    json report;
    out << "== model comparison ==\n";

    // ANOVA across models on VB-Score
    std::vector<std::vector<double>> groups;
    std::vector<std::string> model_names;
    for (const auto& [model, rs] : by_model) {
        model_names.push_back(model);
        groups.push_back(collect_vb(rs));
    }

    // mean-score ordering up front
    {
        std::vector<std::pair<std::string, double>> order;
        for (size_t i = 0; i < model_names.size(); ++i)
            order.emplace_back(model_names[i], stats::describe(groups[i]).mean);
        std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
            if (a.second != b.second) return a.second > b.second;
            return a.first < b.first;
        });
        report["ranking"] = json::array();
        out << "mean VB-Score ranking: ";
        for (size_t i = 0; i < order.size(); ++i) {
            report["ranking"].push_back(
                {{"model", order[i].first}, {"mean_vb", order[i].second}});
            if (i) out << (order[i].second == order[i - 1].second ? " = " : " > ");
            out << order[i].first << " (" << fmt(order[i].second) << ")";
        }
        out << "\n";
    }
    auto anova = stats::one_way_anova(groups, config.alpha);
    report["anova"] = test_result_json(anova);
    out << "one-way ANOVA: F(" << anova.df1 << "," << anova.df2 << ") = "
        << fmt(anova.statistic) << ", p = " << fmt(anova.p_value, 6)
        << (anova.significant ? " (significant)" : "") << "\n";

    // pairwise t-tests with Bonferroni over the number of pairs
    int num_pairs = static_cast<int>(by_model.size() * (by_model.size() - 1) / 2);
    report["pairwise"] = json::array();
    for (size_t i = 0; i < model_names.size(); ++i) {
        for (size_t j = i + 1; j < model_names.size(); ++j) {
            auto t = stats::two_sample_t(groups[i], groups[j], config.alpha, num_pairs,
                                         config.welch);
            double d;
            try {
                d = stats::cohens_d(groups[i], groups[j]);
            } catch (const ZeroPooledSD&) {
                d = 0.0;
            }
            json pair{{"a", model_names[i]},
                      {"b", model_names[j]},
                      {"t", test_result_json(t)},
                      {"cohens_d", d},
                      {"effect_band", stats::effect_size_band(d)}};
            report["pairwise"].push_back(pair);
            out << model_names[i] << " vs " << model_names[j] << ": t = "
                << fmt(t.statistic) << ", p = " << fmt(t.p_value, 6) << " (alpha/"
                << num_pairs << " = " << fmt(*t.alpha_adjusted, 6) << ")"
                << (t.significant ? " significant" : "") << ", d = " << fmt(d) << " ("
                << stats::effect_size_band(d) << ")\n";
        }
    }

    // semantic-entity gap, per model and pooled
    report["gap"] = json::object();
    std::vector<double> all_semantic, all_entity;
    for (size_t i = 0; i < model_names.size(); ++i) {
        const auto& rs = by_model[model_names[i]];
        auto semantic = collect(rs, &ComponentScores::semantic_similarity);
        auto entity = collect(rs, &ComponentScores::entity_f1);
        all_semantic.insert(all_semantic.end(), semantic.begin(), semantic.end());
        all_entity.insert(all_entity.end(), entity.begin(), entity.end());
        auto gap = stats::gap_analysis(semantic, entity);
        json g{{"semantic_mean", gap.semantic_mean},
               {"entity_mean", gap.entity_mean},
               {"gap_pp", gap.gap_pp}};
        if (gap.ratio) g["ratio"] = *gap.ratio;
        report["gap"][model_names[i]] = g;
        out << model_names[i] << " semantic-entity gap: " << fmt(gap.gap_pp, 1) << " pp";
        if (gap.ratio) out << " (" << fmt(*gap.ratio, 1) << "x)";
        out << "\n";
    }
    auto pooled_gap = stats::gap_analysis(all_semantic, all_entity);
    json pg{{"semantic_mean", pooled_gap.semantic_mean},
            {"entity_mean", pooled_gap.entity_mean},
            {"gap_pp", pooled_gap.gap_pp}};
    if (pooled_gap.ratio) pg["ratio"] = *pooled_gap.ratio;
    report["gap"]["_pooled"] = pg;

    // failure overlap per model
    report["failure_overlap"] = json::object();
    for (const auto& [model, rs] : by_model) {
        std::vector<VBScoreResult> copy;
        copy.reserve(rs.size());
        for (const auto* r : rs) copy.push_back(*r);
        auto overlap = stats::failure_overlap(copy, config.thresholds, config.semantic_high);
        report["failure_overlap"][model] = {
            {"high_semantic_low_entity", overlap.high_semantic_low_entity},
            {"high_semantic_contradiction", overlap.high_semantic_contradiction}};
        out << model << " overlap: high-sim/low-entity "
            << fmt(100 * overlap.high_semantic_low_entity, 1) << "%, high-sim/contradiction "
            << fmt(100 * overlap.high_semantic_contradiction, 1) << "%\n";
    }

    // stratified comparisons
    if (!config.dataset_path.empty()) {
        auto dataset = io::load_dataset(config.dataset_path);
        report["strata"] = json::object();
        for (auto key : {stats::StratumKey::Source, stats::StratumKey::QuestionType,
                         stats::StratumKey::DiseaseCategory}) {
            try {
                auto cmp = stats::stratified_compare(results, dataset, key, config.alpha);
                json strata{{"a", cmp.stratum_a},
                            {"b", cmp.stratum_b},
                            {"relative_gap_percent", cmp.relative_gap},
                            {"cohens_d", cmp.d},
                            {"effect_band", stats::effect_size_band(cmp.d)},
                            {"t", test_result_json(cmp.test)},
                            {"per_stratum", json::object()}};
                for (const auto& [name, s] : cmp.per_stratum) {
                    strata["per_stratum"][name] = {{"n", s.n},   {"mean", s.mean},
                                                   {"sd", s.sd}, {"median", s.median},
                                                   {"min", s.min}, {"max", s.max}};
                }
                report["strata"][stats::to_string(key)] = strata;
                out << "stratum " << stats::to_string(key) << ": " << cmp.stratum_a
                    << " vs " << cmp.stratum_b << " gap " << fmt(cmp.relative_gap, 1)
                    << "% (p = " << fmt(cmp.test.p_value, 4) << ", d = " << fmt(cmp.d, 2)
                    << ")\n";
            } catch (const SingleStratum&) {
                report["strata"][stats::to_string(key)] = "single stratum";
            }
        }
    }

    io::write_file_atomic(out_path(config, "comparison.json"), report.dump(2) + "\n");
    out << "wrote " << out_path(config, "comparison.json") << "\n";
    return kOk;
}

int cmd_sensitivity(const RunConfig& config, std::ostream& out) {
    auto results = load_results_input(config);
    if (results.empty()) {
        out << "no results for sensitivity analysis\n";
        return kValidation;
    }
    auto by_model = group_by_model(results);

    std::map<std::string, ComponentScores> means;
    for (const auto& [model, rs] : by_model) means[model] = component_means(rs);

    std::vector<WeightScheme> schemes;
    if (config.sensitivity_schemes.empty()) {
        schemes = preset_schemes();
        for (const auto& s : config.extra_schemes) schemes.push_back(s);
    } else {
        for (const auto& name : config.sensitivity_schemes)
            schemes.push_back(resolve_scheme(name, config.extra_schemes));
    }

    json report{{"matrix", json::array()}, {"schemes", json::array()}};
    out << "== weight sensitivity ==\n";

    if (means.size() < 2) {
        // a single model is trivially stable
        for (const auto& scheme : schemes) {
            json row{{"scheme", scheme.name}};
            for (const auto& [model, mc] : means) row[model] = compose_vb(mc, scheme);
            report["matrix"].push_back(row);
        }
        report["stable"] = true;
        report["verdict"] = "stable";
        out << "single model: trivially stable\n";
    } else {
        auto rankings = rank_models(means, schemes);
        bool stable = rankings_stable(rankings);
        for (const auto& ranking : rankings) {
            json row{{"scheme", ranking.scheme_name}};
            json order = json::array();
            for (const auto& entry : ranking.entries) {
                row[entry.model_id] = entry.score;
                order.push_back(entry.model_id);
            }
            row["order"] = order;
            row["ties"] = ranking.has_ties;
            report["matrix"].push_back(row);
            out << std::left << std::setw(10) << ranking.scheme_name << " ";
            for (size_t i = 0; i < ranking.entries.size(); ++i) {
                if (i) out << (ranking.entries[i].tied_with_previous ? " = " : " > ");
                out << ranking.entries[i].model_id << " (" << fmt(ranking.entries[i].score)
                    << ")";
            }
            out << "\n";
        }
        report["stable"] = stable;
        report["verdict"] = stable ? "stable" : "unstable";
        if (!stable) {
            // identify which schemes disagree with the first
            json flips = json::array();
            for (size_t i = 1; i < rankings.size(); ++i) {
                std::vector<std::string> a, b;
                for (const auto& e : rankings.front().entries) a.push_back(e.model_id);
                for (const auto& e : rankings[i].entries) b.push_back(e.model_id);
                if (a != b)
                    flips.push_back({{"scheme", rankings[i].scheme_name},
                                     {"baseline_scheme", rankings.front().scheme_name}});
            }
            report["flips"] = flips;
        }
        out << "verdict: " << (stable ? "stable" : "unstable") << "\n";
    }

    for (const auto& s : schemes)
        report["schemes"].push_back({{"name", s.name},
                                     {"entity", s.w_entity},
                                     {"semantic", s.w_semantic},
                                     {"factual", s.w_factual},
                                     {"structured", s.w_structured}});

    io::write_file_atomic(out_path(config, "sensitivity.json"), report.dump(2) + "\n");
    out << "wrote " << out_path(config, "sensitivity.json") << "\n";
    return kOk;
}

int cmd_sweep(const RunConfig& config, std::ostream& out) {
    if (config.dataset_path.empty()) throw ValidationError("sweep needs --dataset");
    auto dataset = io::load_dataset(config.dataset_path);
    if (dataset.empty()) throw ValidationError("dataset is empty");

    std::vector<std::string> models = config.sweep_models;
    if (models.empty()) {
        if (!config.reference_backends && config.backend_urls.count("model") == 0)
            throw ValidationError("sweep needs configured models or --reference-backends");
        models = {"mock-verbatim", "mock-listy", "mock-vague"};
    }

    PromptTemplates templates = load_templates(config);
    GenerationParams params;  // temperature 0, max_tokens 300, top_p 1
    auto backend = make_model_backend(config);
    ResponseCache cache(out_path(config, "cache.jsonl"));
    // reruns with reference backends stay reproducible
    ClockFn clock = config.reference_backends
                        ? ClockFn([]() { return std::string("2025-01-01T00:00:00Z"); })
                        : ClockFn(utc_now_iso8601);

    const PromptConfigKind kinds[] = {
        PromptConfigKind::ZeroShotBaseline, PromptConfigKind::ZeroShotStrict,
        PromptConfigKind::RAGContext, PromptConfigKind::FewShot};

    struct Cell {
        std::string model;
        const QARecord* record;
        PromptConfigKind kind;
    };
    std::vector<Cell> cells;
    for (const auto& model : models)
        for (const auto& rec : dataset)
            for (auto kind : kinds) cells.push_back({model, &rec, kind});

    std::vector<ModelResponse> responses(cells.size());
    std::atomic<size_t> cache_hits{0};
    std::atomic<int> backend_failures{0};
    parallel_for(cells.size(), config.parallel, [&](size_t i) {
        const Cell& cell = cells[i];
        try {
            PromptConfig pc = make_prompt_config(cell.kind, templates, *cell.record);
            std::string prompt = render_prompt(pc, *cell.record, config.few_shot_count);
            auto outcome = generate(*backend, cell.model, cell.record->id, cell.kind,
                                    prompt, params, cache, config.retry, clock);
            if (outcome.from_cache) cache_hits.fetch_add(1);
            responses[i] = std::move(outcome.response);
        } catch (const Error&) {
            backend_failures.fetch_add(1);
        }
    });
    if (backend_failures.load() > 0) {
        out << backend_failures.load()
            << " cells failed; rerun to resume from cache (completed cells are skipped)\n";
        return kBackend;
    }
    out << cells.size() << " cells generated (" << cache_hits.load() << " cache hits)\n";
    io::save_responses(responses, out_path(config, "responses.jsonl"));

    // score the full grid
    ScoringBackends scoring = make_scoring_backends(config);
    EvaluationOutput evaluation = score_all(dataset, responses, config, scoring);
    io::write_results(evaluation.results, out_path(config, "sweep_results.csv"),
                      io::ResultFormat::Rows, config.extra_schemes, evaluation.partials);
    io::write_results(evaluation.results, out_path(config, "sweep_results.json"),
                      io::ResultFormat::Json, config.extra_schemes);

    // per-config deltas vs the zero-shot baseline, paired by sample
    json sensitivity{{"models", json::object()}};
    const PromptConfigKind non_baseline[] = {PromptConfigKind::ZeroShotStrict,
                                             PromptConfigKind::RAGContext,
                                             PromptConfigKind::FewShot};
    int num_comparisons = 3;
    for (const auto& model : models) {
        std::map<PromptConfigKind, std::map<std::string, double>> vb_by_kind;
        for (const auto& r : evaluation.results) {
            if (r.model_id == model) vb_by_kind[r.prompt_config][r.sample_id] = r.vb_score;
        }
        const auto& baseline = vb_by_kind[PromptConfigKind::ZeroShotBaseline];
        json model_report = json::object();
        model_report["baseline_mean"] = [&] {
            std::vector<double> v;
            for (const auto& [id, score] : baseline) v.push_back(score);
            return v.empty() ? 0.0 : stats::describe(v).mean;
        }();
        for (auto kind : non_baseline) {
            const auto& scores = vb_by_kind[kind];
            std::vector<double> a, b;  // config, baseline; aligned by sample id
            for (const auto& [id, score] : scores) {
                auto it = baseline.find(id);
                if (it != baseline.end()) {
                    a.push_back(score);
                    b.push_back(it->second);
                }
            }
            json entry;
            if (a.size() >= 2) {
                double mean_a = stats::describe(a).mean;
                double mean_b = stats::describe(b).mean;
                entry["mean"] = mean_a;
                entry["delta"] = mean_a - mean_b;
                entry["delta_percent"] = stats::relative_gap_percent(mean_a, mean_b);
                try {
                    auto t = stats::paired_t(a, b, config.alpha, num_comparisons);
                    entry["paired_t"] = test_result_json(t);
                } catch (const DegenerateDifferences&) {
                    entry["paired_t"] = "degenerate (constant nonzero shift)";
                }
            } else {
                entry["note"] = "not enough paired samples";
            }
            model_report[to_string(kind)] = entry;
            if (entry.contains("delta"))
                out << model << " " << to_string(kind) << ": delta "
                    << fmt(entry["delta"].get<double>()) << " ("
                    << fmt(entry["delta_percent"].get<double>(), 1) << "%)\n";
        }
        sensitivity["models"][model] = model_report;
    }
    sensitivity["cells"] = cells.size();
    sensitivity["cache_hits"] = cache_hits.load();
    sensitivity["bonferroni_comparisons"] = num_comparisons;
    io::write_file_atomic(out_path(config, "prompt_sensitivity.json"),
                          sensitivity.dump(2) + "\n");
    out << "wrote " << out_path(config, "prompt_sensitivity.json") << "\n";
    if (!evaluation.partials.empty()) return kPartial;
    return kOk;
}

int cmd_report(const RunConfig& config, std::ostream& out) {
    auto results = load_results_input(config);
    if (results.empty()) {
        out << "no results: nothing to report\n";
        return kValidation;
    }
    auto by_model = group_by_model(results);
    std::ostringstream report;
    report << "VB-Score evaluation report\n";
    report << "==========================\n\n";
    report << "results: " << results.size() << " samples across " << by_model.size()
           << " model(s)\n\n";

    // component breakdown + chart data
    std::string breakdown_csv = "model,component,mean,sd\n";
    struct Row {
        const char* name;
        double ComponentScores::*member;
    };
    static const Row rows[] = {
        {"entity_f1", &ComponentScores::entity_f1},
        {"semantic_similarity", &ComponentScores::semantic_similarity},
        {"factual_consistency", &ComponentScores::factual_consistency},
        {"structured_overlap", &ComponentScores::structured_overlap},
    };
    report << "component breakdown\n-------------------\n";
    for (const auto& [model, rs] : by_model) {
        report << model << " (" << rs.size() << " samples)\n";
        for (const auto& row : rows) {
            auto s = stats::describe(collect(rs, row.member));
            report << "  " << std::left << std::setw(22) << row.name << " mean "
                   << fmt(s.mean) << " sd " << fmt(s.sd) << "\n";
            breakdown_csv += model;
            breakdown_csv += ',';
            breakdown_csv += row.name;
            breakdown_csv += ',' + fmt(s.mean, 6) + ',' + fmt(s.sd, 6) + '\n';
        }
        auto vb = stats::describe(collect_vb(rs));
        report << "  " << std::left << std::setw(22) << "vb_score" << " mean "
               << fmt(vb.mean) << " sd " << fmt(vb.sd) << "\n";
    }
    io::write_file_atomic(out_path(config, "chart_component_breakdown.csv"), breakdown_csv);

    // failure rates
    report << "\nfailure rates (strictly below threshold)\n";
    report << "----------------------------------------\n";
    for (const auto& [model, rs] : by_model) {
        size_t n = rs.size();
        size_t entity = 0, semantic = 0, factual = 0, structured = 0, systemic = 0;
        for (const auto* r : rs) {
            if (r->failure_flags.count(FailureFlag::EntityFail)) ++entity;
            if (r->failure_flags.count(FailureFlag::SemanticFail)) ++semantic;
            if (r->failure_flags.count(FailureFlag::FactualFail)) ++factual;
            if (r->failure_flags.count(FailureFlag::StructureFail)) ++structured;
            if (r->failure_flags.count(FailureFlag::SystemicFail)) ++systemic;
        }
        auto pct = [&](size_t k) { return fmt(100.0 * k / n, 1) + "%"; };
        report << model << ": entity " << pct(entity) << ", semantic " << pct(semantic)
               << ", factual " << pct(factual) << ", structured " << pct(structured)
               << ", systemic " << pct(systemic) << "\n";
    }

    // semantic-entity gap bars
    std::string gap_csv = "model,semantic_mean,entity_mean,gap_pp,ratio\n";
    report << "\nsemantic-entity gap\n-------------------\n";
    for (const auto& [model, rs] : by_model) {
        auto gap = stats::gap_analysis(collect(rs, &ComponentScores::semantic_similarity),
                                       collect(rs, &ComponentScores::entity_f1));
        report << model << ": " << fmt(100 * gap.semantic_mean, 1) << "% semantic vs "
               << fmt(100 * gap.entity_mean, 1) << "% entity -> gap " << fmt(gap.gap_pp, 1)
               << " pp";
        if (gap.ratio) report << " (" << fmt(*gap.ratio, 1) << "x)";
        report << "\n";
        gap_csv += model + ',' + fmt(gap.semantic_mean, 6) + ',' + fmt(gap.entity_mean, 6) +
                   ',' + fmt(gap.gap_pp, 3) + ',' +
                   (gap.ratio ? fmt(*gap.ratio, 3) : std::string()) + '\n';
    }
    io::write_file_atomic(out_path(config, "chart_gap.csv"), gap_csv);

    // scheme x model heatmap
    std::string heatmap_csv = "scheme,model,score\n";
    std::map<std::string, ComponentScores> means;
    for (const auto& [model, rs] : by_model) means[model] = component_means(rs);
    std::vector<WeightScheme> schemes = preset_schemes();
    for (const auto& s : config.extra_schemes) schemes.push_back(s);
    report << "\nscheme x model matrix\n---------------------\n";
    for (const auto& scheme : schemes) {
        report << std::left << std::setw(10) << scheme.name;
        for (const auto& [model, mc] : means) {
            double score = compose_vb(mc, scheme);
            report << "  " << model << " " << fmt(score);
            heatmap_csv += scheme.name + ',' + model + ',' + fmt(score, 6) + '\n';
        }
        report << "\n";
    }
    io::write_file_atomic(out_path(config, "chart_scheme_heatmap.csv"), heatmap_csv);

    // stratified disparity
    if (!config.dataset_path.empty()) {
        auto dataset = io::load_dataset(config.dataset_path);
        report << "\ndisparity by stratum\n--------------------\n";
        for (auto key : {stats::StratumKey::DiseaseCategory, stats::StratumKey::Source,
                         stats::StratumKey::QuestionType}) {
            try {
                auto cmp = stats::stratified_compare(results, dataset, key, config.alpha);
                report << stats::to_string(key) << ": " << cmp.stratum_a << " "
                       << fmt(cmp.per_stratum[cmp.stratum_a].mean) << " vs "
                       << cmp.stratum_b << " " << fmt(cmp.per_stratum[cmp.stratum_b].mean)
                       << " -> +" << fmt(cmp.relative_gap, 1) << "% (p "
                       << fmt(cmp.test.p_value, 4) << ", d " << fmt(cmp.d, 2) << " "
                       << stats::effect_size_band(cmp.d) << ")\n";
            } catch (const SingleStratum&) {
                report << stats::to_string(key) << ": single stratum, skipped\n";
            }
        }
    }

    // cost scaling from token usage, when responses are available
    if (!config.responses_paths.empty() && !config.dataset_path.empty()) {
        auto dataset = io::load_dataset(config.dataset_path);
        PriceTable prices = load_prices(config);
        std::map<std::string, std::pair<std::int64_t, std::int64_t>> tokens;
        std::map<std::string, std::set<std::string>> samples;
        for (const auto& path : config.responses_paths) {
            for (const auto& r : io::load_responses(path, dataset)) {
                tokens[r.model_id].first += r.input_tokens;
                tokens[r.model_id].second += r.output_tokens;
                samples[r.model_id].insert(r.sample_id);
            }
        }
        std::string cost_csv = "model,queries,usd\n";
        report << "\ncost scaling\n------------\n";
        for (const auto& [model, tk] : tokens) {
            auto price = prices.price_for(model);
            if (!price) {
                report << model << ": no price entry, skipped\n";
                continue;
            }
            double total = vbscore::cost(tk.first, tk.second, *price);
            std::int64_t n = static_cast<std::int64_t>(samples[model].size());
            report << model << ": " << tk.first << " in + " << tk.second << " out tokens"
                   << " over " << n << " samples -> $" << fmt(total, 2) << "\n";
            for (std::int64_t q : {1000LL, 10000LL, 100000LL, 1000000LL}) {
                double projected = scale_projection(total, n, q);
                report << "  at " << q << " queries: $" << fmt(projected, 2) << "\n";
                cost_csv += model + ',' + std::to_string(q) + ',' + fmt(projected, 2) + '\n';
            }
        }
        io::write_file_atomic(out_path(config, "chart_cost_scaling.csv"), cost_csv);
    }

    io::write_file_atomic(out_path(config, "report.txt"), report.str());
    out << report.str();
    out << "wrote " << out_path(config, "report.txt") << " and chart data files\n";
    return kOk;
}

int cmd_cost(const RunConfig& config, std::ostream& out) {
    if (config.dataset_path.empty() || config.responses_paths.empty())
        throw ValidationError("cost needs --dataset and --responses");
    auto dataset = io::load_dataset(config.dataset_path);
    PriceTable prices = load_prices(config);

    std::map<std::string, std::pair<std::int64_t, std::int64_t>> tokens;
    std::map<std::string, std::set<std::string>> samples;
    for (const auto& path : config.responses_paths) {
        for (const auto& r : io::load_responses(path, dataset)) {
            tokens[r.model_id].first += r.input_tokens;
            tokens[r.model_id].second += r.output_tokens;
            samples[r.model_id].insert(r.sample_id);
        }
    }
    if (tokens.empty()) throw ValidationError("no responses with token usage");

    json report = json::object();
    for (const auto& [model, tk] : tokens) {
        auto price = prices.price_for(model);
        if (!price) {
            out << model << ": no price entry in the price table\n";
            continue;
        }
        double total = vbscore::cost(tk.first, tk.second, *price);
        std::int64_t n = static_cast<std::int64_t>(samples[model].size());
        json entry{{"input_tokens", tk.first},
                   {"output_tokens", tk.second},
                   {"samples", n},
                   {"total_usd", total},
                   {"projections", json::object()}};
        out << model << ": " << tk.first << " input + " << tk.second
            << " output tokens over " << n << " samples -> $" << fmt(total, 4) << "\n";
        for (std::int64_t q : {1000LL, 10000LL, 100000LL, 1000000LL}) {
            double projected = scale_projection(total, n, q);
            entry["projections"][std::to_string(q)] = projected;
            out << "  at " << q << " queries: $" << fmt(projected, 2) << "\n";
        }
        report[model] = entry;
    }
    io::write_file_atomic(out_path(config, "cost.json"), report.dump(2) + "\n");
    out << "wrote " << out_path(config, "cost.json") << "\n";
    return kOk;
}

}  // namespace vbscore::cli
