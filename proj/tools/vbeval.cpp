// vbeval: component-wise evaluation CLI for medical question answering.
//
// Subcommands: evaluate, compare, sensitivity, sweep, report, cost.
// Exit codes: 0 ok, 1 unexpected failure, 2 validation error,
// 3 backend failure, 4 partial completion.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vbscore/commands.hpp"
#include "vbscore/config.hpp"
#include "vbscore/errors.hpp"

namespace {

struct CliOptions {
    std::string dataset;
    std::vector<std::string> responses;
    std::string config_file;
    std::string results;
    std::string scheme;
    std::string out_dir;
    int parallel = 0;
    std::vector<std::string> backends;  // name=url
    bool reference_backends = false;
    std::vector<std::string> models;
};

void add_global_flags(CLI::App* cmd, CliOptions& opts) {
    cmd->add_option("--dataset", opts.dataset, "dataset file (one record per line)");
    cmd->add_option("--responses", opts.responses, "responses file(s)")
        ->take_all()
        ->delimiter(',');
    cmd->add_option("--config", opts.config_file, "JSON config file (comments allowed)");
    cmd->add_option("--results", opts.results, "results json produced by evaluate/sweep");
    cmd->add_option("--scheme", opts.scheme, "weight scheme name (default vb)");
    cmd->add_option("--out", opts.out_dir, "output directory (default out)");
    cmd->add_option("--parallel", opts.parallel, "worker threads for scoring/generation");
    cmd->add_option("--backend", opts.backends,
                    "backend endpoint as <name>=<url>; names: entity, embedding, nli, model")
        ->take_all();
    cmd->add_flag("--reference-backends", opts.reference_backends,
                  "force the deterministic built-in backends");
    cmd->add_option("--models", opts.models, "model ids for sweep")->delimiter(',');
}

vbscore::RunConfig build_config(const CliOptions& opts) {
    vbscore::RunConfig config;
    if (!opts.config_file.empty()) vbscore::apply_config_file(config, opts.config_file);
    if (!opts.dataset.empty()) config.dataset_path = opts.dataset;
    if (!opts.responses.empty()) config.responses_paths = opts.responses;
    if (!opts.results.empty()) config.results_path = opts.results;
    if (!opts.scheme.empty()) config.scheme_name = opts.scheme;
    if (!opts.out_dir.empty()) config.out_dir = opts.out_dir;
    if (opts.parallel > 0) config.parallel = opts.parallel;
    if (opts.reference_backends) config.reference_backends = true;
    if (!opts.models.empty()) config.sweep_models = opts.models;
    for (const auto& spec : opts.backends) {
        auto eq = spec.find('=');
        if (eq == std::string::npos)
            throw vbscore::ValidationError("--backend expects <name>=<url>: " + spec);
        config.backend_urls[spec.substr(0, eq)] = spec.substr(eq + 1);
    }
    return config;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"component-wise evaluation toolkit for medical question answering"};
    app.require_subcommand(1);

    CliOptions opts;
    auto* evaluate = app.add_subcommand("evaluate", "score responses against the dataset");
    auto* compare = app.add_subcommand("compare", "statistical model comparison");
    auto* sensitivity =
        app.add_subcommand("sensitivity", "rankings under alternative weight schemes");
    auto* sweep = app.add_subcommand("sweep", "prompt-configuration sweep with caching");
    auto* report = app.add_subcommand("report", "narrative report plus chart data");
    auto* cost = app.add_subcommand("cost", "API cost totals and scaling projections");
    for (auto* cmd : {evaluate, compare, sensitivity, sweep, report, cost})
        add_global_flags(cmd, opts);

    CLI11_PARSE(app, argc, argv);

    try {
        vbscore::RunConfig config = build_config(opts);
        if (evaluate->parsed()) return vbscore::cli::cmd_evaluate(config, std::cout);
        if (compare->parsed()) return vbscore::cli::cmd_compare(config, std::cout);
        if (sensitivity->parsed()) return vbscore::cli::cmd_sensitivity(config, std::cout);
        if (sweep->parsed()) return vbscore::cli::cmd_sweep(config, std::cout);
        if (report->parsed()) return vbscore::cli::cmd_report(config, std::cout);
        if (cost->parsed()) return vbscore::cli::cmd_cost(config, std::cout);
    } catch (const vbscore::MismatchedSampleSets& e) {
        std::cerr << "error: " << e.what() << "\n";
        return vbscore::cli::kValidation;
    } catch (const vbscore::BackendUnavailable& e) {
        std::cerr << "error: " << e.what() << "\n";
        return vbscore::cli::kBackend;
    } catch (const vbscore::BackendProtocolError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return vbscore::cli::kBackend;
    } catch (const vbscore::AuthenticationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return vbscore::cli::kBackend;
    } catch (const vbscore::RateLimited& e) {
        std::cerr << "error: " << e.what() << "\n";
        return vbscore::cli::kBackend;
    } catch (const vbscore::IOFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return vbscore::cli::kFailure;
    } catch (const vbscore::Error& e) {
        // MalformedLine, MissingField, DuplicateId, UnknownSampleId, ...
        std::cerr << "error: " << e.what() << "\n";
        return vbscore::cli::kValidation;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return vbscore::cli::kFailure;
    }
    return vbscore::cli::kFailure;
}
