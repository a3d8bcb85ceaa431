#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "vbscore/config.hpp"
#include "vbscore/datamodel.hpp"

namespace vbscore::cli {

// Stable exit codes, documented in the README.
enum ExitCode : int {
    kOk = 0,
    kFailure = 1,     // unexpected / IO errors
    kValidation = 2,  // bad inputs, unknown ids, empty results
    kBackend = 3,     // every sample failed on a backend
    kPartial = 4,     // some samples scored, some degraded
};

struct EvaluationOutput {
    std::vector<VBScoreResult> results;
    std::vector<PartialResult> partials;
};

// Scores one response against its dataset record. Components whose
// backend fails stay absent; the sample then lands in `partials`.
EvaluationOutput score_all(const std::vector<QARecord>& dataset,
                           const std::vector<ModelResponse>& responses,
                           const RunConfig& config, ScoringBackends& backends);

int cmd_evaluate(const RunConfig& config, std::ostream& out);
int cmd_compare(const RunConfig& config, std::ostream& out);
int cmd_sensitivity(const RunConfig& config, std::ostream& out);
int cmd_sweep(const RunConfig& config, std::ostream& out);
int cmd_report(const RunConfig& config, std::ostream& out);
int cmd_cost(const RunConfig& config, std::ostream& out);

}  // namespace vbscore::cli
