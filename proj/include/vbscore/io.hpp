#pragma once

#include <string>
#include <vector>

#include "vbscore/datamodel.hpp"
#include "vbscore/scoring.hpp"

namespace vbscore::io {

enum class ResultFormat { Rows, Json };

// Dataset file: one JSON object per line with keys exactly
// id, source, topic, disease_category, question_type, question,
// reference_answer. Records are returned in file order; duplicate ids
// and blank question/reference_answer are rejected.
std::vector<QARecord> load_dataset(const std::string& path);

void save_dataset(const std::vector<QARecord>& records, const std::string& path);

// Responses file: one JSON object per line with keys sample_id, model_id,
// prompt_config, text, input_tokens, output_tokens, created_at. Every
// sample_id must resolve against `dataset`.
std::vector<ModelResponse> load_responses(const std::string& path,
                                          const std::vector<QARecord>& dataset);

void save_responses(const std::vector<ModelResponse>& responses,
                    const std::string& path);

// Rows format: header plus one CSV row per result with columns
//   sample_id, model_id, prompt_config, entity_f1, semantic_similarity,
//   factual_consistency, structured_overlap, vb_score, weight_scheme,
//   failure_flags
// (flags semicolon-joined, sorted). Json format round-trips exactly via
// read_results. The writer re-derives every vb_score from the named
// scheme and refuses to emit a row that is off by more than 1e-12.
// Partial rows (backend degradation) appear in rows output with blank
// cells for the missing values; they are never written to json output.
void write_results(const std::vector<VBScoreResult>& results, const std::string& path,
                   ResultFormat format,
                   const std::vector<WeightScheme>& extra_schemes = {},
                   const std::vector<PartialResult>& partials = {});

std::vector<VBScoreResult> read_results(const std::string& path);

// Atomic file write: writes to a temp file in the same directory, then
// renames over the target.
void write_file_atomic(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

}  // namespace vbscore::io
