#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "soccerbench/dataset.hpp"
#include "soccerbench/metrics.hpp"

namespace soccerbench {

/// One table row: a named evaluation outcome plus the config it was
/// computed under. Rows may also be hand-entered documents.
struct RunResult {
  std::string run_name;
  MetricsReport metrics;
  EvalConfig config;
};

/// Serializes a RunResult as a pretty-printed JSON document with a stable
/// key order and a trailing newline.
std::string run_result_to_json(const RunResult& result);

/// Inverse of run_result_to_json. Throws SchemaMismatch on anything the
/// schema does not allow.
RunResult run_result_from_json(std::string_view text);

enum class ReportFormat {
  Markdown,
  Csv,
};

/// Renders the benchmark table. Columns: run, Person AP11 and COCO mAP,
/// Ball AP11 and COCO mAP, Ball Avg Prec./Avg Rec./%, T(ms). AP columns use
/// 4 decimals, ball columns 3; timing renders "inference/total" or a single
/// figure. In markdown the best value of every accuracy column is bolded.
/// Throws EmptyInput when runs is empty.
std::string render_report(std::span<const RunResult> runs,
                          ReportFormat format);

/// Plain-text stats panels: per split the resolution histogram, the
/// max-person-height histogram and the ball fraction.
std::string render_stats_text(const StatsSummary& stats);

/// The same stats as a JSON document.
std::string render_stats_json(const StatsSummary& stats);

}  // namespace soccerbench
