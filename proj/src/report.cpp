#include "soccerbench/report.hpp"

#include <cstdio>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "soccerbench/errors.hpp"

namespace soccerbench {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string format_fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
  return buf;
}

std::string format_timing_cell(const std::optional<TimingSummary>& timing) {
  if (!timing) return "-";
  if (timing->mean_total_ms) {
    return format_fixed(timing->mean_inference_ms, 1) + "/" +
           format_fixed(*timing->mean_total_ms, 1);
  }
  return format_fixed(timing->mean_inference_ms, 1);
}

std::string format_score(const std::optional<double>& value, int decimals) {
  return value ? format_fixed(*value, decimals) : "-";
}

double require_score(const ordered_json& node, const std::string& where) {
  if (!node.is_number()) {
    throw SchemaMismatch("'" + where + "' must be a number");
  }
  const double value = node.get<double>();
  if (value < 0.0 || value > 1.0) {
    throw SchemaMismatch("'" + where + "' must lie in [0, 1]");
  }
  return value;
}

std::optional<double> optional_score(const ordered_json& parent,
                                     const char* key,
                                     const std::string& where) {
  if (!parent.contains(key) || parent.at(key).is_null()) return std::nullopt;
  return require_score(parent.at(key), where);
}

const ordered_json& require_object(const ordered_json& parent, const char* key,
                                   const std::string& where) {
  if (!parent.contains(key) || !parent.at(key).is_object()) {
    throw SchemaMismatch("'" + where + "' must be an object");
  }
  return parent.at(key);
}

}  // namespace

std::string run_result_to_json(const RunResult& result) {
  ordered_json doc;
  doc["run"] = result.run_name;

  ordered_json person;
  person["ap11"] = result.metrics.person.ap11;
  if (result.metrics.person.coco_map) {
    person["coco_map"] = *result.metrics.person.coco_map;
  } else {
    person["coco_map"] = nullptr;
  }
  doc["person"] = person;

  ordered_json ball;
  ball["ap11"] = result.metrics.ball.ap11;
  if (result.metrics.ball.coco_map) {
    ball["coco_map"] = *result.metrics.ball.coco_map;
  } else {
    ball["coco_map"] = nullptr;
  }
  ball["avg_precision"] = result.metrics.ball_point.avg_precision;
  ball["avg_recall"] = result.metrics.ball_point.avg_recall;
  ball["pct_correct_frames"] = result.metrics.ball_point.pct_correct_frames;
  doc["ball"] = ball;

  if (result.metrics.timing) {
    ordered_json timing;
    timing["inference_ms"] = result.metrics.timing->mean_inference_ms;
    if (result.metrics.timing->mean_total_ms) {
      timing["total_ms"] = *result.metrics.timing->mean_total_ms;
    }
    doc["timing"] = timing;
  }

  ordered_json config;
  config["iou_threshold"] = result.config.iou_threshold_ap11;
  config["ball_radius_px"] = result.config.ball_radius_px;
  config["ball_conf_threshold"] = result.config.ball_confidence_threshold;
  config["coco"] = result.config.compute_coco;
  doc["config"] = config;

  return doc.dump(2) + "\n";
}

RunResult run_result_from_json(std::string_view text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw SchemaMismatch(std::string("not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw SchemaMismatch("document must be an object");
  if (!doc.contains("run") || !doc.at("run").is_string()) {
    throw SchemaMismatch("'run' must be a string");
  }

  RunResult result;
  result.run_name = doc.at("run").get<std::string>();
  if (result.run_name.empty()) {
    throw SchemaMismatch("'run' must not be empty");
  }

  const ordered_json& person = require_object(doc, "person", "person");
  if (!person.contains("ap11")) {
    throw SchemaMismatch("'person.ap11' is required");
  }
  result.metrics.person.ap11 =
      require_score(person.at("ap11"), "person.ap11");
  result.metrics.person.coco_map =
      optional_score(person, "coco_map", "person.coco_map");

  const ordered_json& ball = require_object(doc, "ball", "ball");
  if (!ball.contains("ap11")) throw SchemaMismatch("'ball.ap11' is required");
  result.metrics.ball.ap11 = require_score(ball.at("ap11"), "ball.ap11");
  result.metrics.ball.coco_map =
      optional_score(ball, "coco_map", "ball.coco_map");
  for (const char* key :
       {"avg_precision", "avg_recall", "pct_correct_frames"}) {
    if (!ball.contains(key)) {
      throw SchemaMismatch(std::string("'ball.") + key + "' is required");
    }
  }
  result.metrics.ball_point.avg_precision =
      require_score(ball.at("avg_precision"), "ball.avg_precision");
  result.metrics.ball_point.avg_recall =
      require_score(ball.at("avg_recall"), "ball.avg_recall");
  result.metrics.ball_point.pct_correct_frames =
      require_score(ball.at("pct_correct_frames"), "ball.pct_correct_frames");

  if (doc.contains("timing")) {
    const ordered_json& timing = doc.at("timing");
    if (!timing.is_object() || !timing.contains("inference_ms") ||
        !timing.at("inference_ms").is_number()) {
      throw SchemaMismatch("'timing.inference_ms' must be a number");
    }
    TimingSummary summary;
    summary.mean_inference_ms = timing.at("inference_ms").get<double>();
    if (!(summary.mean_inference_ms > 0.0)) {
      throw SchemaMismatch("'timing.inference_ms' must be positive");
    }
    if (timing.contains("total_ms") && !timing.at("total_ms").is_null()) {
      if (!timing.at("total_ms").is_number()) {
        throw SchemaMismatch("'timing.total_ms' must be a number");
      }
      summary.mean_total_ms = timing.at("total_ms").get<double>();
      if (!(*summary.mean_total_ms >= summary.mean_inference_ms)) {
        throw SchemaMismatch("'timing.total_ms' must be >= inference_ms");
      }
    }
    result.metrics.timing = summary;
  }

  if (doc.contains("config")) {
    const ordered_json& config = doc.at("config");
    if (!config.is_object()) throw SchemaMismatch("'config' must be an object");
    if (config.contains("iou_threshold")) {
      result.config.iou_threshold_ap11 =
          config.at("iou_threshold").get<double>();
    }
    if (config.contains("ball_radius_px")) {
      result.config.ball_radius_px = config.at("ball_radius_px").get<double>();
    }
    if (config.contains("ball_conf_threshold")) {
      result.config.ball_confidence_threshold =
          config.at("ball_conf_threshold").get<double>();
    }
    if (config.contains("coco")) {
      result.config.compute_coco = config.at("coco").get<bool>();
    }
  }
  return result;
}

namespace {

constexpr const char* kColumnHeaders[] = {
    "run",           "Person AP₁₁",    "Person COCO mAP",
    "Ball AP₁₁",     "Ball COCO mAP",  "Ball Avg Prec.",
    "Ball Avg Rec.", "Ball %",         "T(ms)",
};

/// Cell text for the 7 accuracy columns of one run, in column order.
std::vector<std::string> accuracy_cells(const RunResult& run) {
  return {
      format_fixed(run.metrics.person.ap11, 4),
      format_score(run.metrics.person.coco_map, 4),
      format_fixed(run.metrics.ball.ap11, 4),
      format_score(run.metrics.ball.coco_map, 4),
      format_fixed(run.metrics.ball_point.avg_precision, 3),
      format_fixed(run.metrics.ball_point.avg_recall, 3),
      format_fixed(run.metrics.ball_point.pct_correct_frames, 3),
  };
}

}  // namespace

std::string render_report(std::span<const RunResult> runs,
                          ReportFormat format) {
  if (runs.empty()) throw EmptyInput("report needs at least one run result");
  std::set<std::string> names;
  for (const auto& run : runs) {
    if (!names.insert(run.run_name).second) {
      throw SchemaMismatch("duplicate run name '" + run.run_name + "'");
    }
  }

  std::vector<std::vector<std::string>> cells;
  cells.reserve(runs.size());
  for (const auto& run : runs) cells.push_back(accuracy_cells(run));

  // A cell is emphasized when it holds its column's best value; missing
  // cells ("-") never win.
  std::vector<std::vector<bool>> is_best(runs.size(),
                                         std::vector<bool>(7, false));
  for (std::size_t col = 0; col < 7; ++col) {
    double best = -1.0;
    for (std::size_t row = 0; row < runs.size(); ++row) {
      if (cells[row][col] == "-") continue;
      best = std::max(best, std::stod(cells[row][col]));
    }
    if (best < 0.0) continue;
    for (std::size_t row = 0; row < runs.size(); ++row) {
      if (cells[row][col] == "-") continue;
      is_best[row][col] = std::stod(cells[row][col]) == best;
    }
  }

  std::string out;
  if (format == ReportFormat::Markdown) {
    out += "|";
    for (const char* header : kColumnHeaders) {
      out += " ";
      out += header;
      out += " |";
    }
    out += "\n|";
    for (std::size_t i = 0; i < 9; ++i) out += " --- |";
    out += "\n";
    for (std::size_t row = 0; row < runs.size(); ++row) {
      out += "| " + runs[row].run_name + " |";
      for (std::size_t col = 0; col < 7; ++col) {
        const std::string& cell = cells[row][col];
        if (is_best[row][col]) {
          out += " **" + cell + "** |";
        } else {
          out += " " + cell + " |";
        }
      }
      out += " " + format_timing_cell(runs[row].metrics.timing) + " |\n";
    }
  } else {
    for (std::size_t i = 0; i < 9; ++i) {
      if (i > 0) out += ",";
      out += kColumnHeaders[i];
    }
    out += "\n";
    for (const auto& run : runs) {
      out += run.run_name;
      const auto row_cells = accuracy_cells(run);
      for (const auto& cell : row_cells) out += "," + cell;
      out += "," + format_timing_cell(run.metrics.timing) + "\n";
    }
  }
  return out;
}

std::string render_stats_text(const StatsSummary& stats) {
  std::string out;
  char bin_width[32];
  std::snprintf(bin_width, sizeof(bin_width), "%g", stats.height_bin_width_px);
  for (const auto& [split, split_stats] : stats.splits) {
    out += "split: " + std::string(split_name(split)) + "\n";
    out += "  frames: " + std::to_string(split_stats.frame_count) + "\n";
    out += "  resolutions:\n";
    for (const auto& [resolution, count] : split_stats.resolution_counts) {
      out += "    " + std::to_string(resolution.first) + "x" +
             std::to_string(resolution.second) + ": " +
             std::to_string(count) + "\n";
    }
    out += "  max person height (bin " + std::string(bin_width) + " px):\n";
    for (const auto& [bin, count] : split_stats.height_bins) {
      char line[96];
      std::snprintf(line, sizeof(line), "    [%d, %g): %zu\n", bin,
                    bin + stats.height_bin_width_px, count);
      out += line;
    }
    out += "  frames with ball: " +
           std::to_string(split_stats.frames_with_ball) + "\n";
    out += "  ball fraction: " +
           format_fixed(split_stats.ball_fraction, 3) + "\n";
  }
  return out;
}

std::string render_stats_json(const StatsSummary& stats) {
  ordered_json doc;
  doc["height_bin_width_px"] = stats.height_bin_width_px;
  ordered_json splits = ordered_json::object();
  for (const auto& [split, split_stats] : stats.splits) {
    ordered_json node;
    node["frame_count"] = split_stats.frame_count;
    ordered_json resolutions = ordered_json::object();
    for (const auto& [resolution, count] : split_stats.resolution_counts) {
      resolutions[std::to_string(resolution.first) + "x" +
                  std::to_string(resolution.second)] = count;
    }
    node["resolutions"] = resolutions;
    ordered_json bins = ordered_json::object();
    for (const auto& [bin, count] : split_stats.height_bins) {
      bins[std::to_string(bin)] = count;
    }
    node["max_person_height_bins"] = bins;
    node["frames_with_ball"] = split_stats.frames_with_ball;
    node["ball_fraction"] = split_stats.ball_fraction;
    splits[std::string(split_name(split))] = node;
  }
  doc["splits"] = splits;
  return doc.dump(2) + "\n";
}

}  // namespace soccerbench
