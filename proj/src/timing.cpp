#include "soccerbench/timing.hpp"

#include <string>

#include "soccerbench/errors.hpp"
#include "parse_util.hpp"

namespace soccerbench {

namespace {

double parse_duration_field(std::string_view token, int line_number) {
  try {
    return detail::parse_double(token, line_number);
  } catch (const MalformedLine&) {
    throw MalformedRow(line_number, "expected a duration in ms, got '" +
                                        std::string(token) + "'");
  }
}

}  // namespace

std::vector<TimingRecord> parse_timing_log(std::string_view text) {
  std::vector<TimingRecord> records;
  detail::LineCursor cursor{text};
  std::string_view line;
  bool saw_header = false;
  bool with_totals = false;
  while (cursor.next(line)) {
    if (line.empty()) continue;
    if (!saw_header) {
      if (line == "frame_id,inference_ms") {
        with_totals = false;
      } else if (line == "frame_id,inference_ms,total_ms") {
        with_totals = true;
      } else {
        throw MalformedRow(cursor.line_number,
                           "expected header 'frame_id,inference_ms[,total_ms]'");
      }
      saw_header = true;
      continue;
    }

    const std::size_t first = line.find(',');
    if (first == std::string_view::npos) {
      throw MalformedRow(cursor.line_number, "expected at least 2 columns");
    }
    const std::size_t second = line.find(',', first + 1);
    const bool row_has_total = second != std::string_view::npos;
    if (row_has_total &&
        line.find(',', second + 1) != std::string_view::npos) {
      throw MalformedRow(cursor.line_number, "expected at most 3 columns");
    }
    if (row_has_total != with_totals) {
      throw MalformedRow(cursor.line_number,
                         "column count disagrees with the header");
    }

    TimingRecord record;
    record.frame_id = std::string(line.substr(0, first));
    if (record.frame_id.empty()) {
      throw MalformedRow(cursor.line_number, "empty frame id");
    }
    const std::string_view inference_field =
        row_has_total ? line.substr(first + 1, second - first - 1)
                      : line.substr(first + 1);
    record.inference_ms =
        parse_duration_field(inference_field, cursor.line_number);
    if (!(record.inference_ms > 0.0)) {
      throw NegativeDuration(cursor.line_number, record.inference_ms);
    }
    if (row_has_total) {
      const double total =
          parse_duration_field(line.substr(second + 1), cursor.line_number);
      if (!(total > 0.0)) {
        throw NegativeDuration(cursor.line_number, total);
      }
      if (total < record.inference_ms) {
        throw MalformedRow(cursor.line_number,
                           "total_ms is smaller than inference_ms");
      }
      record.total_ms = total;
    }
    records.push_back(std::move(record));
  }
  if (!saw_header) {
    throw MalformedRow(1, "expected header 'frame_id,inference_ms[,total_ms]'");
  }
  return records;
}

TimingSummary summarize_timing(std::span<const TimingRecord> records) {
  if (records.empty()) throw EmptyLog();
  double inference_sum = 0.0;
  double total_sum = 0.0;
  bool all_have_totals = true;
  for (const auto& record : records) {
    inference_sum += record.inference_ms;
    if (record.total_ms) {
      total_sum += *record.total_ms;
    } else {
      all_have_totals = false;
    }
  }
  TimingSummary summary;
  summary.mean_inference_ms = inference_sum / static_cast<double>(records.size());
  if (all_have_totals) {
    summary.mean_total_ms = total_sum / static_cast<double>(records.size());
  }
  return summary;
}

}  // namespace soccerbench
