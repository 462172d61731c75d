#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace soccerbench {

struct TimingRecord {
  std::string frame_id;
  double inference_ms = 0.0;
  std::optional<double> total_ms;
};

struct TimingSummary {
  double mean_inference_ms = 0.0;
  std::optional<double> mean_total_ms;
};

/// Parses a CSV timing log with header `frame_id,inference_ms` or
/// `frame_id,inference_ms,total_ms`. Rows keep file order. Either every row
/// carries a total or none does; durations must be positive and total >=
/// inference. Throws MalformedRow and NegativeDuration.
std::vector<TimingRecord> parse_timing_log(std::string_view text);

/// Arithmetic means over the records; the total mean is present only when
/// the records carry totals. Throws EmptyLog on no records.
TimingSummary summarize_timing(std::span<const TimingRecord> records);

}  // namespace soccerbench
