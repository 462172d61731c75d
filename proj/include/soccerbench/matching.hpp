#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "soccerbench/geometry.hpp"
#include "soccerbench/types.hpp"

namespace soccerbench {

struct DetectionMatch {
  double confidence = 0.0;
  bool is_tp = false;
  std::optional<std::size_t> gt_index;
};

/// Result of assigning one frame's detections to its ground truth at one
/// IoU threshold. Matches are ordered by descending confidence.
struct MatchOutcome {
  std::vector<DetectionMatch> matches;
  std::size_t fn_count = 0;
  double iou_threshold = 0.0;

  std::size_t tp_count() const;
  std::size_t fp_count() const;
  std::size_t gt_count() const { return tp_count() + fn_count; }
};

struct ConfusionCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;

  double precision() const;
  double recall() const;
};

/// Greedy assignment: detections in descending confidence (stable on ties,
/// so equal confidences keep input order) each take the unmatched GT with
/// the highest IoU when that IoU reaches the threshold; equal IoUs pick the
/// lowest GT index. All detections and GT objects must share one class;
/// otherwise MixedClasses is thrown.
MatchOutcome match_frame(std::span<const Detection> detections,
                         std::span<const GroundTruthObject> gts,
                         double image_width, double image_height,
                         double iou_threshold);

/// The point-radius ball criterion: true iff the Euclidean distance between
/// the two centers is at most radius_px.
bool ball_center_match(const PixelPoint& det_center,
                       const PixelPoint& gt_center, double radius_px);

}  // namespace soccerbench
