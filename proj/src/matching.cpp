#include "soccerbench/matching.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "soccerbench/errors.hpp"

namespace soccerbench {

std::size_t MatchOutcome::tp_count() const {
  return static_cast<std::size_t>(
      std::count_if(matches.begin(), matches.end(),
                    [](const DetectionMatch& m) { return m.is_tp; }));
}

std::size_t MatchOutcome::fp_count() const {
  return matches.size() - tp_count();
}

double ConfusionCounts::precision() const {
  return tp + fp == 0 ? 0.0
                      : static_cast<double>(tp) / static_cast<double>(tp + fp);
}

double ConfusionCounts::recall() const {
  return tp + fn == 0 ? 0.0
                      : static_cast<double>(tp) / static_cast<double>(tp + fn);
}

MatchOutcome match_frame(std::span<const Detection> detections,
                         std::span<const GroundTruthObject> gts,
                         double image_width, double image_height,
                         double iou_threshold) {
  if (!(iou_threshold > 0.0) || iou_threshold > 1.0) {
    throw ConfigError("IoU threshold must lie in (0, 1], got " +
                      std::to_string(iou_threshold));
  }
  std::optional<ClassLabel> cls;
  for (const auto& det : detections) {
    if (cls && det.label != *cls) throw MixedClasses();
    cls = det.label;
  }
  for (const auto& gt : gts) {
    if (cls && gt.label != *cls) throw MixedClasses();
    cls = gt.label;
  }

  std::vector<PixelBox> det_boxes(detections.size());
  std::vector<PixelBox> gt_boxes(gts.size());
  for (std::size_t i = 0; i < detections.size(); ++i) {
    det_boxes[i] =
        normalized_to_pixel(detections[i].box, image_width, image_height);
  }
  for (std::size_t i = 0; i < gts.size(); ++i) {
    gt_boxes[i] = normalized_to_pixel(gts[i].box, image_width, image_height);
  }

  // Stable sort keeps file order among equal confidences.
  std::vector<std::size_t> order(detections.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return detections[a].confidence > detections[b].confidence;
                   });

  MatchOutcome outcome;
  outcome.iou_threshold = iou_threshold;
  outcome.matches.reserve(detections.size());
  std::vector<bool> gt_taken(gts.size(), false);

  for (std::size_t det_index : order) {
    DetectionMatch match;
    match.confidence = detections[det_index].confidence;
    double best_iou = 0.0;
    std::optional<std::size_t> best_gt;
    for (std::size_t gt_index = 0; gt_index < gts.size(); ++gt_index) {
      if (gt_taken[gt_index]) continue;
      const double overlap = iou(det_boxes[det_index], gt_boxes[gt_index]);
      if (overlap > best_iou) {
        best_iou = overlap;
        best_gt = gt_index;
      }
    }
    if (best_gt && best_iou >= iou_threshold) {
      match.is_tp = true;
      match.gt_index = best_gt;
      gt_taken[*best_gt] = true;
    }
    outcome.matches.push_back(match);
  }

  outcome.fn_count = static_cast<std::size_t>(
      std::count(gt_taken.begin(), gt_taken.end(), false));
  return outcome;
}

bool ball_center_match(const PixelPoint& det_center,
                       const PixelPoint& gt_center, double radius_px) {
  const double dx = det_center.x - gt_center.x;
  const double dy = det_center.y - gt_center.y;
  return std::sqrt(dx * dx + dy * dy) <= radius_px;
}

}  // namespace soccerbench
