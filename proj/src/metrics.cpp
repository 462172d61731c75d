#include "soccerbench/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "soccerbench/errors.hpp"
#include "soccerbench/parallel.hpp"

namespace soccerbench {

std::vector<double> default_ap11_recall_points() {
  std::vector<double> points(11);
  for (int i = 0; i <= 10; ++i) points[i] = i / 10.0;
  return points;
}

std::vector<double> default_coco_recall_points() {
  std::vector<double> points(101);
  for (int i = 0; i <= 100; ++i) points[i] = i / 100.0;
  return points;
}

std::vector<double> default_coco_iou_thresholds() {
  std::vector<double> thresholds(10);
  for (int i = 0; i < 10; ++i) thresholds[i] = (10 + i) / 20.0;
  return thresholds;
}

PRCurve build_pr_curve(std::span<const MatchOutcome> outcomes) {
  PRCurve curve;
  bool have_threshold = false;
  std::vector<DetectionMatch> pooled;
  for (const auto& outcome : outcomes) {
    if (!have_threshold) {
      curve.iou_threshold = outcome.iou_threshold;
      have_threshold = true;
    } else if (outcome.iou_threshold != curve.iou_threshold) {
      throw InconsistentThreshold();
    }
    curve.total_gt += outcome.gt_count();
    pooled.insert(pooled.end(), outcome.matches.begin(),
                  outcome.matches.end());
  }

  std::stable_sort(pooled.begin(), pooled.end(),
                   [](const DetectionMatch& a, const DetectionMatch& b) {
                     return a.confidence > b.confidence;
                   });

  curve.points.reserve(pooled.size());
  std::size_t cumulative_tp = 0;
  std::size_t cumulative_fp = 0;
  for (const auto& match : pooled) {
    if (match.is_tp) {
      ++cumulative_tp;
    } else {
      ++cumulative_fp;
    }
    PRPoint point;
    point.confidence = match.confidence;
    point.precision = static_cast<double>(cumulative_tp) /
                      static_cast<double>(cumulative_tp + cumulative_fp);
    point.recall = curve.total_gt == 0
                       ? 0.0
                       : static_cast<double>(cumulative_tp) /
                             static_cast<double>(curve.total_gt);
    curve.points.push_back(point);
  }
  return curve;
}

double interpolated_ap(const PRCurve& curve,
                       std::span<const double> recall_points) {
  if (curve.total_gt == 0) throw ZeroGroundTruth();
  if (recall_points.empty()) {
    throw EmptyInput("AP needs at least one recall point");
  }

  const std::size_t n = curve.points.size();
  std::vector<double> recalls(n);
  std::vector<double> envelope(n);
  for (std::size_t i = 0; i < n; ++i) recalls[i] = curve.points[i].recall;
  double running_max = 0.0;
  for (std::size_t i = n; i-- > 0;) {
    running_max = std::max(running_max, curve.points[i].precision);
    envelope[i] = running_max;
  }

  double sum = 0.0;
  for (double r : recall_points) {
    const auto it = std::lower_bound(recalls.begin(), recalls.end(), r);
    if (it != recalls.end()) {
      sum += envelope[static_cast<std::size_t>(it - recalls.begin())];
    }
  }
  return sum / static_cast<double>(recall_points.size());
}

double ap_11(const PRCurve& curve) {
  const auto grid = default_ap11_recall_points();
  return interpolated_ap(curve, grid);
}

double coco_ap_single(const PRCurve& curve) {
  const auto grid = default_coco_recall_points();
  return interpolated_ap(curve, grid);
}

double coco_map(std::span<const PRCurve> curves,
                std::span<const double> iou_thresholds) {
  if (iou_thresholds.empty()) {
    throw EmptyInput("COCO mAP needs at least one IoU threshold");
  }
  double sum = 0.0;
  for (double threshold : iou_thresholds) {
    const PRCurve* match = nullptr;
    for (const auto& curve : curves) {
      if (curve.iou_threshold == threshold) {
        match = &curve;
        break;
      }
    }
    if (!match) throw MissingThresholdCurve(threshold);
    sum += coco_ap_single(*match);
  }
  return sum / static_cast<double>(iou_thresholds.size());
}

namespace {

struct BallFrameOutcome {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  bool correct = false;
};

BallFrameOutcome ball_match_one_frame(const PairedFrame& frame,
                                      const EvalConfig& config) {
  const FrameAnnotations& annotations = *frame.annotations;
  const double width = annotations.image_width;
  const double height = annotations.image_height;

  std::vector<PixelPoint> gt_centers;
  for (const auto& object : annotations.objects) {
    if (object.label != ClassLabel::Ball) continue;
    gt_centers.push_back(
        box_center(normalized_to_pixel(object.box, width, height)));
  }

  std::vector<const Detection*> candidates;
  if (frame.detections) {
    for (const auto& det : frame.detections->detections) {
      if (det.label == ClassLabel::Ball &&
          det.confidence >= config.ball_confidence_threshold) {
        candidates.push_back(&det);
      }
    }
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Detection* a, const Detection* b) {
                     return a->confidence > b->confidence;
                   });

  BallFrameOutcome outcome;
  std::vector<bool> gt_taken(gt_centers.size(), false);
  for (const Detection* det : candidates) {
    const PixelPoint center =
        box_center(normalized_to_pixel(det->box, width, height));
    double best_distance = std::numeric_limits<double>::infinity();
    std::size_t best_gt = gt_centers.size();
    for (std::size_t i = 0; i < gt_centers.size(); ++i) {
      if (gt_taken[i]) continue;
      const double dx = center.x - gt_centers[i].x;
      const double dy = center.y - gt_centers[i].y;
      const double distance = std::sqrt(dx * dx + dy * dy);
      if (distance < best_distance) {
        best_distance = distance;
        best_gt = i;
      }
    }
    if (best_gt < gt_centers.size() &&
        best_distance <= config.ball_radius_px) {
      gt_taken[best_gt] = true;
      ++outcome.tp;
    } else {
      ++outcome.fp;
    }
  }
  outcome.fn = static_cast<std::size_t>(
      std::count(gt_taken.begin(), gt_taken.end(), false));

  const bool has_gt_ball = !gt_centers.empty();
  if (has_gt_ball) {
    outcome.correct = outcome.tp >= 1;
  } else {
    outcome.correct = candidates.empty();
  }
  return outcome;
}

std::vector<Detection> class_detections(const PairedFrame& frame,
                                        ClassLabel label) {
  std::vector<Detection> out;
  if (!frame.detections) return out;
  for (const auto& det : frame.detections->detections) {
    if (det.label == label) out.push_back(det);
  }
  return out;
}

std::vector<GroundTruthObject> class_objects(const FrameAnnotations& frame,
                                             ClassLabel label) {
  std::vector<GroundTruthObject> out;
  for (const auto& object : frame.objects) {
    if (object.label == label) out.push_back(object);
  }
  return out;
}

}  // namespace

BallPointMetrics ball_frame_metrics(std::span<const PairedFrame> frames,
                                    const EvalConfig& config) {
  BallPointMetrics metrics;
  std::size_t correct = 0;
  for (const auto& frame : frames) {
    const BallFrameOutcome outcome = ball_match_one_frame(frame, config);
    metrics.counts.tp += outcome.tp;
    metrics.counts.fp += outcome.fp;
    metrics.counts.fn += outcome.fn;
    if (outcome.correct) ++correct;
  }
  metrics.avg_precision = metrics.counts.precision();
  metrics.avg_recall = metrics.counts.recall();
  metrics.pct_correct_frames =
      frames.empty() ? 0.0
                     : static_cast<double>(correct) /
                           static_cast<double>(frames.size());
  return metrics;
}

MetricsReport evaluate(const std::vector<FrameAnnotations>& annotations,
                       const std::vector<FrameDetections>& detections,
                       const EvalConfig& config) {
  std::map<std::string, const FrameAnnotations*> frames_by_id;
  for (const auto& frame : annotations) {
    if (!frames_by_id.emplace(frame.frame_id, &frame).second) {
      throw Error("duplicate annotation frame id '" + frame.frame_id + "'");
    }
  }
  std::map<std::string, const FrameDetections*> detections_by_id;
  for (const auto& frame : detections) {
    if (frames_by_id.find(frame.frame_id) == frames_by_id.end()) {
      throw UnknownFrameId(frame.frame_id);
    }
    if (!detections_by_id.emplace(frame.frame_id, &frame).second) {
      throw Error("duplicate detection frame id '" + frame.frame_id + "'");
    }
  }

  // Canonical frame order: sorted by frame_id. Together with stable
  // confidence sorting this makes every metric independent of input order
  // and worker count.
  std::vector<PairedFrame> paired;
  paired.reserve(frames_by_id.size());
  for (const auto& [frame_id, frame] : frames_by_id) {
    PairedFrame pair;
    pair.annotations = frame;
    const auto it = detections_by_id.find(frame_id);
    pair.detections = it == detections_by_id.end() ? nullptr : it->second;
    paired.push_back(pair);
  }

  std::vector<double> thresholds;
  thresholds.push_back(config.iou_threshold_ap11);
  if (config.compute_coco) {
    if (config.coco_iou_thresholds.empty()) {
      throw EmptyInput("COCO mAP needs at least one IoU threshold");
    }
    thresholds.insert(thresholds.end(), config.coco_iou_thresholds.begin(),
                      config.coco_iou_thresholds.end());
  }
  constexpr ClassLabel kClasses[] = {ClassLabel::Person, ClassLabel::Ball};

  // outcome_slots[class][threshold][frame], filled concurrently per frame
  // and merged in frame order afterwards.
  std::vector<std::vector<std::vector<MatchOutcome>>> outcome_slots(2);
  for (auto& per_class : outcome_slots) {
    per_class.assign(thresholds.size(),
                     std::vector<MatchOutcome>(paired.size()));
  }

  parallel_for(paired.size(), config.threads, [&](std::size_t frame_index) {
    const PairedFrame& frame = paired[frame_index];
    const double width = frame.annotations->image_width;
    const double height = frame.annotations->image_height;
    for (std::size_t class_index = 0; class_index < 2; ++class_index) {
      const auto dets = class_detections(frame, kClasses[class_index]);
      const auto gts = class_objects(*frame.annotations, kClasses[class_index]);
      for (std::size_t t = 0; t < thresholds.size(); ++t) {
        outcome_slots[class_index][t][frame_index] =
            match_frame(dets, gts, width, height, thresholds[t]);
      }
    }
  });

  MetricsReport report;
  for (std::size_t class_index = 0; class_index < 2; ++class_index) {
    ClassMetrics& out =
        kClasses[class_index] == ClassLabel::Person ? report.person
                                                    : report.ball;
    const PRCurve ap11_curve = build_pr_curve(outcome_slots[class_index][0]);
    out.ap11 = interpolated_ap(ap11_curve, config.ap11_recall_points);
    if (config.compute_coco) {
      double sum = 0.0;
      for (std::size_t t = 1; t < thresholds.size(); ++t) {
        const PRCurve curve = build_pr_curve(outcome_slots[class_index][t]);
        sum += interpolated_ap(curve, config.coco_recall_points);
      }
      out.coco_map = sum / static_cast<double>(config.coco_iou_thresholds.size());
    }
  }

  report.ball_point = ball_frame_metrics(paired, config);
  return report;
}

}  // namespace soccerbench
