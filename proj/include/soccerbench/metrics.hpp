#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "soccerbench/matching.hpp"
#include "soccerbench/timing.hpp"
#include "soccerbench/types.hpp"

namespace soccerbench {

struct PRPoint {
  double recall = 0.0;
  double precision = 0.0;
  double confidence = 0.0;
};

/// Precision/recall points produced by sweeping the pooled, confidence
/// sorted detection list. Recall is non-decreasing along the sweep.
struct PRCurve {
  std::vector<PRPoint> points;
  std::size_t total_gt = 0;
  double iou_threshold = 0.0;
};

std::vector<double> default_ap11_recall_points();    // 0.0, 0.1, ..., 1.0
std::vector<double> default_coco_recall_points();    // 0.00, 0.01, ..., 1.00
std::vector<double> default_coco_iou_thresholds();   // 0.50, 0.55, ..., 0.95

struct EvalConfig {
  double iou_threshold_ap11 = 0.5;
  std::vector<double> coco_iou_thresholds = default_coco_iou_thresholds();
  std::vector<double> ap11_recall_points = default_ap11_recall_points();
  std::vector<double> coco_recall_points = default_coco_recall_points();
  double ball_radius_px = 5.0;
  double ball_confidence_threshold = 0.5;
  bool compute_coco = true;
  int threads = 1;
};

struct ClassMetrics {
  double ap11 = 0.0;
  std::optional<double> coco_map;
};

struct BallPointMetrics {
  double avg_precision = 0.0;
  double avg_recall = 0.0;
  double pct_correct_frames = 0.0;
  ConfusionCounts counts;
};

/// Everything behind one benchmark table row, timing aside.
struct MetricsReport {
  ClassMetrics person;
  ClassMetrics ball;
  BallPointMetrics ball_point;
  std::optional<TimingSummary> timing;
};

/// Pools per-frame outcomes (all at one threshold, one class) into a PR
/// curve: detections sorted by descending confidence (stable), cumulative
/// TP/FP swept into points. Throws InconsistentThreshold when outcomes
/// disagree on the threshold.
PRCurve build_pr_curve(std::span<const MatchOutcome> outcomes);

/// Mean over a recall grid of the interpolated precision envelope
/// max{precision at recall >= r}, 0 where no point reaches r.
/// Throws ZeroGroundTruth when the curve has no ground truth.
double interpolated_ap(const PRCurve& curve,
                       std::span<const double> recall_points);

/// 11-point interpolated AP over recalls 0.0, 0.1, ..., 1.0.
double ap_11(const PRCurve& curve);

/// 101-point interpolated AP over recalls 0.00, 0.01, ..., 1.00.
double coco_ap_single(const PRCurve& curve);

/// Mean of coco_ap_single over one curve per threshold. Throws
/// MissingThresholdCurve when a threshold has no matching curve.
double coco_map(std::span<const PRCurve> curves,
                std::span<const double> iou_thresholds);

/// One frame's annotations joined with its detections (null = none).
struct PairedFrame {
  const FrameAnnotations* annotations = nullptr;
  const FrameDetections* detections = nullptr;
};

/// The three ball-specific columns: detections at or above
/// ball_confidence_threshold are greedily matched to GT balls by the
/// point-radius criterion; TP/FP/FN are pooled across frames. A frame is
/// correct iff it has a GT ball and at least one TP, or has no GT ball and
/// no thresholded detection. Zero denominators yield 0.
BallPointMetrics ball_frame_metrics(std::span<const PairedFrame> frames,
                                    const EvalConfig& config);

/// Computes every accuracy column of a benchmark row. Detection frame ids
/// must resolve to annotation frames (UnknownFrameId otherwise); frames
/// without a detection entry count as zero detections. Deterministic for
/// fixed inputs regardless of input order or config.threads.
MetricsReport evaluate(const std::vector<FrameAnnotations>& annotations,
                       const std::vector<FrameDetections>& detections,
                       const EvalConfig& config);

}  // namespace soccerbench
