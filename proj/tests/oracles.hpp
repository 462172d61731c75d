#pragma once

// Reference implementations the tests compare the library against. These
// are deliberately structured differently from the library code: interval
// arithmetic for IoU, selection-sort greedy matching, and a full re-match
// at every confidence cutoff instead of one cumulative sweep.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "soccerbench/geometry.hpp"
#include "soccerbench/types.hpp"

namespace oracles {

inline double overlap_1d(double a_lo, double a_hi, double b_lo, double b_hi) {
  const double lo = a_lo > b_lo ? a_lo : b_lo;
  const double hi = a_hi < b_hi ? a_hi : b_hi;
  return hi > lo ? hi - lo : 0.0;
}

inline double iou(const soccerbench::PixelBox& a,
                  const soccerbench::PixelBox& b) {
  const double intersection =
      overlap_1d(a.x_min, a.x_max, b.x_min, b.x_max) *
      overlap_1d(a.y_min, a.y_max, b.y_min, b.y_max);
  const double area_a = (a.x_max - a.x_min) * (a.y_max - a.y_min);
  const double area_b = (b.x_max - b.x_min) * (b.y_max - b.y_min);
  const double union_area = area_a + area_b - intersection;
  return union_area > 0.0 ? intersection / union_area : 0.0;
}

struct MatchCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
};

/// Greedy assignment, written as repeated argmax selection: take the
/// highest-confidence unprocessed detection (earliest on ties), give it the
/// best unmatched GT (lowest index on ties) when the IoU reaches the
/// threshold.
inline MatchCounts greedy_match(
    const std::vector<soccerbench::PixelBox>& det_boxes,
    const std::vector<double>& confidences,
    const std::vector<soccerbench::PixelBox>& gt_boxes, double threshold) {
  MatchCounts counts;
  std::vector<bool> det_done(det_boxes.size(), false);
  std::vector<bool> gt_done(gt_boxes.size(), false);
  for (std::size_t step = 0; step < det_boxes.size(); ++step) {
    std::size_t best_det = det_boxes.size();
    for (std::size_t i = 0; i < det_boxes.size(); ++i) {
      if (det_done[i]) continue;
      if (best_det == det_boxes.size() ||
          confidences[i] > confidences[best_det]) {
        best_det = i;
      }
    }
    det_done[best_det] = true;

    std::size_t best_gt = gt_boxes.size();
    double best_iou = -1.0;
    for (std::size_t j = 0; j < gt_boxes.size(); ++j) {
      if (gt_done[j]) continue;
      const double overlap = oracles::iou(det_boxes[best_det], gt_boxes[j]);
      if (overlap > best_iou) {
        best_iou = overlap;
        best_gt = j;
      }
    }
    if (best_gt < gt_boxes.size() && best_iou >= threshold) {
      gt_done[best_gt] = true;
      ++counts.tp;
    } else {
      ++counts.fp;
    }
  }
  for (bool done : gt_done) {
    if (!done) ++counts.fn;
  }
  return counts;
}

/// One frame of a brute-force evaluation instance, already in pixel space.
struct Instance {
  std::vector<soccerbench::PixelBox> det_boxes;
  std::vector<double> confidences;
  std::vector<soccerbench::PixelBox> gt_boxes;
};

/// PR points from re-matching the detections kept at every confidence
/// cutoff, swept over all distinct confidences in descending order.
inline std::vector<std::pair<double, double>> cutoff_pr_points(
    const std::vector<Instance>& frames, double threshold) {
  std::set<double, std::greater<double>> cutoffs;
  std::size_t total_gt = 0;
  for (const auto& frame : frames) {
    total_gt += frame.gt_boxes.size();
    for (double confidence : frame.confidences) cutoffs.insert(confidence);
  }

  std::vector<std::pair<double, double>> points;
  for (double cutoff : cutoffs) {
    std::size_t tp = 0;
    std::size_t fp = 0;
    for (const auto& frame : frames) {
      std::vector<soccerbench::PixelBox> kept_boxes;
      std::vector<double> kept_confidences;
      for (std::size_t i = 0; i < frame.det_boxes.size(); ++i) {
        if (frame.confidences[i] >= cutoff) {
          kept_boxes.push_back(frame.det_boxes[i]);
          kept_confidences.push_back(frame.confidences[i]);
        }
      }
      const MatchCounts counts =
          greedy_match(kept_boxes, kept_confidences, frame.gt_boxes, threshold);
      tp += counts.tp;
      fp += counts.fp;
    }
    const double recall =
        total_gt == 0 ? 0.0
                      : static_cast<double>(tp) / static_cast<double>(total_gt);
    const double precision =
        tp + fp == 0 ? 0.0
                     : static_cast<double>(tp) / static_cast<double>(tp + fp);
    points.emplace_back(recall, precision);
  }
  return points;
}

/// The interpolation definition applied literally: for every grid recall,
/// the best precision among points at or beyond it.
inline double interpolated_ap(
    const std::vector<std::pair<double, double>>& points,
    const std::vector<double>& recall_grid) {
  double sum = 0.0;
  for (double r : recall_grid) {
    double best = 0.0;
    for (const auto& [recall, precision] : points) {
      if (recall >= r && precision > best) best = precision;
    }
    sum += best;
  }
  return sum / static_cast<double>(recall_grid.size());
}

inline std::vector<double> grid_11() {
  std::vector<double> grid;
  for (int i = 0; i <= 10; ++i) grid.push_back(i / 10.0);
  return grid;
}

inline std::vector<double> grid_101() {
  std::vector<double> grid;
  for (int i = 0; i <= 100; ++i) grid.push_back(i / 100.0);
  return grid;
}

/// Ball-point counting done directly: thresholded ball detections greedily
/// take the nearest free GT ball center within the radius.
struct BallInstance {
  std::vector<soccerbench::PixelPoint> det_centers;
  std::vector<double> confidences;
  std::vector<soccerbench::PixelPoint> gt_centers;
};

struct BallTotals {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t correct_frames = 0;
  std::size_t total_frames = 0;
};

inline BallTotals ball_totals(const std::vector<BallInstance>& frames,
                              double radius, double conf_threshold) {
  BallTotals totals;
  totals.total_frames = frames.size();
  for (const auto& frame : frames) {
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < frame.det_centers.size(); ++i) {
      if (frame.confidences[i] >= conf_threshold) kept.push_back(i);
    }
    std::stable_sort(kept.begin(), kept.end(),
                     [&](std::size_t a, std::size_t b) {
                       return frame.confidences[a] > frame.confidences[b];
                     });
    std::vector<bool> gt_done(frame.gt_centers.size(), false);
    std::size_t frame_tp = 0;
    std::size_t frame_fp = 0;
    for (std::size_t det : kept) {
      double best = std::numeric_limits<double>::infinity();
      std::size_t best_gt = frame.gt_centers.size();
      for (std::size_t j = 0; j < frame.gt_centers.size(); ++j) {
        if (gt_done[j]) continue;
        const double dx = frame.det_centers[det].x - frame.gt_centers[j].x;
        const double dy = frame.det_centers[det].y - frame.gt_centers[j].y;
        const double distance = std::hypot(dx, dy);
        if (distance < best) {
          best = distance;
          best_gt = j;
        }
      }
      if (best_gt < frame.gt_centers.size() && best <= radius) {
        gt_done[best_gt] = true;
        ++frame_tp;
      } else {
        ++frame_fp;
      }
    }
    std::size_t frame_fn = 0;
    for (bool done : gt_done) {
      if (!done) ++frame_fn;
    }
    totals.tp += frame_tp;
    totals.fp += frame_fp;
    totals.fn += frame_fn;
    const bool has_ball = !frame.gt_centers.empty();
    if ((has_ball && frame_tp >= 1) || (!has_ball && kept.empty())) {
      ++totals.correct_frames;
    }
  }
  return totals;
}

}  // namespace oracles
