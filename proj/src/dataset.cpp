#include "soccerbench/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "soccerbench/errors.hpp"
#include "soccerbench/geometry.hpp"
#include "parse_util.hpp"

namespace soccerbench {

std::string_view split_name(DatasetSplit split) {
  switch (split) {
    case DatasetSplit::Train:
      return "train";
    case DatasetSplit::Valid:
      return "valid";
    case DatasetSplit::Test:
      return "test";
  }
  return "train";
}

std::optional<DatasetSplit> split_from_name(std::string_view name) {
  if (name == "train") return DatasetSplit::Train;
  if (name == "valid") return DatasetSplit::Valid;
  if (name == "test") return DatasetSplit::Test;
  return std::nullopt;
}

std::size_t DatasetIndex::total_frames() const {
  std::size_t total = 0;
  for (const auto& [split, frames] : splits) total += frames.size();
  return total;
}

ClassLabel consolidate_person_classes(RawHumanClass raw) {
  (void)raw;
  return ClassLabel::Person;
}

double max_person_height(const FrameAnnotations& frame) {
  double max_height = 0.0;
  for (const auto& object : frame.objects) {
    if (object.label != ClassLabel::Person) continue;
    max_height = std::max(max_height, object.box.h * frame.image_height);
  }
  return max_height;
}

DatasetIndex filter_long_shot(const DatasetIndex& index, double threshold_px) {
  if (!(threshold_px > 0.0)) {
    throw ConfigError("height threshold must be positive, got " +
                      std::to_string(threshold_px));
  }
  DatasetIndex out;
  out.source_name = index.source_name;
  out.height_threshold_px = threshold_px;
  for (const auto& [split, frames] : index.splits) {
    auto& kept = out.splits[split];
    for (const auto& frame : frames) {
      if (max_person_height(frame) <= threshold_px) kept.push_back(frame);
    }
  }
  return out;
}

NormalizedBox ball_point_to_box(double center_x_px, double center_y_px,
                                double image_width, double image_height,
                                double box_side_px) {
  if (!(image_width > 0.0) || !(image_height > 0.0)) {
    throw InvalidDims(image_width, image_height);
  }
  if (!(box_side_px > 0.0)) {
    throw Error("ball box side must be positive, got " +
                std::to_string(box_side_px));
  }
  if (center_x_px < 0.0 || center_x_px > image_width || center_y_px < 0.0 ||
      center_y_px > image_height) {
    throw CenterOutOfImage(center_x_px, center_y_px);
  }
  PixelBox box;
  box.x_min = std::max(0.0, center_x_px - box_side_px / 2.0);
  box.x_max = std::min(image_width, center_x_px + box_side_px / 2.0);
  box.y_min = std::max(0.0, center_y_px - box_side_px / 2.0);
  box.y_max = std::min(image_height, center_y_px + box_side_px / 2.0);
  return pixel_to_normalized(box, image_width, image_height);
}

FrameAnnotations crop_annotations(const FrameAnnotations& frame,
                                  const CropRect& crop) {
  if (!(crop.width() > 0.0) || !(crop.height() > 0.0)) {
    throw InvalidCrop("crop window has no area");
  }
  if (crop.x_min < 0.0 || crop.y_min < 0.0 ||
      crop.x_max > frame.image_width || crop.y_max > frame.image_height) {
    throw InvalidCrop("crop window exceeds the image bounds");
  }

  FrameAnnotations out;
  out.frame_id = frame.frame_id;
  out.image_width = static_cast<int>(std::llround(crop.width()));
  out.image_height = static_cast<int>(std::llround(crop.height()));

  for (const auto& object : frame.objects) {
    const PixelBox box =
        normalized_to_pixel(object.box, frame.image_width, frame.image_height);
    PixelBox clipped;
    clipped.x_min = std::max(box.x_min, crop.x_min);
    clipped.y_min = std::max(box.y_min, crop.y_min);
    clipped.x_max = std::min(box.x_max, crop.x_max);
    clipped.y_max = std::min(box.y_max, crop.y_max);
    const double inside_w = clipped.x_max - clipped.x_min;
    const double inside_h = clipped.y_max - clipped.y_min;
    const double inside_area =
        inside_w > 0.0 && inside_h > 0.0 ? inside_w * inside_h : 0.0;
    if (inside_area < 0.5 * box.area()) continue;

    PixelBox shifted;
    shifted.x_min = clipped.x_min - crop.x_min;
    shifted.y_min = clipped.y_min - crop.y_min;
    shifted.x_max = clipped.x_max - crop.x_min;
    shifted.y_max = clipped.y_max - crop.y_min;
    GroundTruthObject kept;
    kept.label = object.label;
    kept.box = pixel_to_normalized(shifted, crop.width(), crop.height());
    out.objects.push_back(kept);
  }
  return out;
}

StatsSummary dataset_stats(const DatasetIndex& index,
                           double height_bin_width_px) {
  if (!(height_bin_width_px > 0.0)) {
    throw ConfigError("height bin width must be positive, got " +
                      std::to_string(height_bin_width_px));
  }
  StatsSummary stats;
  stats.height_bin_width_px = height_bin_width_px;
  for (const auto& [split, frames] : index.splits) {
    SplitStats& split_stats = stats.splits[split];
    split_stats.frame_count = frames.size();
    for (const auto& frame : frames) {
      split_stats.resolution_counts[{frame.image_width,
                                     frame.image_height}]++;
      const double height = max_person_height(frame);
      const int bin = static_cast<int>(std::floor(height /
                                                  height_bin_width_px) *
                                       height_bin_width_px);
      split_stats.height_bins[bin]++;
      const bool has_ball =
          std::any_of(frame.objects.begin(), frame.objects.end(),
                      [](const GroundTruthObject& o) {
                        return o.label == ClassLabel::Ball;
                      });
      if (has_ball) split_stats.frames_with_ball++;
    }
    split_stats.ball_fraction =
        frames.empty() ? 0.0
                       : static_cast<double>(split_stats.frames_with_ball) /
                             static_cast<double>(frames.size());
  }
  return stats;
}

RawFrame parse_raw_label_file(std::string_view text, std::string frame_id,
                              std::vector<ParseWarning>* warnings) {
  RawFrame frame;
  frame.frame_id = std::move(frame_id);

  detail::LineCursor cursor{text};
  std::string_view line;
  while (cursor.next(line)) {
    if (detail::is_skippable(line)) continue;
    const auto fields = detail::split_fields(line);
    if (fields.size() != 3 && fields.size() != 5) {
      throw MalformedLine(cursor.line_number,
                          "expected 3 or 5 fields, got " +
                              std::to_string(fields.size()));
    }
    const long class_id =
        detail::parse_class_id(fields[0], cursor.line_number);
    if (class_id < 0 || class_id > 7) {
      throw UnknownClass(cursor.line_number, class_id);
    }
    RawObject object;
    object.class_id = static_cast<int>(class_id);
    if (fields.size() == 3) {
      if (class_id != 0) {
        throw MalformedLine(cursor.line_number,
                            "point form is only valid for the ball class");
      }
      bool clamped = false;
      object.box.cx = detail::clamp_coordinate(
          detail::parse_double(fields[1], cursor.line_number),
          cursor.line_number, "ball center x", clamped);
      object.box.cy = detail::clamp_coordinate(
          detail::parse_double(fields[2], cursor.line_number),
          cursor.line_number, "ball center y", clamped);
      if (clamped && warnings) {
        warnings->push_back(
            {cursor.line_number, "ball point clamped to the unit square"});
      }
      object.is_point = true;
    } else {
      object.box =
          detail::parse_box_fields(fields, cursor.line_number, warnings);
    }
    frame.objects.push_back(object);
  }
  return frame;
}

FrameAnnotations convert_raw_frame(const RawFrame& raw, int image_width,
                                   int image_height,
                                   double ball_box_side_px) {
  detail::require_frame_dims(image_width, image_height);
  FrameAnnotations frame;
  frame.frame_id = raw.frame_id;
  frame.image_width = image_width;
  frame.image_height = image_height;

  for (const auto& object : raw.objects) {
    GroundTruthObject converted;
    if (object.class_id == 0) {
      converted.label = ClassLabel::Ball;
      if (object.is_point) {
        converted.box = ball_point_to_box(object.box.cx * image_width,
                                          object.box.cy * image_height,
                                          image_width, image_height,
                                          ball_box_side_px);
      } else {
        converted.box = object.box;
      }
    } else {
      converted.label = consolidate_person_classes(
          static_cast<RawHumanClass>(object.class_id));
      converted.box = object.box;
    }
    frame.objects.push_back(converted);
  }
  return frame;
}

}  // namespace soccerbench
