#include "soccerbench/annotation_io.hpp"

#include <cstdio>
#include <string>
#include <string_view>

#include "soccerbench/errors.hpp"
#include "parse_util.hpp"

namespace soccerbench {

ClassLabel class_from_id(long id, int line_number) {
  switch (id) {
    case 0:
      return ClassLabel::Ball;
    case 1:
      return ClassLabel::Person;
    default:
      throw UnknownClass(line_number, id);
  }
}

int class_to_id(ClassLabel label) { return static_cast<int>(label); }

namespace {

void append_box(std::string& out, const NormalizedBox& box) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), " %.6f %.6f %.6f %.6f", box.cx, box.cy,
                box.w, box.h);
  out += buf;
}

}  // namespace

FrameAnnotations parse_label_file(std::string_view text, int image_width,
                                  int image_height, std::string frame_id,
                                  std::vector<ParseWarning>* warnings) {
  detail::require_frame_dims(image_width, image_height);
  FrameAnnotations frame;
  frame.frame_id = std::move(frame_id);
  frame.image_width = image_width;
  frame.image_height = image_height;

  detail::LineCursor cursor{text};
  std::string_view line;
  while (cursor.next(line)) {
    if (detail::is_skippable(line)) continue;
    const auto fields = detail::split_fields(line);
    if (fields.size() != 5) {
      throw MalformedLine(cursor.line_number,
                          "expected 5 fields, got " +
                              std::to_string(fields.size()));
    }
    GroundTruthObject object;
    object.label = class_from_id(
        detail::parse_class_id(fields[0], cursor.line_number),
        cursor.line_number);
    object.box = detail::parse_box_fields(fields, cursor.line_number, warnings);
    frame.objects.push_back(object);
  }
  return frame;
}

FrameDetections parse_detection_file(std::string_view text, int image_width,
                                     int image_height, std::string frame_id,
                                     std::vector<ParseWarning>* warnings) {
  detail::require_frame_dims(image_width, image_height);
  return parse_detection_file(text, std::move(frame_id), warnings);
}

FrameDetections parse_detection_file(std::string_view text,
                                     std::string frame_id,
                                     std::vector<ParseWarning>* warnings) {
  FrameDetections frame;
  frame.frame_id = std::move(frame_id);

  detail::LineCursor cursor{text};
  std::string_view line;
  while (cursor.next(line)) {
    if (detail::is_skippable(line)) continue;
    const auto fields = detail::split_fields(line);
    if (fields.size() != 6) {
      throw MalformedLine(cursor.line_number,
                          "expected 6 fields, got " +
                              std::to_string(fields.size()));
    }
    Detection det;
    det.label = class_from_id(
        detail::parse_class_id(fields[0], cursor.line_number),
        cursor.line_number);
    det.box = detail::parse_box_fields(fields, cursor.line_number, warnings);
    det.confidence = detail::parse_double(fields[5], cursor.line_number);
    if (det.confidence < 0.0 || det.confidence > 1.0) {
      throw ConfidenceOutOfRange(cursor.line_number, det.confidence);
    }
    frame.detections.push_back(det);
  }
  return frame;
}

std::string serialize_label_file(const FrameAnnotations& frame) {
  std::string out;
  for (const auto& object : frame.objects) {
    out += std::to_string(class_to_id(object.label));
    append_box(out, object.box);
    out += '\n';
  }
  return out;
}

std::string serialize_detection_file(const FrameDetections& frame) {
  std::string out;
  for (const auto& det : frame.detections) {
    out += std::to_string(class_to_id(det.label));
    append_box(out, det.box);
    char buf[16];
    std::snprintf(buf, sizeof(buf), " %.6f", det.confidence);
    out += buf;
    out += '\n';
  }
  return out;
}

}  // namespace soccerbench
