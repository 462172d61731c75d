#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "soccerbench/types.hpp"

namespace soccerbench {

/// Non-fatal note produced while parsing, e.g. a box that was clamped back
/// into the unit square.
struct ParseWarning {
  int line_number = 0;
  std::string message;
};

/// Parses YOLO label text: one `class cx cy w h` record per line, `#` starts
/// a comment, blank lines are skipped. Coordinates are normalized; a box may
/// overshoot [0, 1] by at most 1e-3 per edge and is clamped (with a warning),
/// anything beyond that is a MalformedLine.
FrameAnnotations parse_label_file(std::string_view text, int image_width,
                                  int image_height, std::string frame_id,
                                  std::vector<ParseWarning>* warnings = nullptr);

/// Parses detection text: `class cx cy w h confidence` per line, same comment
/// and clamping rules as labels. Confidence must lie in [0, 1]. Input order
/// is preserved.
FrameDetections parse_detection_file(std::string_view text, int image_width,
                                     int image_height, std::string frame_id,
                                     std::vector<ParseWarning>* warnings = nullptr);

/// Detection boxes are normalized, so parsing does not require the pixel
/// grid; this overload skips the dimension check.
FrameDetections parse_detection_file(std::string_view text,
                                     std::string frame_id,
                                     std::vector<ParseWarning>* warnings = nullptr);

/// Serializes annotations back to label text, six decimals per coordinate,
/// one trailing newline. Round-trips through parse_label_file to within 1e-6.
std::string serialize_label_file(const FrameAnnotations& frame);

/// Serializes detections to `class cx cy w h confidence` lines, six decimals.
std::string serialize_detection_file(const FrameDetections& frame);

}  // namespace soccerbench
