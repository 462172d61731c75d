#pragma once

#include <charconv>
#include <string>
#include <string_view>
#include <vector>

#include "soccerbench/annotation_io.hpp"
#include "soccerbench/errors.hpp"
#include "soccerbench/geometry.hpp"

namespace soccerbench::detail {

// Boxes may overshoot the unit square by this much per edge before parsing
// fails; anything smaller is clamped.
constexpr double kClampSlack = 1e-3;

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    std::size_t start = pos;
    while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t') ++pos;
    if (pos > start) fields.push_back(line.substr(start, pos - start));
  }
  return fields;
}

inline double parse_double(std::string_view token, int line_number) {
  double value = 0.0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) {
    throw MalformedLine(line_number,
                        "expected a number, got '" + std::string(token) + "'");
  }
  return value;
}

inline long parse_class_id(std::string_view token, int line_number) {
  long value = 0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) {
    throw MalformedLine(line_number, "expected an integer class id, got '" +
                                         std::string(token) + "'");
  }
  return value;
}

inline void clamp_axis(double center, double size, int line_number,
                       const char* axis, double& out_center, double& out_size,
                       bool& clamped) {
  if (!(size > 0.0)) {
    throw MalformedLine(line_number, std::string("non-positive box ") + axis +
                                         " size " + std::to_string(size));
  }
  double lo = center - size / 2.0;
  double hi = center + size / 2.0;
  if (lo < -kClampSlack || hi > 1.0 + kClampSlack) {
    throw MalformedLine(line_number, std::string("box ") + axis +
                                         " extent outside the unit square");
  }
  if (lo < 0.0 || hi > 1.0) {
    lo = lo < 0.0 ? 0.0 : lo;
    hi = hi > 1.0 ? 1.0 : hi;
    clamped = true;
  }
  if (!(hi - lo > 0.0)) {
    throw MalformedLine(line_number, std::string("box ") + axis +
                                         " degenerate after clamping");
  }
  out_center = (lo + hi) / 2.0;
  out_size = hi - lo;
}

/// fields[1..4] -> clamped NormalizedBox.
inline NormalizedBox parse_box_fields(
    const std::vector<std::string_view>& fields, int line_number,
    std::vector<ParseWarning>* warnings) {
  const double cx = parse_double(fields[1], line_number);
  const double cy = parse_double(fields[2], line_number);
  const double w = parse_double(fields[3], line_number);
  const double h = parse_double(fields[4], line_number);
  NormalizedBox box;
  bool clamped = false;
  clamp_axis(cx, w, line_number, "x", box.cx, box.w, clamped);
  clamp_axis(cy, h, line_number, "y", box.cy, box.h, clamped);
  if (clamped && warnings) {
    warnings->push_back({line_number, "box clamped to the unit square"});
  }
  return box;
}

/// Clamps a normalized coordinate with the same slack rule as box edges.
inline double clamp_coordinate(double value, int line_number, const char* what,
                               bool& clamped) {
  if (value < -kClampSlack || value > 1.0 + kClampSlack) {
    throw MalformedLine(line_number, std::string(what) +
                                         " outside the unit interval: " +
                                         std::to_string(value));
  }
  if (value < 0.0) {
    clamped = true;
    return 0.0;
  }
  if (value > 1.0) {
    clamped = true;
    return 1.0;
  }
  return value;
}

struct LineCursor {
  std::string_view text;
  std::size_t pos = 0;
  int line_number = 0;

  bool next(std::string_view& line) {
    if (pos >= text.size()) return false;
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    line = text.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos = nl + 1;
    ++line_number;
    return true;
  }
};

inline bool is_skippable(std::string_view line) {
  std::size_t i = 0;
  while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
  return i == line.size() || line[i] == '#';
}

inline void require_frame_dims(int image_width, int image_height) {
  if (image_width <= 0 || image_height <= 0) {
    throw InvalidDims(image_width, image_height);
  }
}

}  // namespace soccerbench::detail
