#include "soccerbench/geometry.hpp"

#include <algorithm>

#include "soccerbench/errors.hpp"

namespace soccerbench {

namespace {

void require_dims(double image_width, double image_height) {
  if (!(image_width > 0.0) || !(image_height > 0.0)) {
    throw InvalidDims(image_width, image_height);
  }
}

}  // namespace

PixelBox normalized_to_pixel(const NormalizedBox& box, double image_width,
                             double image_height) {
  require_dims(image_width, image_height);
  PixelBox out;
  out.x_min = (box.cx - box.w / 2.0) * image_width;
  out.x_max = (box.cx + box.w / 2.0) * image_width;
  out.y_min = (box.cy - box.h / 2.0) * image_height;
  out.y_max = (box.cy + box.h / 2.0) * image_height;
  return out;
}

NormalizedBox pixel_to_normalized(const PixelBox& box, double image_width,
                                  double image_height) {
  require_dims(image_width, image_height);
  NormalizedBox out;
  out.cx = (box.x_min + box.x_max) / 2.0 / image_width;
  out.cy = (box.y_min + box.y_max) / 2.0 / image_height;
  out.w = (box.x_max - box.x_min) / image_width;
  out.h = (box.y_max - box.y_min) / image_height;
  return out;
}

PixelPoint box_center(const PixelBox& box) {
  return {(box.x_min + box.x_max) / 2.0, (box.y_min + box.y_max) / 2.0};
}

double iou(const PixelBox& a, const PixelBox& b) {
  const double ix = std::min(a.x_max, b.x_max) - std::max(a.x_min, b.x_min);
  const double iy = std::min(a.y_max, b.y_max) - std::max(a.y_min, b.y_min);
  if (ix <= 0.0 || iy <= 0.0) return 0.0;
  const double intersection = ix * iy;
  const double union_area = a.area() + b.area() - intersection;
  if (union_area <= 0.0) return 0.0;
  return intersection / union_area;
}

}  // namespace soccerbench
