#pragma once

namespace soccerbench {

/// Axis-aligned box in YOLO normalized coordinates (all in [0, 1]).
struct NormalizedBox {
  double cx = 0.0;
  double cy = 0.0;
  double w = 0.0;
  double h = 0.0;
};

/// Axis-aligned box in pixel coordinates, corners inclusive of the extent.
struct PixelBox {
  double x_min = 0.0;
  double y_min = 0.0;
  double x_max = 0.0;
  double y_max = 0.0;

  double width() const { return x_max - x_min; }
  double height() const { return y_max - y_min; }
  double area() const { return width() * height(); }
};

struct PixelPoint {
  double x = 0.0;
  double y = 0.0;
};

/// Maps a normalized box onto a width x height pixel grid.
/// Throws InvalidDims when either dimension is not positive.
PixelBox normalized_to_pixel(const NormalizedBox& box, double image_width,
                             double image_height);

/// Inverse of normalized_to_pixel. Throws InvalidDims on bad dimensions.
NormalizedBox pixel_to_normalized(const PixelBox& box, double image_width,
                                  double image_height);

PixelPoint box_center(const PixelBox& box);

/// Intersection over union of two pixel boxes. Degenerate (zero-area)
/// operands yield 0.
double iou(const PixelBox& a, const PixelBox& b);

}  // namespace soccerbench
