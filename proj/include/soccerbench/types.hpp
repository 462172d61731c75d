#pragma once

#include <string>
#include <vector>

#include "soccerbench/geometry.hpp"

namespace soccerbench {

/// The two classes of the benchmark dataset. Values match the label files.
enum class ClassLabel : int {
  Ball = 0,
  Person = 1,
};

ClassLabel class_from_id(long id, int line_number);
int class_to_id(ClassLabel label);

struct GroundTruthObject {
  ClassLabel label = ClassLabel::Person;
  NormalizedBox box;
};

struct Detection {
  ClassLabel label = ClassLabel::Person;
  NormalizedBox box;
  double confidence = 0.0;
};

/// All ground-truth objects of one frame plus the pixel grid they live on.
struct FrameAnnotations {
  std::string frame_id;
  int image_width = 0;
  int image_height = 0;
  std::vector<GroundTruthObject> objects;
};

/// All detector outputs for one frame, in file order.
struct FrameDetections {
  std::string frame_id;
  std::vector<Detection> detections;
};

}  // namespace soccerbench
