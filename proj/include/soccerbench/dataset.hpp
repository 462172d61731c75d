#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "soccerbench/annotation_io.hpp"
#include "soccerbench/types.hpp"

namespace soccerbench {

/// The seven human classes of the source annotations.
enum class RawHumanClass : int {
  LeftPlayer = 1,
  RightPlayer = 2,
  LeftGoalkeeper = 3,
  RightGoalkeeper = 4,
  MainReferee = 5,
  SideReferee = 6,
  Staff = 7,
};

enum class DatasetSplit : int {
  Train = 0,
  Valid = 1,
  Test = 2,
};

std::string_view split_name(DatasetSplit split);
std::optional<DatasetSplit> split_from_name(std::string_view name);

/// All three splits in order, convenient for iteration.
inline constexpr DatasetSplit kAllSplits[] = {DatasetSplit::Train,
                                              DatasetSplit::Valid,
                                              DatasetSplit::Test};

/// A dataset as three splits of annotated frames plus provenance.
struct DatasetIndex {
  std::string source_name;
  std::optional<double> height_threshold_px;
  std::map<DatasetSplit, std::vector<FrameAnnotations>> splits;

  std::size_t total_frames() const;
};

struct CropRect {
  double x_min = 0.0;
  double y_min = 0.0;
  double x_max = 0.0;
  double y_max = 0.0;

  double width() const { return x_max - x_min; }
  double height() const { return y_max - y_min; }
};

struct SplitStats {
  std::size_t frame_count = 0;
  /// (width, height) -> number of frames at that resolution.
  std::map<std::pair<int, int>, std::size_t> resolution_counts;
  /// Bin lower bound in pixels -> number of frames whose tallest person
  /// falls in [bound, bound + bin_width).
  std::map<int, std::size_t> height_bins;
  std::size_t frames_with_ball = 0;
  double ball_fraction = 0.0;
};

struct StatsSummary {
  double height_bin_width_px = 10.0;
  std::map<DatasetSplit, SplitStats> splits;
};

/// Every source human class collapses to Person.
ClassLabel consolidate_person_classes(RawHumanClass raw);

/// Height in pixels of the tallest Person box; 0 when the frame has none.
double max_person_height(const FrameAnnotations& frame);

/// Keeps the frames whose tallest person is at most threshold_px tall.
/// Frames without persons always pass. Splits are preserved.
DatasetIndex filter_long_shot(const DatasetIndex& index,
                              double threshold_px = 250.0);

/// Expands a ball point annotation into a square box of side box_side_px,
/// clamped to the image, returned normalized. Throws CenterOutOfImage when
/// the point lies outside the image and InvalidDims on bad inputs.
NormalizedBox ball_point_to_box(double center_x_px, double center_y_px,
                                double image_width, double image_height,
                                double box_side_px = 10.0);

/// Re-expresses a frame's objects relative to a crop window. An object is
/// kept iff at least half of its pixel area lies inside the crop; kept boxes
/// are clipped to the crop and renormalized to the crop dimensions (rounded
/// to whole pixels). Throws InvalidCrop on a degenerate or out-of-bounds
/// window.
FrameAnnotations crop_annotations(const FrameAnnotations& frame,
                                  const CropRect& crop);

StatsSummary dataset_stats(const DatasetIndex& index,
                           double height_bin_width_px = 10.0);

/// One object of a source label file before consolidation. Ball lines may
/// carry a full box or just a center point (3-field form).
struct RawObject {
  int class_id = 0;
  NormalizedBox box;
  bool is_point = false;
};

struct RawFrame {
  std::string frame_id;
  std::vector<RawObject> objects;
};

/// Parses a source label file: `class cx cy w h` lines with class 0 = ball
/// and 1..7 = the human classes, plus the 3-field `0 cx cy` ball-point form.
RawFrame parse_raw_label_file(std::string_view text, std::string frame_id,
                              std::vector<ParseWarning>* warnings = nullptr);

/// Applies class consolidation and point-to-box conversion, producing a
/// two-class frame on the given pixel grid.
FrameAnnotations convert_raw_frame(const RawFrame& raw, int image_width,
                                   int image_height,
                                   double ball_box_side_px = 10.0);

}  // namespace soccerbench
