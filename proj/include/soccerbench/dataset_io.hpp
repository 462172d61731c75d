#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "soccerbench/dataset.hpp"
#include "soccerbench/types.hpp"

namespace soccerbench {

/// Controls how per-frame image dimensions are resolved while loading.
/// Order: sizes/<split>.csv manifest, then the image header, then
/// fallback_size; a frame with none of the three raises IoFailure.
struct LoadOptions {
  std::optional<std::pair<int, int>> fallback_size;
  /// When set, only this split is loaded.
  std::optional<DatasetSplit> only_split;
};

/// Loads a dataset laid out as images/<split>/<id>.jpg,
/// labels/<split>/<id>.txt and optional sizes/<split>.csv. The frame set of
/// a split is the union of image stems, label stems and size-manifest ids;
/// a frame without a label file has zero objects.
DatasetIndex load_dataset(const std::filesystem::path& root,
                          const LoadOptions& options = {});

/// Loads a source-format dataset from the same layout and converts it on
/// the fly: the 7 human classes collapse to Person and 3-field ball point
/// lines become square boxes of the given side.
DatasetIndex convert_raw_dataset(const std::filesystem::path& root,
                                 const LoadOptions& options = {},
                                 double ball_box_side_px = 10.0);

/// Writes labels/<split>/<id>.txt, sizes/<split>.csv and
/// dataset_manifest.txt under root. Images are never written.
void write_dataset(const DatasetIndex& index,
                   const std::filesystem::path& root);

/// Loads every .txt file of a directory as the detections of the frame
/// named by the file stem.
std::vector<FrameDetections> load_detection_dir(
    const std::filesystem::path& dir);

/// Reads width and height from a JPEG or PNG header without decoding
/// pixels. Empty when the format is not recognized.
std::optional<std::pair<int, int>> read_image_size(
    const std::filesystem::path& path);

/// Reads a whole file into a string. Throws IoFailure.
std::string read_text_file(const std::filesystem::path& path);

/// Writes a string to a file, creating parent directories. Throws IoFailure.
void write_text_file(const std::filesystem::path& path,
                     const std::string& content);

}  // namespace soccerbench
