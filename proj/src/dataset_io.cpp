#include "soccerbench/dataset_io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "soccerbench/annotation_io.hpp"
#include "soccerbench/errors.hpp"
#include "parse_util.hpp"

namespace soccerbench {

namespace fs = std::filesystem;

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoFailure("failed to read " + path.string());
  return buffer.str();
}

void write_text_file(const fs::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) {
    fs::create_directories(path.parent_path(), ec);
    if (ec) {
      throw IoFailure("cannot create " + path.parent_path().string() + ": " +
                      ec.message());
    }
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoFailure("cannot open " + path.string() + " for writing");
  out.write(content.data(),
            static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out.good()) throw IoFailure("failed to write " + path.string());
}

namespace {

std::uint32_t read_be32(const unsigned char* p) {
  return (static_cast<std::uint32_t>(p[0]) << 24) |
         (static_cast<std::uint32_t>(p[1]) << 16) |
         (static_cast<std::uint32_t>(p[2]) << 8) |
         static_cast<std::uint32_t>(p[3]);
}

std::uint16_t read_be16(const unsigned char* p) {
  return static_cast<std::uint16_t>((p[0] << 8) | p[1]);
}

std::optional<std::pair<int, int>> png_size(const std::string& data) {
  static const unsigned char signature[8] = {0x89, 'P',  'N',  'G',
                                             0x0D, 0x0A, 0x1A, 0x0A};
  if (data.size() < 24) return std::nullopt;
  const auto* bytes = reinterpret_cast<const unsigned char*>(data.data());
  if (!std::equal(signature, signature + 8, bytes)) return std::nullopt;
  if (data.compare(12, 4, "IHDR") != 0) return std::nullopt;
  const int width = static_cast<int>(read_be32(bytes + 16));
  const int height = static_cast<int>(read_be32(bytes + 20));
  if (width <= 0 || height <= 0) return std::nullopt;
  return std::make_pair(width, height);
}

bool is_jpeg_sof(unsigned char marker) {
  return marker >= 0xC0 && marker <= 0xCF && marker != 0xC4 &&
         marker != 0xC8 && marker != 0xCC;
}

std::optional<std::pair<int, int>> jpeg_size(const std::string& data) {
  const auto* bytes = reinterpret_cast<const unsigned char*>(data.data());
  const std::size_t size = data.size();
  if (size < 4 || bytes[0] != 0xFF || bytes[1] != 0xD8) return std::nullopt;
  std::size_t pos = 2;
  while (pos + 1 < size) {
    if (bytes[pos] != 0xFF) return std::nullopt;
    unsigned char marker = bytes[pos + 1];
    pos += 2;
    while (marker == 0xFF && pos < size) {
      marker = bytes[pos];
      ++pos;
    }
    // Standalone markers carry no payload.
    if (marker == 0x01 || (marker >= 0xD0 && marker <= 0xD9)) continue;
    if (pos + 1 >= size) return std::nullopt;
    const std::uint16_t length = read_be16(bytes + pos);
    if (length < 2 || pos + length > size) return std::nullopt;
    if (is_jpeg_sof(marker)) {
      if (length < 7) return std::nullopt;
      const int height = read_be16(bytes + pos + 3);
      const int width = read_be16(bytes + pos + 5);
      if (width <= 0 || height <= 0) return std::nullopt;
      return std::make_pair(width, height);
    }
    pos += length;
  }
  return std::nullopt;
}

std::string lower_extension(const fs::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return ext;
}

bool is_image_extension(const std::string& ext) {
  return ext == ".jpg" || ext == ".jpeg" || ext == ".png";
}

/// sizes/<split>.csv: header `frame_id,width,height`, one row per frame.
std::map<std::string, std::pair<int, int>> parse_sizes_csv(
    const std::string& text, const std::string& path_for_errors) {
  std::map<std::string, std::pair<int, int>> sizes;
  detail::LineCursor cursor{text};
  std::string_view line;
  bool saw_header = false;
  try {
    while (cursor.next(line)) {
      if (line.empty()) continue;
      if (!saw_header) {
        if (line != "frame_id,width,height") {
          throw MalformedRow(cursor.line_number,
                             "expected header 'frame_id,width,height'");
        }
        saw_header = true;
        continue;
      }
      const std::size_t first = line.find(',');
      const std::size_t second =
          first == std::string_view::npos ? first : line.find(',', first + 1);
      if (first == std::string_view::npos ||
          second == std::string_view::npos ||
          line.find(',', second + 1) != std::string_view::npos) {
        throw MalformedRow(cursor.line_number, "expected 3 columns");
      }
      const std::string frame_id(line.substr(0, first));
      if (frame_id.empty()) {
        throw MalformedRow(cursor.line_number, "empty frame id");
      }
      const long width = detail::parse_class_id(
          line.substr(first + 1, second - first - 1), cursor.line_number);
      const long height = detail::parse_class_id(line.substr(second + 1),
                                                 cursor.line_number);
      if (width <= 0 || height <= 0) {
        throw MalformedRow(cursor.line_number, "non-positive image size");
      }
      if (!sizes.emplace(frame_id, std::make_pair(static_cast<int>(width),
                                                  static_cast<int>(height)))
               .second) {
        throw MalformedRow(cursor.line_number,
                           "duplicate frame id '" + frame_id + "'");
      }
    }
    if (!saw_header) {
      throw MalformedRow(1, "expected header 'frame_id,width,height'");
    }
  } catch (const LineError& e) {
    throw MalformedLabel(path_for_errors, e.what());
  }
  return sizes;
}

std::optional<fs::path> find_image_file(const fs::path& image_dir,
                                        const std::string& frame_id) {
  for (const char* ext : {".jpg", ".jpeg", ".png"}) {
    fs::path candidate = image_dir / (frame_id + ext);
    std::error_code ec;
    if (fs::is_regular_file(candidate, ec)) return candidate;
  }
  return std::nullopt;
}

void read_manifest_provenance(const fs::path& manifest_path,
                              DatasetIndex& index) {
  std::error_code ec;
  if (!fs::is_regular_file(manifest_path, ec)) return;
  const std::string text = read_text_file(manifest_path);
  detail::LineCursor cursor{text};
  std::string_view line;
  while (cursor.next(line)) {
    const std::size_t colon = line.find(':');
    if (colon == std::string_view::npos) continue;
    std::string_view key = line.substr(0, colon);
    std::string_view value = line.substr(colon + 1);
    while (!value.empty() && value.front() == ' ') value.remove_prefix(1);
    if (key == "source") {
      index.source_name = std::string(value);
    } else if (key == "height_threshold_px") {
      try {
        index.height_threshold_px = detail::parse_double(value, 1);
      } catch (const Error&) {
        // Provenance is informational; a bad value is ignored.
      }
    }
  }
}

std::string format_threshold(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", value);
  return buf;
}

}  // namespace

std::optional<std::pair<int, int>> read_image_size(const fs::path& path) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) return std::nullopt;
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  // 64 KiB covers the metadata segments that precede a JPEG SOF in practice.
  std::string head(64 * 1024, '\0');
  in.read(head.data(), static_cast<std::streamsize>(head.size()));
  head.resize(static_cast<std::size_t>(in.gcount()));
  if (auto size = png_size(head)) return size;
  return jpeg_size(head);
}

namespace {

struct FrameSource {
  std::string frame_id;
  std::pair<int, int> dims;
  std::optional<fs::path> label_path;
};

/// The frame set of a split is the union of size-manifest ids, label stems
/// and image stems, returned sorted by frame id with dimensions resolved.
std::vector<FrameSource> enumerate_split(const fs::path& root,
                                         DatasetSplit split,
                                         const LoadOptions& options) {
  std::error_code ec;
  const std::string split_dir(split_name(split));
  const fs::path labels_dir = root / "labels" / split_dir;
  const fs::path images_dir = root / "images" / split_dir;
  const fs::path sizes_path = root / "sizes" / (split_dir + ".csv");

  std::map<std::string, std::pair<int, int>> sizes;
  if (fs::is_regular_file(sizes_path, ec)) {
    sizes = parse_sizes_csv(read_text_file(sizes_path), sizes_path.string());
  }

  std::set<std::string> frame_ids;
  for (const auto& [frame_id, size] : sizes) frame_ids.insert(frame_id);
  if (fs::is_directory(labels_dir, ec)) {
    for (const auto& entry : fs::directory_iterator(labels_dir)) {
      if (entry.is_regular_file() && lower_extension(entry.path()) == ".txt") {
        frame_ids.insert(entry.path().stem().string());
      }
    }
  }
  if (fs::is_directory(images_dir, ec)) {
    for (const auto& entry : fs::directory_iterator(images_dir)) {
      if (entry.is_regular_file() &&
          is_image_extension(lower_extension(entry.path()))) {
        frame_ids.insert(entry.path().stem().string());
      }
    }
  }

  std::vector<FrameSource> sources;
  sources.reserve(frame_ids.size());
  for (const std::string& frame_id : frame_ids) {
    FrameSource source;
    source.frame_id = frame_id;
    if (auto it = sizes.find(frame_id); it != sizes.end()) {
      source.dims = it->second;
    } else if (auto image = find_image_file(images_dir, frame_id)) {
      auto sniffed = read_image_size(*image);
      if (!sniffed) {
        throw IoFailure("cannot read image size from " + image->string());
      }
      source.dims = *sniffed;
    } else if (options.fallback_size) {
      source.dims = *options.fallback_size;
    } else {
      throw IoFailure("cannot determine image size for frame '" + frame_id +
                      "' in split '" + split_dir +
                      "': no sizes entry, no readable image, no fallback");
    }
    const fs::path label_path = labels_dir / (frame_id + ".txt");
    if (fs::is_regular_file(label_path, ec)) source.label_path = label_path;
    sources.push_back(std::move(source));
  }
  return sources;
}

void require_dataset_root(const fs::path& root) {
  std::error_code ec;
  if (!fs::is_directory(root, ec)) {
    throw IoFailure("dataset root is not a directory: " + root.string());
  }
}

std::string root_source_name(const fs::path& root) {
  return root.filename().empty() ? root.parent_path().filename().string()
                                 : root.filename().string();
}

}  // namespace

DatasetIndex load_dataset(const fs::path& root, const LoadOptions& options) {
  require_dataset_root(root);
  DatasetIndex index;
  index.source_name = root_source_name(root);
  read_manifest_provenance(root / "dataset_manifest.txt", index);

  for (DatasetSplit split : kAllSplits) {
    if (options.only_split && *options.only_split != split) continue;
    auto& frames = index.splits[split];
    for (const FrameSource& source : enumerate_split(root, split, options)) {
      if (source.label_path) {
        try {
          frames.push_back(parse_label_file(read_text_file(*source.label_path),
                                            source.dims.first,
                                            source.dims.second,
                                            source.frame_id));
        } catch (const LineError& e) {
          throw MalformedLabel(source.label_path->string(), e.what());
        }
      } else {
        FrameAnnotations frame;
        frame.frame_id = source.frame_id;
        frame.image_width = source.dims.first;
        frame.image_height = source.dims.second;
        frames.push_back(std::move(frame));
      }
    }
  }
  return index;
}

DatasetIndex convert_raw_dataset(const fs::path& root,
                                 const LoadOptions& options,
                                 double ball_box_side_px) {
  require_dataset_root(root);
  DatasetIndex index;
  index.source_name = root_source_name(root);

  for (DatasetSplit split : kAllSplits) {
    if (options.only_split && *options.only_split != split) continue;
    auto& frames = index.splits[split];
    for (const FrameSource& source : enumerate_split(root, split, options)) {
      RawFrame raw;
      raw.frame_id = source.frame_id;
      if (source.label_path) {
        try {
          raw = parse_raw_label_file(read_text_file(*source.label_path),
                                     source.frame_id);
        } catch (const LineError& e) {
          throw MalformedLabel(source.label_path->string(), e.what());
        }
      }
      frames.push_back(convert_raw_frame(raw, source.dims.first,
                                         source.dims.second,
                                         ball_box_side_px));
    }
  }
  return index;
}

void write_dataset(const DatasetIndex& index, const fs::path& root) {
  std::map<DatasetSplit, std::size_t> counts;
  for (const auto& [split, frames] : index.splits) {
    const std::string split_dir(split_name(split));
    std::set<std::string> seen;
    std::string sizes_csv = "frame_id,width,height\n";
    std::vector<const FrameAnnotations*> ordered;
    ordered.reserve(frames.size());
    for (const auto& frame : frames) {
      if (!seen.insert(frame.frame_id).second) {
        throw Error("duplicate frame id '" + frame.frame_id + "' in split '" +
                    split_dir + "'");
      }
      ordered.push_back(&frame);
    }
    std::sort(ordered.begin(), ordered.end(),
              [](const FrameAnnotations* a, const FrameAnnotations* b) {
                return a->frame_id < b->frame_id;
              });
    for (const FrameAnnotations* frame : ordered) {
      write_text_file(root / "labels" / split_dir / (frame->frame_id + ".txt"),
                      serialize_label_file(*frame));
      sizes_csv += frame->frame_id + "," +
                   std::to_string(frame->image_width) + "," +
                   std::to_string(frame->image_height) + "\n";
    }
    write_text_file(root / "sizes" / (split_dir + ".csv"), sizes_csv);
    counts[split] = frames.size();
  }

  std::string manifest = "source: " + index.source_name + "\n";
  if (index.height_threshold_px) {
    manifest +=
        "height_threshold_px: " + format_threshold(*index.height_threshold_px) +
        "\n";
  }
  for (DatasetSplit split : kAllSplits) {
    const auto it = counts.find(split);
    manifest += std::string(split_name(split)) + "_frames: " +
                std::to_string(it == counts.end() ? 0 : it->second) + "\n";
  }
  write_text_file(root / "dataset_manifest.txt", manifest);
}

std::vector<FrameDetections> load_detection_dir(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    throw IoFailure("detections directory not found: " + dir.string());
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && lower_extension(entry.path()) == ".txt") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<FrameDetections> detections;
  detections.reserve(files.size());
  for (const fs::path& file : files) {
    try {
      detections.push_back(
          parse_detection_file(read_text_file(file), file.stem().string()));
    } catch (const LineError& e) {
      throw MalformedLabel(file.string(), e.what());
    }
  }
  return detections;
}

}  // namespace soccerbench
