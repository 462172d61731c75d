#include "soccerbench/config.hpp"

#include <string>

#include "soccerbench/dataset_io.hpp"
#include "soccerbench/errors.hpp"
#include "parse_util.hpp"

namespace soccerbench {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) {
    s.remove_suffix(1);
  }
  return s;
}

double parse_config_number(std::string_view key, std::string_view value) {
  try {
    return detail::parse_double(value, 1);
  } catch (const MalformedLine&) {
    throw ConfigError("key '" + std::string(key) + "' expects a number, got '" +
                      std::string(value) + "'");
  }
}

}  // namespace

EvalConfig apply_config_text(std::string_view text, EvalConfig base) {
  detail::LineCursor cursor{text};
  std::string_view line;
  while (cursor.next(line)) {
    if (detail::is_skippable(line)) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("expected key=value on line " +
                        std::to_string(cursor.line_number));
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError("empty key or value on line " +
                        std::to_string(cursor.line_number));
    }

    if (key == "iou_threshold") {
      const double v = parse_config_number(key, value);
      if (!(v > 0.0) || v > 1.0) {
        throw ConfigError("iou_threshold must lie in (0, 1], got " +
                          std::string(value));
      }
      base.iou_threshold_ap11 = v;
    } else if (key == "ball_radius_px") {
      const double v = parse_config_number(key, value);
      if (!(v > 0.0)) {
        throw ConfigError("ball_radius_px must be positive, got " +
                          std::string(value));
      }
      base.ball_radius_px = v;
    } else if (key == "ball_conf_threshold") {
      const double v = parse_config_number(key, value);
      if (v < 0.0 || v > 1.0) {
        throw ConfigError("ball_conf_threshold must lie in [0, 1], got " +
                          std::string(value));
      }
      base.ball_confidence_threshold = v;
    } else if (key == "coco") {
      if (value == "true") {
        base.compute_coco = true;
      } else if (value == "false") {
        base.compute_coco = false;
      } else {
        throw ConfigError("key 'coco' expects true or false, got '" +
                          std::string(value) + "'");
      }
    } else {
      throw ConfigError("unknown key '" + std::string(key) + "'");
    }
  }
  return base;
}

EvalConfig load_config_file(const std::filesystem::path& path,
                            EvalConfig base) {
  return apply_config_text(read_text_file(path), std::move(base));
}

}  // namespace soccerbench
