#pragma once

#include <filesystem>
#include <string_view>

#include "soccerbench/metrics.hpp"

namespace soccerbench {

/// Applies a flat key=value config text on top of a base config. Recognized
/// keys: iou_threshold, ball_radius_px, ball_conf_threshold, coco. `#`
/// starts a comment. Unknown keys and unparseable values raise ConfigError.
EvalConfig apply_config_text(std::string_view text, EvalConfig base = {});

/// apply_config_text over a file's content. Throws IoFailure.
EvalConfig load_config_file(const std::filesystem::path& path,
                            EvalConfig base = {});

}  // namespace soccerbench
