#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "soccerbench/config.hpp"
#include "soccerbench/dataset.hpp"
#include "soccerbench/dataset_io.hpp"
#include "soccerbench/errors.hpp"
#include "soccerbench/metrics.hpp"
#include "soccerbench/report.hpp"
#include "soccerbench/timing.hpp"

namespace sb = soccerbench;

namespace {

std::pair<int, int> parse_image_size(const std::string& text) {
  int width = 0;
  int height = 0;
  char extra = 0;
  if (std::sscanf(text.c_str(), "%dx%d%c", &width, &height, &extra) != 2 ||
      width <= 0 || height <= 0) {
    throw sb::ConfigError("expected WxH with positive integers, got '" +
                          text + "'");
  }
  return {width, height};
}

const CLI::Validator kImageSizeValidator{
    [](std::string& input) -> std::string {
      int width = 0;
      int height = 0;
      char extra = 0;
      if (std::sscanf(input.c_str(), "%dx%d%c", &width, &height, &extra) !=
              2 ||
          width <= 0 || height <= 0) {
        return "expected WxH with positive integers, got '" + input + "'";
      }
      return {};
    },
    "WXH"};

struct CommonDatasetArgs {
  std::string input;
  std::string image_size;

  sb::LoadOptions load_options(
      std::optional<sb::DatasetSplit> only_split = std::nullopt) const {
    sb::LoadOptions options;
    if (!image_size.empty()) {
      options.fallback_size = parse_image_size(image_size);
    }
    options.only_split = only_split;
    return options;
  }
};

void print_split_counts(const sb::DatasetIndex& index) {
  for (sb::DatasetSplit split : sb::kAllSplits) {
    const auto it = index.splits.find(split);
    if (it == index.splits.end() || it->second.empty()) continue;
    std::cout << sb::split_name(split) << ": " << it->second.size()
              << " frames\n";
  }
}

void print_filter_counts(const sb::DatasetIndex& before,
                         const sb::DatasetIndex& after) {
  for (sb::DatasetSplit split : sb::kAllSplits) {
    const auto b = before.splits.find(split);
    const auto a = after.splits.find(split);
    if (b == before.splits.end() && a == after.splits.end()) continue;
    const std::size_t n_before = b == before.splits.end() ? 0 : b->second.size();
    const std::size_t n_after = a == after.splits.end() ? 0 : a->second.size();
    if (n_before == 0 && n_after == 0) continue;
    std::cout << sb::split_name(split) << ": " << n_before << " -> "
              << n_after << "\n";
  }
}

void emit(const std::string& content, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << content;
  } else {
    sb::write_text_file(output_path, content);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Benchmark toolkit for long-shot soccer player/ball detection"};
  app.require_subcommand(1);

  std::string config_path;
  int threads = 1;
  bool quiet = false;
  app.add_option("--config", config_path,
                 "Evaluation config file (key=value lines)");
  app.add_option("--threads", threads, "Worker threads for evaluation")
      ->check(CLI::PositiveNumber);
  app.add_flag("--quiet", quiet, "Suppress progress output");

  // convert
  auto* convert = app.add_subcommand(
      "convert", "Convert source labels (7 human classes, ball points) to "
                 "the two-class dataset");
  convert->fallthrough();
  CommonDatasetArgs convert_args;
  std::string convert_output;
  std::string convert_source_name;
  double ball_box_size = 10.0;
  convert->add_option("--input", convert_args.input, "Source dataset root")
      ->required();
  convert->add_option("--output", convert_output, "Output dataset root")
      ->required();
  convert->add_option("--ball-box-size", ball_box_size,
                      "Square box side for ball points, in pixels")
      ->check(CLI::PositiveNumber);
  convert->add_option("--image-size", convert_args.image_size,
                      "Fallback image size when neither sizes/*.csv nor an "
                      "image provides one")
      ->check(kImageSizeValidator);
  convert->add_option("--source-name", convert_source_name,
                      "Provenance name recorded in the manifest");

  // filter
  auto* filter = app.add_subcommand(
      "filter", "Keep the long-shot frames (tallest person below a height "
                "threshold)");
  filter->fallthrough();
  CommonDatasetArgs filter_args;
  std::string filter_output;
  double height_threshold = 250.0;
  filter->add_option("--input", filter_args.input, "Input dataset root")
      ->required();
  filter->add_option("--output", filter_output, "Output dataset root")
      ->required();
  filter->add_option("--height-threshold", height_threshold,
                     "Maximum person height in pixels (inclusive)")
      ->check(CLI::PositiveNumber);
  filter->add_option("--image-size", filter_args.image_size,
                     "Fallback image size")
      ->check(kImageSizeValidator);

  // stats
  auto* stats = app.add_subcommand("stats", "Print dataset statistics");
  stats->fallthrough();
  CommonDatasetArgs stats_args;
  std::string stats_split;
  std::string stats_format = "text";
  std::string stats_output;
  double bin_width = 10.0;
  stats->add_option("--input", stats_args.input, "Dataset root")->required();
  stats->add_option("--split", stats_split, "Restrict to one split")
      ->check(CLI::IsMember({"train", "valid", "test"}));
  stats->add_option("--format", stats_format, "Output format")
      ->check(CLI::IsMember({"text", "json"}));
  stats->add_option("--bin-width", bin_width,
                    "Height histogram bin width in pixels")
      ->check(CLI::PositiveNumber);
  stats->add_option("--image-size", stats_args.image_size,
                    "Fallback image size")
      ->check(kImageSizeValidator);
  stats->add_option("--output", stats_output,
                    "Write to this file instead of stdout");

  // eval
  auto* eval = app.add_subcommand(
      "eval", "Evaluate a detection run against a dataset split");
  eval->fallthrough();
  CommonDatasetArgs eval_args;
  std::string eval_split = "test";
  std::string detections_dir;
  std::string run_name;
  std::string eval_output;
  std::string timing_path;
  double iou_threshold = 0.5;
  double ball_radius = 5.0;
  double ball_conf_threshold = 0.5;
  bool compute_coco = true;
  eval->add_option("--dataset", eval_args.input, "Dataset root")->required();
  eval->add_option("--split", eval_split, "Split to evaluate")
      ->check(CLI::IsMember({"train", "valid", "test"}));
  eval->add_option("--detections", detections_dir,
                   "Directory of per-frame detection files (a <split> "
                   "subdirectory is used when present)")
      ->required();
  eval->add_option("--run-name", run_name,
                   "Row name in reports (default: detections directory name)");
  eval->add_option("--output", eval_output,
                   "Write the result document to this file instead of stdout");
  eval->add_option("--timing", timing_path, "Timing log CSV to attach");
  auto* iou_opt =
      eval->add_option("--iou-threshold", iou_threshold,
                       "IoU threshold for the AP11 columns")
          ->check(CLI::Range(1e-9, 1.0));
  auto* radius_opt =
      eval->add_option("--ball-radius", ball_radius,
                       "Point-radius tolerance for ball columns, in pixels")
          ->check(CLI::PositiveNumber);
  auto* conf_opt =
      eval->add_option("--ball-conf-threshold", ball_conf_threshold,
                       "Confidence cutoff for the ball columns")
          ->check(CLI::Range(0.0, 1.0));
  auto* coco_opt = eval->add_flag("--coco,!--no-coco", compute_coco,
                                  "Compute the COCO mAP columns");
  eval->add_option("--image-size", eval_args.image_size,
                   "Fallback image size")
      ->check(kImageSizeValidator);

  // report
  auto* report = app.add_subcommand(
      "report", "Render result documents as a benchmark table");
  report->fallthrough();
  std::vector<std::string> result_files;
  std::string report_format = "markdown";
  std::string report_output;
  report->add_option("results", result_files, "Result JSON files, in row order")
      ->required();
  report->add_option("--format", report_format, "Output format")
      ->check(CLI::IsMember({"markdown", "csv"}));
  report->add_option("--output", report_output,
                     "Write to this file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (app.got_subcommand(convert)) {
      sb::DatasetIndex index = sb::convert_raw_dataset(
          convert_args.input, convert_args.load_options(), ball_box_size);
      if (!convert_source_name.empty()) {
        index.source_name = convert_source_name;
      }
      sb::write_dataset(index, convert_output);
      if (!quiet) print_split_counts(index);
    } else if (app.got_subcommand(filter)) {
      const sb::DatasetIndex index =
          sb::load_dataset(filter_args.input, filter_args.load_options());
      const sb::DatasetIndex filtered =
          sb::filter_long_shot(index, height_threshold);
      sb::write_dataset(filtered, filter_output);
      if (!quiet) print_filter_counts(index, filtered);
    } else if (app.got_subcommand(stats)) {
      std::optional<sb::DatasetSplit> only_split;
      if (!stats_split.empty()) only_split = sb::split_from_name(stats_split);
      const sb::DatasetIndex index =
          sb::load_dataset(stats_args.input, stats_args.load_options(only_split));
      const sb::StatsSummary summary = sb::dataset_stats(index, bin_width);
      emit(stats_format == "json" ? sb::render_stats_json(summary)
                                  : sb::render_stats_text(summary),
           stats_output);
    } else if (app.got_subcommand(eval)) {
      sb::EvalConfig config;
      config.threads = threads;
      if (!config_path.empty()) {
        config = sb::load_config_file(config_path, std::move(config));
      }
      if (iou_opt->count() > 0) config.iou_threshold_ap11 = iou_threshold;
      if (radius_opt->count() > 0) config.ball_radius_px = ball_radius;
      if (conf_opt->count() > 0) {
        config.ball_confidence_threshold = ball_conf_threshold;
      }
      if (coco_opt->count() > 0) config.compute_coco = compute_coco;

      const auto split = sb::split_from_name(eval_split);
      const sb::DatasetIndex index =
          sb::load_dataset(eval_args.input, eval_args.load_options(split));
      const auto& annotations = index.splits.at(*split);
      if (annotations.empty()) {
        throw sb::EmptyInput("split '" + eval_split + "' of " +
                             eval_args.input + " has no frames");
      }

      std::filesystem::path det_dir(detections_dir);
      std::error_code ec;
      if (std::filesystem::is_directory(det_dir / eval_split, ec)) {
        det_dir /= eval_split;
      }
      const auto detections = sb::load_detection_dir(det_dir);

      sb::RunResult result;
      result.run_name =
          run_name.empty()
              ? std::filesystem::path(detections_dir).filename().string()
              : run_name;
      result.metrics = sb::evaluate(annotations, detections, config);
      if (!timing_path.empty()) {
        const auto records =
            sb::parse_timing_log(sb::read_text_file(timing_path));
        result.metrics.timing = sb::summarize_timing(records);
      }
      result.config = config;
      emit(sb::run_result_to_json(result), eval_output);
    } else if (app.got_subcommand(report)) {
      std::vector<sb::RunResult> runs;
      runs.reserve(result_files.size());
      for (const std::string& file : result_files) {
        try {
          runs.push_back(sb::run_result_from_json(sb::read_text_file(file)));
        } catch (const sb::SchemaMismatch& e) {
          throw sb::Error(file + ": " + e.what());
        }
      }
      const auto format = report_format == "csv" ? sb::ReportFormat::Csv
                                                 : sb::ReportFormat::Markdown;
      emit(sb::render_report(runs, format), report_output);
    }
  } catch (const sb::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
