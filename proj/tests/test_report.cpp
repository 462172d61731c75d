#include <filesystem>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

#include "soccerbench/dataset_io.hpp"
#include "soccerbench/errors.hpp"
#include "soccerbench/report.hpp"

using namespace soccerbench;
namespace fs = std::filesystem;

namespace {

RunResult demo_result() {
  RunResult result;
  result.run_name = "demo";
  result.metrics.person.ap11 = 0.5;
  result.metrics.person.coco_map = 0.25;
  result.metrics.ball.ap11 = 1.0;
  result.metrics.ball.coco_map = std::nullopt;
  result.metrics.ball_point.avg_precision = 0.75;
  result.metrics.ball_point.avg_recall = 0.5;
  result.metrics.ball_point.pct_correct_frames = 1.0;
  TimingSummary timing;
  timing.mean_inference_ms = 7.5;
  timing.mean_total_ms = 9.5;
  result.metrics.timing = timing;
  return result;
}

std::vector<RunResult> golden_runs() {
  const fs::path dir = fs::path(SOCCERBENCH_GOLDEN_DIR) / "runs";
  std::vector<RunResult> runs;
  for (const char* name :
       {"fbo.json", "fbtr.json", "yo640.json", "ytr640.json",
        "ytr1200.json"}) {
    runs.push_back(run_result_from_json(read_text_file(dir / name)));
  }
  return runs;
}

}  // namespace

TEST_CASE("run_result_to_json emits the documented layout byte for byte") {
  const std::string expected =
      "{\n"
      "  \"run\": \"demo\",\n"
      "  \"person\": {\n"
      "    \"ap11\": 0.5,\n"
      "    \"coco_map\": 0.25\n"
      "  },\n"
      "  \"ball\": {\n"
      "    \"ap11\": 1.0,\n"
      "    \"coco_map\": null,\n"
      "    \"avg_precision\": 0.75,\n"
      "    \"avg_recall\": 0.5,\n"
      "    \"pct_correct_frames\": 1.0\n"
      "  },\n"
      "  \"timing\": {\n"
      "    \"inference_ms\": 7.5,\n"
      "    \"total_ms\": 9.5\n"
      "  },\n"
      "  \"config\": {\n"
      "    \"iou_threshold\": 0.5,\n"
      "    \"ball_radius_px\": 5.0,\n"
      "    \"ball_conf_threshold\": 0.5,\n"
      "    \"coco\": true\n"
      "  }\n"
      "}\n";
  CHECK(run_result_to_json(demo_result()) == expected);
}

TEST_CASE("run results survive a JSON round trip") {
  const RunResult original = demo_result();
  const std::string text = run_result_to_json(original);
  const RunResult parsed = run_result_from_json(text);
  CHECK(parsed.run_name == original.run_name);
  CHECK(parsed.metrics.person.ap11 == original.metrics.person.ap11);
  CHECK(parsed.metrics.person.coco_map == original.metrics.person.coco_map);
  CHECK(parsed.metrics.ball.ap11 == original.metrics.ball.ap11);
  CHECK_FALSE(parsed.metrics.ball.coco_map.has_value());
  CHECK(parsed.metrics.ball_point.avg_precision ==
        original.metrics.ball_point.avg_precision);
  CHECK(parsed.metrics.ball_point.avg_recall ==
        original.metrics.ball_point.avg_recall);
  CHECK(parsed.metrics.ball_point.pct_correct_frames ==
        original.metrics.ball_point.pct_correct_frames);
  REQUIRE(parsed.metrics.timing.has_value());
  CHECK(parsed.metrics.timing->mean_inference_ms == 7.5);
  CHECK(*parsed.metrics.timing->mean_total_ms == 9.5);
  CHECK(run_result_to_json(parsed) == text);
}

TEST_CASE("run_result_from_json rejects schema violations") {
  CHECK_THROWS_AS(run_result_from_json("not json at all"), SchemaMismatch);
  CHECK_THROWS_AS(run_result_from_json("[1,2,3]"), SchemaMismatch);
  CHECK_THROWS_AS(run_result_from_json("{}"), SchemaMismatch);
  CHECK_THROWS_AS(run_result_from_json(R"({"run": ""})"), SchemaMismatch);
  CHECK_THROWS_AS(
      run_result_from_json(R"({"run": "x", "person": {}, "ball": {}})"),
      SchemaMismatch);

  const char* missing_ball_field = R"({
    "run": "x",
    "person": {"ap11": 0.5},
    "ball": {"ap11": 0.5, "avg_precision": 0.5, "avg_recall": 0.5}
  })";
  CHECK_THROWS_AS(run_result_from_json(missing_ball_field), SchemaMismatch);

  const char* score_too_big = R"({
    "run": "x",
    "person": {"ap11": 1.5},
    "ball": {"ap11": 0.5, "avg_precision": 0.5, "avg_recall": 0.5,
             "pct_correct_frames": 0.5}
  })";
  CHECK_THROWS_AS(run_result_from_json(score_too_big), SchemaMismatch);

  const char* score_negative = R"({
    "run": "x",
    "person": {"ap11": -0.1},
    "ball": {"ap11": 0.5, "avg_precision": 0.5, "avg_recall": 0.5,
             "pct_correct_frames": 0.5}
  })";
  CHECK_THROWS_AS(run_result_from_json(score_negative), SchemaMismatch);

  const char* zero_inference = R"({
    "run": "x",
    "person": {"ap11": 0.5},
    "ball": {"ap11": 0.5, "avg_precision": 0.5, "avg_recall": 0.5,
             "pct_correct_frames": 0.5},
    "timing": {"inference_ms": 0.0}
  })";
  CHECK_THROWS_AS(run_result_from_json(zero_inference), SchemaMismatch);

  const char* total_below_inference = R"({
    "run": "x",
    "person": {"ap11": 0.5},
    "ball": {"ap11": 0.5, "avg_precision": 0.5, "avg_recall": 0.5,
             "pct_correct_frames": 0.5},
    "timing": {"inference_ms": 9.0, "total_ms": 7.0}
  })";
  CHECK_THROWS_AS(run_result_from_json(total_below_inference), SchemaMismatch);

  try {
    run_result_from_json("{broken");
    FAIL("expected SchemaMismatch");
  } catch (const SchemaMismatch& e) {
    CHECK(std::string(e.what()).find("not valid JSON") != std::string::npos);
  }
}

TEST_CASE("a missing coco_map parses as absent and renders as a dash") {
  const char* text = R"({
    "run": "nococo",
    "person": {"ap11": 0.5},
    "ball": {"ap11": 0.5, "avg_precision": 0.5, "avg_recall": 0.5,
             "pct_correct_frames": 0.5}
  })";
  const RunResult result = run_result_from_json(text);
  CHECK_FALSE(result.metrics.person.coco_map.has_value());
  CHECK_FALSE(result.metrics.timing.has_value());

  const std::vector<RunResult> runs = {result};
  const std::string markdown = render_report(runs, ReportFormat::Markdown);
  CHECK(markdown.find("| - |") != std::string::npos);
  CHECK(markdown.find("**-**") == std::string::npos);
  // The timing column is also a dash.
  CHECK(markdown.find(" - |\n") != std::string::npos);
}

TEST_CASE("the golden five-run table renders byte-identically") {
  const std::vector<RunResult> runs = golden_runs();
  const std::string expected =
      read_text_file(fs::path(SOCCERBENCH_GOLDEN_DIR) / "table1.md");
  CHECK(render_report(runs, ReportFormat::Markdown) == expected);
}

TEST_CASE("the CSV rendering carries the same cells without emphasis") {
  const std::vector<RunResult> runs = golden_runs();
  const std::string csv = render_report(runs, ReportFormat::Csv);
  CHECK(csv.find("run,Person AP₁₁,Person COCO mAP,Ball AP₁₁,Ball COCO mAP,"
                 "Ball Avg Prec.,Ball Avg Rec.,Ball %,T(ms)\n") == 0);
  CHECK(csv.find("FBo,0.3254,0.0771,0.0096,0.0003,0.783,0.022,0.234,9.5\n") !=
        std::string::npos);
  CHECK(csv.find("Ytr1200,0.9058,0.7025,0.5361,0.2362,0.877,0.707,0.724,"
                 "7.4/10.2\n") != std::string::npos);
  CHECK(csv.find("**") == std::string::npos);

  std::size_t lines = 0;
  for (char c : csv) {
    if (c == '\n') ++lines;
  }
  CHECK(lines == 6);
}

TEST_CASE("a single run is its own best in every accuracy column") {
  const std::vector<RunResult> runs = {demo_result()};
  const std::string markdown = render_report(runs, ReportFormat::Markdown);
  const std::string expected_row =
      "| demo | **0.5000** | **0.2500** | **1.0000** | - | **0.750** |"
      " **0.500** | **1.000** | 7.5/9.5 |\n";
  CHECK(markdown.find(expected_row) != std::string::npos);
}

TEST_CASE("duplicate run names and empty inputs are rejected") {
  const std::vector<RunResult> twice = {demo_result(), demo_result()};
  CHECK_THROWS_AS(render_report(twice, ReportFormat::Markdown),
                  SchemaMismatch);

  const std::vector<RunResult> none;
  CHECK_THROWS_AS(render_report(none, ReportFormat::Markdown), EmptyInput);
}

TEST_CASE("render_stats_text prints the documented panel layout") {
  StatsSummary stats;
  stats.height_bin_width_px = 10.0;
  SplitStats train;
  train.frame_count = 3;
  train.resolution_counts[{1280, 720}] = 2;
  train.resolution_counts[{1920, 1080}] = 1;
  train.height_bins[0] = 1;
  train.height_bins[240] = 2;
  train.frames_with_ball = 2;
  train.ball_fraction = 2.0 / 3.0;
  stats.splits[DatasetSplit::Train] = train;

  const std::string expected =
      "split: train\n"
      "  frames: 3\n"
      "  resolutions:\n"
      "    1280x720: 2\n"
      "    1920x1080: 1\n"
      "  max person height (bin 10 px):\n"
      "    [0, 10): 1\n"
      "    [240, 250): 2\n"
      "  frames with ball: 2\n"
      "  ball fraction: 0.667\n";
  CHECK(render_stats_text(stats) == expected);
}

TEST_CASE("render_stats_json mirrors the text panel") {
  StatsSummary stats;
  stats.height_bin_width_px = 10.0;
  SplitStats test_split;
  test_split.frame_count = 2;
  test_split.resolution_counts[{640, 360}] = 2;
  test_split.height_bins[120] = 2;
  test_split.frames_with_ball = 1;
  test_split.ball_fraction = 0.5;
  stats.splits[DatasetSplit::Test] = test_split;

  const std::string text = render_stats_json(stats);
  const auto doc = nlohmann::json::parse(text);
  CHECK(doc.at("height_bin_width_px").get<double>() == 10.0);
  const auto& node = doc.at("splits").at("test");
  CHECK(node.at("frame_count").get<int>() == 2);
  CHECK(node.at("resolutions").at("640x360").get<int>() == 2);
  CHECK(node.at("max_person_height_bins").at("120").get<int>() == 2);
  CHECK(node.at("frames_with_ball").get<int>() == 1);
  CHECK(node.at("ball_fraction").get<double>() == 0.5);
  CHECK(text.back() == '\n');
}
