#pragma once

#include <stdexcept>
#include <string>

namespace soccerbench {

/// Base class of every toolkit error. The CLI maps these to exit code 2.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& message) : std::runtime_error(message) {}
};

/// Parse failure tied to a 1-based line number.
class LineError : public Error {
 public:
  LineError(const std::string& message, int line_number)
      : Error(message + " (line " + std::to_string(line_number) + ")"),
        line_number_(line_number) {}

  int line_number() const noexcept { return line_number_; }

 private:
  int line_number_ = 0;
};

class MalformedLine : public LineError {
 public:
  MalformedLine(int line_number, const std::string& detail)
      : LineError("malformed line: " + detail, line_number) {}
};

class UnknownClass : public LineError {
 public:
  UnknownClass(int line_number, long class_id)
      : LineError("unknown class id " + std::to_string(class_id), line_number) {}
};

class ConfidenceOutOfRange : public LineError {
 public:
  ConfidenceOutOfRange(int line_number, double value)
      : LineError("confidence " + std::to_string(value) + " outside [0, 1]",
                  line_number) {}
};

class MalformedRow : public LineError {
 public:
  MalformedRow(int line_number, const std::string& detail)
      : LineError("malformed row: " + detail, line_number) {}
};

class NegativeDuration : public LineError {
 public:
  NegativeDuration(int line_number, double value)
      : LineError("duration " + std::to_string(value) + " must be positive",
                  line_number) {}
};

class InvalidDims : public Error {
 public:
  InvalidDims(double width, double height)
      : Error("invalid image dimensions " + std::to_string(width) + "x" +
              std::to_string(height)) {}
};

class CenterOutOfImage : public Error {
 public:
  CenterOutOfImage(double x, double y)
      : Error("point (" + std::to_string(x) + ", " + std::to_string(y) +
              ") lies outside the image") {}
};

class InvalidCrop : public Error {
 public:
  explicit InvalidCrop(const std::string& detail)
      : Error("invalid crop: " + detail) {}
};

class MixedClasses : public Error {
 public:
  MixedClasses() : Error("matching requires a single class on both sides") {}
};

class InconsistentThreshold : public Error {
 public:
  InconsistentThreshold()
      : Error("match outcomes were computed at different IoU thresholds") {}
};

class ZeroGroundTruth : public Error {
 public:
  ZeroGroundTruth() : Error("average precision is undefined without ground truth") {}
};

class MissingThresholdCurve : public Error {
 public:
  explicit MissingThresholdCurve(double threshold)
      : Error("no PR curve for IoU threshold " + std::to_string(threshold)) {}
};

class UnknownFrameId : public Error {
 public:
  explicit UnknownFrameId(const std::string& frame_id)
      : Error("detections reference unknown frame id '" + frame_id + "'"),
        frame_id_(frame_id) {}

  const std::string& frame_id() const noexcept { return frame_id_; }

 private:
  std::string frame_id_;
};

class EmptyLog : public Error {
 public:
  EmptyLog() : Error("timing log holds no records") {}
};

class IoFailure : public Error {
 public:
  explicit IoFailure(const std::string& detail) : Error(detail) {}
};

/// A label/detection file whose content failed to parse; carries the path.
class MalformedLabel : public Error {
 public:
  MalformedLabel(const std::string& path, const std::string& detail)
      : Error(path + ": " + detail) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& detail)
      : Error("config error: " + detail) {}
};

class EmptyInput : public Error {
 public:
  explicit EmptyInput(const std::string& detail) : Error(detail) {}
};

class SchemaMismatch : public Error {
 public:
  explicit SchemaMismatch(const std::string& detail)
      : Error("result schema mismatch: " + detail) {}
};

}  // namespace soccerbench
