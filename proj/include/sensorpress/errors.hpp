#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sensorpress {

// Malformed CSV input; carries the 1-based line number of the offending row.
class CsvParseError : public std::runtime_error {
 public:
  CsvParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Semantic problems in the data itself (degenerate columns, rows that cannot
// be imputed, zero-variance pools, ...).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised by the optimizer when a non-finite cost or gradient shows up.
class TrainingError : public std::runtime_error {
 public:
  TrainingError(int iteration, const std::string& what)
      : std::runtime_error("iteration " + std::to_string(iteration) + ": " + what),
        iteration_(iteration) {}
  int iteration() const { return iteration_; }

 private:
  int iteration_;
};

// Wire-format violations, one variant per failure mode.
class FrameFormatError : public std::runtime_error {
 public:
  enum class Kind { bad_magic, truncated, popcount_mismatch, dimension_mismatch };

  FrameFormatError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

}  // namespace sensorpress
