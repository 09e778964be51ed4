#pragma once

#include <chrono>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace market_rewire {

/// Calendar date of a daily observation. Intraday timestamps are not representable.
using Date = std::chrono::year_month_day;

/// Parses a strict ISO-8601 calendar date (`YYYY-MM-DD`). Throws std::invalid_argument
/// on anything else, including trailing time components.
Date parse_date(std::string_view text);

std::string format_date(const Date& date);

/// Failure caused by the input data rather than by a programming error. The CLI maps
/// these to exit code 2 and reports the stage in which they were raised.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* stage() const noexcept = 0;
};

class IngestError : public DataError {
 public:
  using DataError::DataError;
  const char* stage() const noexcept override { return "ingest"; }
};

class PreprocessError : public DataError {
 public:
  using DataError::DataError;
  const char* stage() const noexcept override { return "preprocess"; }
};

class PipelineError : public DataError {
 public:
  using DataError::DataError;
  const char* stage() const noexcept override { return "pipeline"; }
};

class ExportError : public DataError {
 public:
  using DataError::DataError;
  const char* stage() const noexcept override { return "export"; }
};

/// Dense row-major n x n matrix of doubles.
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

  std::size_t size() const noexcept { return n_; }

  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * n_ + j]; }

  const std::vector<double>& data() const noexcept { return data_; }

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

/// Shortest decimal string that parses back to exactly `value`.
std::string format_double(double value);

/// Number of worker threads to use for a requested cap; 0 means hardware concurrency.
unsigned resolve_threads(unsigned requested) noexcept;

}  // namespace market_rewire
