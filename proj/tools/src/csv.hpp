#pragma once

#include <cstdio>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace galikit::tools {

/// Raised when an output file cannot be created or written.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Comma-separated writer with a fixed 17-significant-digit rendering, so
/// identical inputs produce byte-identical files.
class CsvWriter {
 public:
  explicit CsvWriter(const std::filesystem::path& path);
  ~CsvWriter();
  CsvWriter(const CsvWriter&) = delete;
  CsvWriter& operator=(const CsvWriter&) = delete;

  void header(const std::vector<std::string>& names);
  void row(const std::vector<double>& values);

  /// Mixed row: leading string cells followed by numeric cells.
  void row(const std::vector<std::string>& labels,
           const std::vector<double>& values);

 private:
  void put_line(const std::string& line);

  std::FILE* file_ = nullptr;
  std::size_t columns_ = 0;
  std::filesystem::path path_;
};

std::string format_number(double value);

}  // namespace galikit::tools
