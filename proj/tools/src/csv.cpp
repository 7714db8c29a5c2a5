#include "csv.hpp"

namespace galikit::tools {

CsvWriter::CsvWriter(const std::filesystem::path& path) : path_(path) {
  file_ = std::fopen(path.string().c_str(), "wb");
  if (!file_) {
    throw IoError("cannot open " + path.string() + " for writing");
  }
}

CsvWriter::~CsvWriter() {
  if (file_) std::fclose(file_);
}

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

void CsvWriter::header(const std::vector<std::string>& names) {
  columns_ = names.size();
  std::string line;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) line += ',';
    line += names[i];
  }
  put_line(line);
}

void CsvWriter::row(const std::vector<double>& values) {
  row({}, values);
}

void CsvWriter::row(const std::vector<std::string>& labels,
                    const std::vector<double>& values) {
  if (columns_ != 0 && labels.size() + values.size() != columns_) {
    throw IoError("csv row width does not match the header of " + path_.string());
  }
  std::string line;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i) line += ',';
    line += labels[i];
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i + labels.size()) line += ',';
    line += format_number(values[i]);
  }
  put_line(line);
}

void CsvWriter::put_line(const std::string& line) {
  if (std::fwrite(line.data(), 1, line.size(), file_) != line.size() ||
      std::fputc('\n', file_) == EOF) {
    throw IoError("write failure on " + path_.string());
  }
}

}  // namespace galikit::tools
