#pragma once

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ggsp {

/// Line-oriented comma-separated reader that reports errors with the
/// file name and line number.
class CsvReader {
 public:
  explicit CsvReader(const std::string& path) : path_(path), in_(path) {
    if (!in_) throw std::runtime_error("cannot open " + path);
  }

  void expect_header(const std::vector<std::string>& columns) {
    std::vector<std::string> fields;
    if (!next(fields)) throw std::runtime_error(path_ + ": file is empty (header required)");
    if (fields != columns) {
      std::string want;
      for (std::size_t i = 0; i < columns.size(); ++i) want += (i ? "," : "") + columns[i];
      fail("expected header '" + want + "'");
    }
  }

  /// Reads the next nonblank line; returns false at end of file.
  bool next(std::vector<std::string>& fields) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.find_first_not_of(" \t") == std::string::npos) continue;
      fields.clear();
      std::size_t start = 0;
      while (true) {
        const auto comma = line.find(',', start);
        fields.push_back(trim(line.substr(start, comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw std::runtime_error(path_ + ":" + std::to_string(line_no_) + ": " + what);
  }

  int parse_int(const std::string& s) const {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size()) fail("malformed integer '" + s + "'");
    return value;
  }

  double parse_double(const std::string& s) const {
    try {
      std::size_t used = 0;
      const double value = std::stod(s, &used);
      if (used != s.size() || !std::isfinite(value)) throw std::invalid_argument(s);
      return value;
    } catch (const std::exception&) {
      fail("malformed number '" + s + "'");
    }
  }

  int line() const { return line_no_; }

 private:
  static std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
  }

  std::string path_;
  std::ifstream in_;
  int line_no_ = 0;
};

}  // namespace ggsp
