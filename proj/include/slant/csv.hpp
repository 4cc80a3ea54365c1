#pragma once

#include <charconv>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include "slant/error.hpp"

namespace slant::csv {

// Plain comma-separated fields, no quoting. Every format in this project
// carries only tokens, numbers and short labels, none of which may contain
// a comma.
inline std::vector<std::string> split_line(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.emplace_back(line.substr(start));
      break;
    }
    fields.emplace_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

struct Row {
  std::size_t lineno = 0;
  std::vector<std::string> fields;
};

/// Reads a whole CSV file. The first non-comment line must equal
/// `expected_header`; `#` comment lines (provenance footers) and blank
/// lines are skipped everywhere.
inline std::vector<Row> read_file(const std::filesystem::path& path,
                                  const std::string& expected_header) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open CSV file: " + path.string());
  std::vector<Row> rows;
  std::string line;
  std::size_t lineno = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (!saw_header) {
      if (line != expected_header)
        throw DataError(path.string() + ": expected header '" + expected_header +
                        "', got '" + line + "'");
      saw_header = true;
      continue;
    }
    rows.push_back({lineno, split_line(line)});
  }
  if (!saw_header)
    throw DataError(path.string() + ": missing header '" + expected_header + "'");
  return rows;
}

inline double to_double(const std::string& s, const std::filesystem::path& path,
                        std::size_t lineno) {
  double v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size())
    throw DataError(path.string() + ":" + std::to_string(lineno) +
                    ": not a number: '" + s + "'");
  return v;
}

inline std::int64_t to_int(const std::string& s, const std::filesystem::path& path,
                           std::size_t lineno) {
  std::int64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size())
    throw DataError(path.string() + ":" + std::to_string(lineno) +
                    ": not an integer: '" + s + "'");
  return v;
}

}  // namespace slant::csv
