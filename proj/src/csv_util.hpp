#pragma once

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "senticast/timeseries.hpp"

namespace senticast::detail {

struct CsvRow {
  std::size_t line = 0;
  std::vector<std::string_view> fields;
};

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

inline double parse_real(std::string_view text, std::size_t line) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
    throw DataError("line " + std::to_string(line) + ": malformed number '" +
                    std::string(text) + "'");
  }
  return value;
}

/// Splits `text` into rows, checking that the header begins with `columns`.
/// Returned views point into `text`.
inline std::vector<CsvRow> parse_csv(std::string_view text,
                                     std::initializer_list<std::string_view> columns,
                                     std::vector<std::string>& diagnostics) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
  std::vector<CsvRow> rows;
  std::size_t line_no = 0;
  bool header_seen = false;
  std::size_t header_width = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const auto raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    const auto line = trim(raw);
    if (line.empty()) continue;
    auto fields = split_fields(line);
    if (!header_seen) {
      header_seen = true;
      header_width = fields.size();
      std::size_t k = 0;
      for (auto col : columns) {
        if (k >= fields.size() || fields[k] != col) {
          throw DataError("line 1: expected header starting with '" +
                          std::string(col) + "' at column " + std::to_string(k + 1));
        }
        ++k;
      }
      if (fields.size() > columns.size()) {
        diagnostics.push_back("ignoring " +
                              std::to_string(fields.size() - columns.size()) +
                              " extra column(s)");
      }
      continue;
    }
    if (fields.size() < columns.size() || fields.size() > header_width) {
      throw DataError("line " + std::to_string(line_no) + ": expected " +
                      std::to_string(columns.size()) + " fields, got " +
                      std::to_string(fields.size()));
    }
    rows.push_back({line_no, std::move(fields)});
  }
  if (!header_seen) throw DataError("missing header line");
  return rows;
}

}  // namespace senticast::detail
