#pragma once

#include <charconv>
#include <cmath>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "fnmine/io.hpp"

namespace fnmine::detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

inline std::vector<std::string_view> split_char(std::string_view line,
                                                char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

inline double to_double(std::string_view tok, std::size_t line,
                        std::string_view what) {
  double value = 0.0;
  const char* end = tok.data() + tok.size();
  const auto [ptr, ec] = std::from_chars(tok.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw ParseError(line, "field '" + std::string(what) +
                               "' is not a finite number: '" +
                               std::string(tok) + "'");
  }
  return value;
}

inline int to_int(std::string_view tok, std::size_t line,
                  std::string_view what) {
  int value = 0;
  const char* end = tok.data() + tok.size();
  const auto [ptr, ec] = std::from_chars(tok.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParseError(line, "field '" + std::string(what) +
                               "' is not an integer: '" + std::string(tok) +
                               "'");
  }
  return value;
}

// Reads lines, stripping a trailing '\r'. Tracks the 1-based line number.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool next(std::string& line) {
    if (!std::getline(in_, line)) return false;
    ++number_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  }
  std::size_t number() const { return number_; }

 private:
  std::istream& in_;
  std::size_t number_ = 0;
};

inline bool blank(std::string_view line) { return trim(line).empty(); }

inline BBox checked_box(double x1, double y1, double x2, double y2,
                        std::size_t line) {
  const BBox b{x1, y1, x2, y2};
  if (!(b.x2 > b.x1) || !(b.y2 > b.y1)) {
    throw ParseError(line, "box requires x2 > x1 and y2 > y1");
  }
  return b;
}

}  // namespace fnmine::detail
