#pragma once

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "netdrift/errors.hpp"
#include "netdrift/graph.hpp"

namespace netdrift {

// Column layout of a whitespace-separated edge list. Described by a format
// string over the letters u, v, w, t ("uvwt", "uvt", "uv", ...). Missing
// weight column defaults to 1.0, missing timestamp column to 0.0.
struct EdgeListFormat {
  int u_col = 0;
  int v_col = 1;
  int weight_col = 2;  // -1 when absent
  int time_col = 3;    // -1 when absent
  int column_count = 4;
};

inline EdgeListFormat parse_format(std::string_view spec) {
  EdgeListFormat fmt;
  fmt.u_col = fmt.v_col = fmt.weight_col = fmt.time_col = -1;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    int col = static_cast<int>(i);
    switch (spec[i]) {
      case 'u': fmt.u_col = col; break;
      case 'v': fmt.v_col = col; break;
      case 'w': fmt.weight_col = col; break;
      case 't': fmt.time_col = col; break;
      default:
        throw DataError("unknown column letter '" + std::string(1, spec[i]) +
                        "' in format \"" + std::string(spec) + "\"");
    }
  }
  if (fmt.u_col < 0 || fmt.v_col < 0)
    throw DataError("format \"" + std::string(spec) + "\" must contain u and v");
  fmt.column_count = static_cast<int>(spec.size());
  return fmt;
}

namespace detail {

inline double parse_double_token(std::string_view tok, int line_no, const char* what) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw DataError("line " + std::to_string(line_no) + ": malformed " +
                    std::string(what) + " \"" + std::string(tok) + "\"");
  return value;
}

}  // namespace detail

// Parses a line-oriented edge list. Lines starting with '#' or '%' and blank
// lines are skipped. Errors carry 1-based line numbers.
inline std::vector<TemporalEdge> parse_edge_list(std::istream& in,
                                                 const EdgeListFormat& fmt) {
  std::vector<TemporalEdge> out;
  std::string line;
  std::vector<std::string_view> tokens;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    std::size_t first = view.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) continue;
    if (view[first] == '#' || view[first] == '%') continue;

    tokens.clear();
    std::size_t pos = first;
    while (pos < view.size()) {
      std::size_t end = view.find_first_of(" \t\r", pos);
      if (end == std::string_view::npos) end = view.size();
      if (end > pos) tokens.push_back(view.substr(pos, end - pos));
      pos = view.find_first_not_of(" \t\r", end);
      if (pos == std::string_view::npos) break;
    }
    if (static_cast<int>(tokens.size()) != fmt.column_count)
      throw DataError("line " + std::to_string(line_no) + ": expected " +
                      std::to_string(fmt.column_count) + " columns, got " +
                      std::to_string(tokens.size()));

    TemporalEdge e;
    e.u = std::string(tokens[static_cast<std::size_t>(fmt.u_col)]);
    e.v = std::string(tokens[static_cast<std::size_t>(fmt.v_col)]);
    if (e.u == e.v)
      throw DataError("line " + std::to_string(line_no) + ": self-loop on node \"" +
                      e.u + "\"");
    if (fmt.weight_col >= 0) {
      e.weight = detail::parse_double_token(
          tokens[static_cast<std::size_t>(fmt.weight_col)], line_no, "weight");
      if (!(e.weight >= 0.0))
        throw DataError("line " + std::to_string(line_no) + ": negative weight");
      if (!std::isfinite(e.weight))
        throw DataError("line " + std::to_string(line_no) + ": non-finite weight");
    }
    if (fmt.time_col >= 0) {
      e.time = detail::parse_double_token(
          tokens[static_cast<std::size_t>(fmt.time_col)], line_no, "timestamp");
      if (!std::isfinite(e.time))
        throw DataError("line " + std::to_string(line_no) + ": non-finite timestamp");
    }
    out.push_back(std::move(e));
  }
  return out;
}

inline std::vector<TemporalEdge> load_edge_list(const std::string& path,
                                                const EdgeListFormat& fmt) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open dataset \"" + path + "\"");
  try {
    return parse_edge_list(in, fmt);
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

// 12 significant digits; round-trips every value the project emits.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// Writes "u v w t" rows, canonical edge order. Inverse of parse_edge_list
// with format "uvwt".
inline void write_edge_list(std::ostream& out, const WeightedGraph& g) {
  for (const Edge& e : g.edges()) {
    out << g.label(e.u) << ' ' << g.label(e.v) << ' ' << format_double(e.weight)
        << ' ' << format_double(e.time) << '\n';
  }
}

}  // namespace netdrift
