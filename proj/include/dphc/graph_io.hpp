// Copyright 2026 The dphc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Edge-list text format:
//
//   n m
//   u v w      (m lines, 0-indexed endpoints, decimal weight)
//
// Lines starting with '#' are comments. Blank lines are ignored.

#ifndef DPHC_GRAPH_IO_HPP_
#define DPHC_GRAPH_IO_HPP_

#include <charconv>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "dphc/graph.hpp"

namespace dphc {

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename T>
bool parse_number(std::string_view token, T& out) {
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
  return ec == std::errc() && ptr == token.data() + token.size();
}

/// Shortest decimal text that reads back to the same double.
inline std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

}  // namespace detail

inline WeightedGraph read_graph(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  long long n = 0;
  long long m = 0;
  std::vector<Edge> edges;
  std::set<std::pair<Vertex, Vertex>> seen;
  while (std::getline(in, line)) {
    ++line_no;
    auto tokens = detail::split_ws(line);
    if (tokens.empty() || tokens.front().front() == '#') continue;
    if (!have_header) {
      if (tokens.size() != 2 || !detail::parse_number(tokens[0], n) || !detail::parse_number(tokens[1], m) || n < 0 ||
          m < 0) {
        throw Error(ErrorCode::kInvalidHeader, "line " + std::to_string(line_no) + ": expected \"n m\"");
      }
      have_header = true;
      continue;
    }
    Edge e;
    if (tokens.size() != 3 || !detail::parse_number(tokens[0], e.u) || !detail::parse_number(tokens[1], e.v) ||
        !detail::parse_number(tokens[2], e.w)) {
      throw ParseError(line_no, "expected \"u v w\"");
    }
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n) {
      throw ParseError(line_no, "endpoint out of range", ErrorCode::kEndpointOutOfRange);
    }
    if (e.u == e.v) throw ParseError(line_no, "self loop", ErrorCode::kSelfLoop);
    if (!(e.w >= 0.0)) throw ParseError(line_no, "negative weight", ErrorCode::kNegativeWeight);
    if (e.u > e.v) std::swap(e.u, e.v);
    if (!seen.emplace(e.u, e.v).second) throw ParseError(line_no, "duplicate edge", ErrorCode::kDuplicateEdge);
    edges.push_back(e);
  }
  if (!have_header) throw Error(ErrorCode::kInvalidHeader, "missing \"n m\" header");
  if (static_cast<long long>(edges.size()) != m) {
    throw ParseError(line_no, "header declares " + std::to_string(m) + " edges, found " + std::to_string(edges.size()));
  }
  return WeightedGraph(static_cast<int>(n), std::move(edges));
}

inline WeightedGraph read_graph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  return read_graph(in);
}

inline WeightedGraph parse_graph(const std::string& text) {
  std::istringstream in(text);
  return read_graph(in);
}

inline void write_graph(const WeightedGraph& g, std::ostream& out) {
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const auto& e : g.edges()) out << e.u << ' ' << e.v << ' ' << detail::format_double(e.w) << '\n';
}

inline void write_graph(const WeightedGraph& g, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  write_graph(g, out);
  if (!out) throw Error(ErrorCode::kIoError, "write failed for " + path.string());
}

}  // namespace dphc

#endif  // DPHC_GRAPH_IO_HPP_
