#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "superforge/error.hpp"
#include "superforge/sparse_matrix.hpp"

namespace superforge {

enum class NodeKind { white, gray };
enum class Series { A, D, E };

inline char series_char(Series s) { return s == Series::A ? 'A' : s == Series::D ? 'D' : 'E'; }

inline Series series_from_char(char c) {
  switch (std::toupper(static_cast<unsigned char>(c))) {
    case 'A': return Series::A;
    case 'D': return Series::D;
    case 'E': return Series::E;
  }
  throw error(errc::unsupported_series, std::string("series '") + c + "'");
}

// Simply laced diagram with at most one gray (odd) node. In scope the gray
// node has id 0 and is attached to node 1 only; white nodes are 1..r.
struct DynkinDiagram {
  std::vector<std::pair<int, NodeKind>> nodes;  // sorted by id
  std::vector<std::pair<int, int>> edges;       // normalized a < b, sorted

  bool has_gray() const {
    for (const auto& [id, k] : nodes)
      if (k == NodeKind::gray) return true;
    return false;
  }
  int white_count() const {
    int c = 0;
    for (const auto& [id, k] : nodes)
      if (k == NodeKind::white) ++c;
    return c;
  }
};

// Cartan data: A_ij for the Kac-Moody algebra g (indices 1..r) and the
// extended matrix B_ab (indices 0..r) with the odd row/column 0.
struct CartanData {
  Series series = Series::A;
  int rank = 0;
  std::vector<std::vector<int>> A;  // r x r
  std::vector<std::vector<int>> B;  // (r+1) x (r+1)
  std::vector<int> odd_indices{0};
  bool nondegenerate_A = false;
  bool nondegenerate_B = false;
};

// --- diagram text format -----------------------------------------------
//
//   node <uint> <white|gray>
//   edge <uint> <uint>
//
// Statements are separated by newlines or semicolons; '#' starts a comment
// running to the end of the line; other whitespace is insignificant.

namespace detail {

struct Token {
  std::string text;
  int line, col;
};

inline std::vector<std::vector<Token>> tokenize_statements(const std::string& text) {
  std::vector<std::vector<Token>> statements;
  std::vector<Token> current;
  int line = 1, col = 1;
  std::string word;
  int wl = 0, wc = 0;
  bool in_comment = false;
  auto flush_word = [&] {
    if (!word.empty()) {
      current.push_back({word, wl, wc});
      word.clear();
    }
  };
  auto flush_statement = [&] {
    flush_word();
    if (!current.empty()) statements.push_back(std::move(current));
    current.clear();
  };
  for (char c : text) {
    if (c == '\n') {
      in_comment = false;
      flush_statement();
      ++line;
      col = 1;
      continue;
    }
    if (in_comment) {
      ++col;
      continue;
    }
    if (c == '#') {
      in_comment = true;
      ++col;
      continue;
    }
    if (c == ';') {
      flush_statement();
      ++col;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      flush_word();
      ++col;
      continue;
    }
    if (word.empty()) {
      wl = line;
      wc = col;
    }
    word += c;
    ++col;
  }
  flush_statement();
  return statements;
}

inline int parse_uint(const Token& t) {
  if (t.text.empty() || !std::all_of(t.text.begin(), t.text.end(), [](char c) {
        return std::isdigit(static_cast<unsigned char>(c));
      }))
    throw syntax_error(t.line, t.col, "expected unsigned integer, got '" + t.text + "'");
  if (t.text.size() > 6) throw syntax_error(t.line, t.col, "integer too large");
  return std::stoi(t.text);
}

}  // namespace detail

inline DynkinDiagram parse_diagram(const std::string& text) {
  auto statements = detail::tokenize_statements(text);
  DynkinDiagram d;
  std::map<int, NodeKind> nodes;
  std::set<std::pair<int, int>> edges;
  if (statements.empty()) throw syntax_error(1, 1, "empty diagram");
  for (const auto& st : statements) {
    const auto& head = st[0];
    if (head.text == "node") {
      if (st.size() != 3) throw syntax_error(head.line, head.col, "node takes two arguments");
      int id = detail::parse_uint(st[1]);
      NodeKind kind;
      if (st[2].text == "white")
        kind = NodeKind::white;
      else if (st[2].text == "gray")
        kind = NodeKind::gray;
      else
        throw syntax_error(st[2].line, st[2].col, "expected 'white' or 'gray'");
      if (nodes.count(id))
        throw error(errc::semantic_error, "duplicate node id " + std::to_string(id));
      nodes[id] = kind;
    } else if (head.text == "edge") {
      if (st.size() != 3) throw syntax_error(head.line, head.col, "edge takes two arguments");
      int a = detail::parse_uint(st[1]);
      int b = detail::parse_uint(st[2]);
      if (a == b) throw error(errc::semantic_error, "self-loop at node " + std::to_string(a));
      if (a > b) std::swap(a, b);
      if (!edges.insert({a, b}).second)
        throw error(errc::semantic_error,
                    "duplicate edge " + std::to_string(a) + "-" + std::to_string(b));
    } else {
      throw syntax_error(head.line, head.col, "unknown statement '" + head.text + "'");
    }
  }
  for (const auto& [a, b] : edges) {
    if (!nodes.count(a) || !nodes.count(b))
      throw error(errc::semantic_error,
                  "edge " + std::to_string(a) + "-" + std::to_string(b) +
                      " references a missing node");
  }
  int gray_count = 0;
  for (const auto& [id, k] : nodes)
    if (k == NodeKind::gray) ++gray_count;
  if (gray_count > 1) throw error(errc::semantic_error, "multiple gray nodes");
  if (gray_count == 1) {
    if (!nodes.count(0) || nodes.at(0) != NodeKind::gray)
      throw error(errc::semantic_error, "the gray node must have id 0");
    std::vector<int> gray_neighbors;
    for (const auto& [a, b] : edges) {
      if (a == 0) gray_neighbors.push_back(b);
      if (b == 0) gray_neighbors.push_back(a);
    }
    if (gray_neighbors != std::vector<int>{1})
      throw error(errc::semantic_error, "the gray node must be attached to node 1 only");
  }
  // white ids must be 1..r contiguous
  int r = 0;
  for (const auto& [id, k] : nodes)
    if (k == NodeKind::white) ++r;
  for (int i = 1; i <= r; ++i)
    if (!nodes.count(i) || nodes.at(i) != NodeKind::white)
      throw error(errc::semantic_error, "white nodes must be labelled 1.." + std::to_string(r));
  d.nodes.assign(nodes.begin(), nodes.end());
  d.edges.assign(edges.begin(), edges.end());
  return d;
}

// Canonical emission; parse -> emit -> parse is a fixed point.
inline std::string emit_diagram(const DynkinDiagram& d) {
  std::string out;
  for (const auto& [id, k] : d.nodes)
    out += "node " + std::to_string(id) + (k == NodeKind::gray ? " gray" : " white") + "\n";
  for (const auto& [a, b] : d.edges)
    out += "edge " + std::to_string(a) + " " + std::to_string(b) + "\n";
  return out;
}

namespace detail {

inline bool rank_valid(Series s, int r) {
  switch (s) {
    case Series::A: return r >= 1;
    case Series::D: return r >= 3;
    case Series::E: return r >= 6;  // 6,7,8 standard; r >= 9 formal
  }
  return false;
}

// Edges of the white diagram under the paper's labelling: node 1 is the end
// to which the next node is attached when growing the series.
inline std::vector<std::pair<int, int>> series_edges(Series s, int r) {
  std::vector<std::pair<int, int>> e;
  switch (s) {
    case Series::A:
      for (int i = 1; i < r; ++i) e.push_back({i, i + 1});
      break;
    case Series::D:
      for (int i = 1; i < r - 1; ++i) e.push_back({i, i + 1});
      e.push_back({r - 2, r});
      break;
    case Series::E:
      for (int i = 1; i < r - 1; ++i) e.push_back({i, i + 1});
      e.push_back({r - 3, r});
      break;
  }
  std::sort(e.begin(), e.end());
  return e;
}

inline int exact_int_rank(const std::vector<std::vector<int>>& m) {
  SparseMatrix sm(static_cast<int>(m.size()), static_cast<int>(m.size()));
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < m.size(); ++j)
      if (m[i][j] != 0) sm.set(static_cast<int>(i), static_cast<int>(j), Rat(m[i][j]));
  return rank(sm);
}

inline CartanData cartan_from_white_edges(Series s, int r,
                                          const std::vector<std::pair<int, int>>& edges) {
  CartanData c;
  c.series = s;
  c.rank = r;
  c.A.assign(r, std::vector<int>(r, 0));
  for (int i = 0; i < r; ++i) c.A[i][i] = 2;
  for (const auto& [a, b] : edges) {
    c.A[a - 1][b - 1] = -1;
    c.A[b - 1][a - 1] = -1;
  }
  // extension rule: B_ij = A_ij, B_00 = 0, B_0a = B_a0 = -1 iff a = 1
  c.B.assign(r + 1, std::vector<int>(r + 1, 0));
  c.B[0][1] = c.B[1][0] = -1;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) c.B[i + 1][j + 1] = c.A[i][j];
  c.nondegenerate_A = exact_int_rank(c.A) == r;
  c.nondegenerate_B = exact_int_rank(c.B) == r + 1;
  return c;
}

}  // namespace detail

inline CartanData cartan_from_series(Series s, int r) {
  if (!detail::rank_valid(s, r))
    throw error(errc::invalid_rank,
                std::string(1, series_char(s)) + "_" + std::to_string(r) + " is out of range");
  return detail::cartan_from_white_edges(s, r, detail::series_edges(s, r));
}

inline DynkinDiagram diagram_from_series(Series s, int r) {
  if (!detail::rank_valid(s, r))
    throw error(errc::invalid_rank, "rank out of range");
  DynkinDiagram d;
  d.nodes.push_back({0, NodeKind::gray});
  for (int i = 1; i <= r; ++i) d.nodes.push_back({i, NodeKind::white});
  d.edges.push_back({0, 1});
  for (auto e : detail::series_edges(s, r)) d.edges.push_back(e);
  std::sort(d.edges.begin(), d.edges.end());
  return d;
}

// Series classification of a parsed diagram's white subgraph. The labelling
// must follow the series convention exactly.
inline CartanData cartan_from_diagram(const DynkinDiagram& d) {
  if (!d.has_gray())
    throw error(errc::semantic_error, "diagram has no gray node; cannot extend Cartan matrix");
  int r = d.white_count();
  if (r < 1) throw error(errc::semantic_error, "no white nodes");
  std::vector<std::pair<int, int>> white_edges;
  for (const auto& [a, b] : d.edges)
    if (a != 0 && b != 0) white_edges.push_back({a, b});
  std::sort(white_edges.begin(), white_edges.end());
  for (Series s : {Series::A, Series::D, Series::E}) {
    if (!detail::rank_valid(s, r)) continue;
    if (white_edges == detail::series_edges(s, r))
      return detail::cartan_from_white_edges(s, r, white_edges);
  }
  throw error(errc::semantic_error, "white subgraph is not an A/D/E diagram in the series labelling");
}

}  // namespace superforge
