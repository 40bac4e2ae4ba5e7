#pragma once

#include <json.hpp>

#include <sstream>
#include <string>

#include "superforge/dynkin.hpp"
#include "superforge/relations.hpp"
#include "superforge/superalgebra.hpp"
#include "superforge/verify.hpp"

namespace superforge {

// ordered_json keeps insertion order, which makes every emission byte-stable
using Json = nlohmann::ordered_json;

inline Json cartan_to_json(const CartanData& c) {
  Json j;
  j["series"] = std::string(1, series_char(c.series));
  j["rank"] = c.rank;
  j["A"] = c.A;
  j["B"] = c.B;
  j["odd_indices"] = c.odd_indices;
  j["nondegenerate_A"] = c.nondegenerate_A;
  j["nondegenerate_B"] = c.nondegenerate_B;
  return j;
}

inline Json expr_to_json(const Expr& e) {
  if (e.is_leaf()) return Json{{"sym", e.leaf}};
  Json j;
  j["op"] = "bracket";
  j["args"] = Json::array({expr_to_json(e.kids[0]), expr_to_json(e.kids[1])});
  return j;
}

inline Json relations_to_json(const RelationSet& rs) {
  Json j;
  j["mode"] = rs.alphabet.mode == AlphabetMode::borcherds ? "borcherds" : "tha";
  j["rank"] = rs.alphabet.r;
  j["even_symbols"] = rs.alphabet.even_symbols;
  j["odd_symbols"] = rs.alphabet.odd_symbols;
  Json rels = Json::array();
  for (const auto& rel : rs.relations) {
    Json r;
    r["id"] = rel.id;
    r["family"] = family_name(rel.family);
    Json terms = Json::array();
    for (const auto& t : rel.terms) {
      Json term;
      term["coeff"] = rat_to_string(t.coeff);
      term["expr"] = expr_to_json(t.expr);
      terms.push_back(std::move(term));
    }
    r["terms"] = std::move(terms);
    rels.push_back(std::move(r));
  }
  j["relations"] = std::move(rels);
  return j;
}

inline Json algebra_to_json(const GradedSuperalgebra& g, bool emit_structure_constants) {
  Json j;
  j["name"] = g.name;
  j["levels"] = g.levels;
  Json dims = Json::array();
  for (int l : g.levels) dims.push_back(Json::array({l, g.dim(l)}));
  j["dimension_table"] = std::move(dims);
  j["total_dim"] = g.total_dim();
  Json basis;
  for (int l : g.levels) basis[std::to_string(l)] = g.labels.at(l);
  j["basis"] = std::move(basis);
  if (emit_structure_constants) {
    // triples [[la, ia], [lb, ib], [[k, "p/q"], ...]] over canonical pairs
    Json table = Json::array();
    for (const auto& [key, val] : g.table) {
      int fa = static_cast<int>(key >> 32), fb = static_cast<int>(key & 0xffffffffu);
      auto [la, ia] = g.unflat(fa);
      auto [lb, ib] = g.unflat(fb);
      Json entry = Json::array();
      entry.push_back(Json::array({la, ia}));
      entry.push_back(Json::array({lb, ib}));
      Json coords = Json::array();
      for (const auto& [k, c] : val) coords.push_back(Json::array({k, rat_to_string(c)}));
      entry.push_back(std::move(coords));
      table.push_back(std::move(entry));
    }
    j["structure_constants"] = std::move(table);
  }
  return j;
}

inline std::string dims_to_csv(const GradedSuperalgebra& g) {
  std::string out = "level,dimension\n";
  for (int l : g.levels) out += std::to_string(l) + "," + std::to_string(g.dim(l)) + "\n";
  return out;
}

inline Json report_to_json(const VerificationReport& rep) {
  Json j;
  j["check"] = rep.check;
  if (!rep.target.empty()) j["target"] = rep.target;
  if (rep.n > 0) j["n"] = rep.n;
  if (rep.depth > 0) j["depth"] = rep.depth;
  j["seed"] = rep.seed;
  j["verdict"] = rep.verdict;
  Json stages = Json::array();
  for (const auto& s : rep.stages)
    stages.push_back(Json{{"name", s.name}, {"pass", s.pass}, {"detail", s.detail}});
  j["stages"] = std::move(stages);
  Json table = Json::array();
  for (auto it = rep.dim_table.rbegin(); it != rep.dim_table.rend(); ++it) {
    Json row;
    row["level"] = it->first;
    for (const auto& [k, v] : it->second) row[k] = v;
    table.push_back(std::move(row));
  }
  j["dimension_table"] = std::move(table);
  if (!rep.relation_matrix.empty()) {
    Json rm;
    for (const auto& [fam, counts] : rep.relation_matrix)
      rm[fam] = Json{{"checked", counts.first}, {"failed", counts.second}};
    j["relation_checks"] = std::move(rm);
  }
  j["freedom"] = rep.freedom;
  // wall-clock timing is logged, not emitted: JSON output stays byte-stable
  return j;
}

inline std::string report_to_text(const VerificationReport& rep) {
  std::ostringstream os;
  os << "check: " << rep.check;
  if (!rep.target.empty()) os << " " << rep.target;
  if (rep.n > 0) os << " n=" << rep.n;
  if (rep.depth > 0) os << " depth=" << rep.depth;
  os << " seed=" << rep.seed << "\n";
  for (const auto& s : rep.stages)
    os << "  [" << (s.pass ? "pass" : "FAIL") << "] " << s.name << ": " << s.detail << "\n";
  if (!rep.dim_table.empty()) {
    os << "  level  dims\n";
    for (auto it = rep.dim_table.rbegin(); it != rep.dim_table.rend(); ++it) {
      os << "  " << it->first << ":";
      for (const auto& [k, v] : it->second) os << "  " << k << "=" << v;
      os << "\n";
    }
  }
  if (!rep.relation_matrix.empty()) {
    os << "  relation families:";
    for (const auto& [fam, counts] : rep.relation_matrix)
      os << "  " << fam << " " << (counts.first - counts.second) << "/" << counts.first;
    os << "\n";
  }
  if (rep.freedom > 0) os << "  solution freedom: " << rep.freedom << "\n";
  os << "verdict: " << rep.verdict << "  (" << rep.timing_ms << " ms)\n";
  return os.str();
}

inline std::string report_dims_to_csv(const VerificationReport& rep) {
  std::string out = "level";
  std::vector<std::string> cols;
  for (const auto& [l, row] : rep.dim_table)
    for (const auto& [k, v] : row)
      if (std::find(cols.begin(), cols.end(), k) == cols.end()) cols.push_back(k);
  for (const auto& c : cols) out += "," + c;
  out += "\n";
  for (auto it = rep.dim_table.rbegin(); it != rep.dim_table.rend(); ++it) {
    out += std::to_string(it->first);
    for (const auto& c : cols) {
      auto f = it->second.find(c);
      out += ",";
      if (f != it->second.end()) out += std::to_string(f->second);
    }
    out += "\n";
  }
  return out;
}

}  // namespace superforge
