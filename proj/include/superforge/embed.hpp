#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "superforge/error.hpp"
#include "superforge/relations.hpp"
#include "superforge/superalgebra.hpp"

namespace superforge {

// Assignment of presented generators to elements of a concrete graded
// superalgebra, found by solving the linear relation subfamily exactly and
// then evaluating every relation on the solution.
struct EmbeddingSolution {
  std::map<std::string, Element> assignment;   // all generators
  std::map<std::string, Element> residuals;    // relation id -> residual (zero on success)
  std::vector<std::string> linear_ids;         // relations used as linear constraints
  std::vector<std::string> quadratic_ids;      // evaluated after solving
  int freedom = 0;                             // affine freedom of the unknown images
  bool all_residuals_zero = false;
};

namespace detail {

// element with an affine dependence on unknowns: constant + sum_v x_v col_v
struct AffElem {
  Element constant;
  std::map<int, Element> lin;  // variable index -> coefficient element

  bool is_constant() const { return lin.empty(); }
};

struct QuadraticEncountered {};

inline AffElem aff_bracket(const GradedSuperalgebra& g, const AffElem& a, const AffElem& b) {
  if (!a.lin.empty() && !b.lin.empty()) throw QuadraticEncountered{};
  AffElem out;
  out.constant = g.bracket(a.constant, b.constant);
  for (const auto& [v, col] : a.lin) {
    Element e = g.bracket(col, b.constant);
    if (!e.empty()) out.lin[v] = std::move(e);
  }
  for (const auto& [v, col] : b.lin) {
    Element e = g.bracket(a.constant, col);
    if (!e.empty()) {
      Element& slot = out.lin[v];
      elem_add_scaled(slot, e, Rat(1));
      if (slot.empty()) out.lin.erase(v);
    }
  }
  return out;
}

}  // namespace detail

// Solves for the images of the unknown generators. `fixed` must cover every
// even generator and e_0; `unknown_levels` names the remaining generators
// and the target level of their images.
inline EmbeddingSolution solve_generator_embedding(
    const RelationSet& rs, const GradedSuperalgebra& target,
    const std::map<std::string, Element>& fixed,
    const std::map<std::string, int>& unknown_levels) {
  // variable layout
  std::vector<std::pair<std::string, int>> var_of;  // var -> (symbol, coordinate)
  std::map<std::string, int> var_base;
  for (const auto& [sym, level] : unknown_levels) {
    var_base[sym] = static_cast<int>(var_of.size());
    for (int i = 0; i < target.dim(level); ++i) var_of.push_back({sym, i});
  }
  int nvars = static_cast<int>(var_of.size());

  auto leaf_value = [&](const std::string& sym) -> detail::AffElem {
    detail::AffElem out;
    auto itf = fixed.find(sym);
    if (itf != fixed.end()) {
      out.constant = itf->second;
      return out;
    }
    auto itu = unknown_levels.find(sym);
    if (itu == unknown_levels.end())
      throw error(errc::internal, "generator " + sym + " neither fixed nor unknown");
    int base = var_base.at(sym);
    for (int i = 0; i < target.dim(itu->second); ++i)
      out.lin[base + i] = target.basis_element(itu->second, i);
    return out;
  };

  std::function<detail::AffElem(const Expr&)> eval = [&](const Expr& e) -> detail::AffElem {
    if (e.is_leaf()) return leaf_value(e.leaf);
    return detail::aff_bracket(target, eval(e.kids[0]), eval(e.kids[1]));
  };

  EmbeddingSolution sol;
  // build the linear system; quadratic relations are deferred
  SparseMatrix system(0, nvars);
  SparseVec rhs;
  std::map<int, std::pair<int, int>> row_coord;  // diagnostic only
  std::vector<const Relation*> quadratic;
  for (const auto& rel : rs.relations) {
    bool is_quadratic = false;
    detail::AffElem total;
    for (const auto& term : rel.terms) {
      try {
        detail::AffElem v = eval(term.expr);
        elem_add_scaled(total.constant, v.constant, term.coeff);
        for (const auto& [var, col] : v.lin) {
          Element& slot = total.lin[var];
          elem_add_scaled(slot, col, term.coeff);
          if (slot.empty()) total.lin.erase(var);
        }
      } catch (const detail::QuadraticEncountered&) {
        is_quadratic = true;
        break;
      }
    }
    if (is_quadratic) {
      quadratic.push_back(&rel);
      sol.quadratic_ids.push_back(rel.id);
      continue;
    }
    sol.linear_ids.push_back(rel.id);
    // rows per target coordinate appearing in constant or any column
    std::map<std::pair<int, int>, SparseVec> rows;
    for (const auto& [var, col] : total.lin)
      for (const auto& [coord, c] : col) rows[coord][var] = c;
    for (const auto& [coord, c] : total.constant) rows[coord];  // ensure presence
    for (auto& [coord, lin] : rows) {
      int r = system.rows;
      system.append_row(lin);
      Rat cval = 0;
      auto itc = total.constant.find(coord);
      if (itc != total.constant.end()) cval = itc->second;
      if (cval != 0) rhs[r] = -cval;
      row_coord[r] = coord;
    }
    // a relation with no unknowns must already hold; record as residual below
  }
  AffineSolution lin_sol = solve_affine(system, rhs);
  if (!lin_sol.consistent)
    throw error(errc::no_solution, "linear relation subfamily is unsatisfiable in the target");
  sol.freedom = static_cast<int>(lin_sol.kernel.size());

  // assignment: fixed + solved unknowns (free coordinates at zero, which is
  // the canonical representative in the rref variable order)
  sol.assignment = fixed;
  for (const auto& [sym, level] : unknown_levels) {
    Element img;
    int base = var_base.at(sym);
    for (int i = 0; i < target.dim(level); ++i) {
      Rat c = vec_at(lin_sol.particular, base + i);
      if (c != 0) img[{level, i}] = c;
    }
    sol.assignment[sym] = std::move(img);
  }

  // evaluate every relation exactly on the assignment
  std::function<Element(const Expr&)> eval_concrete = [&](const Expr& e) -> Element {
    if (e.is_leaf()) return sol.assignment.at(e.leaf);
    return target.bracket(eval_concrete(e.kids[0]), eval_concrete(e.kids[1]));
  };
  sol.all_residuals_zero = true;
  for (const auto& rel : rs.relations) {
    Element res;
    for (const auto& term : rel.terms) elem_add_scaled(res, eval_concrete(term.expr), term.coeff);
    if (!res.empty()) sol.all_residuals_zero = false;
    sol.residuals[rel.id] = std::move(res);
  }
  return sol;
}

}  // namespace superforge
