#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "superforge/dynkin.hpp"
#include "superforge/error.hpp"
#include "superforge/sparse_matrix.hpp"

namespace superforge {

// The level-0 algebra g_0 of the presentations: gl(n) for series A (with the
// identifications of the Chevalley generators as G-tensors), and the
// root-space model of g + the extra Cartan element h_0 for D/E.
struct Level0 {
  std::string name;
  int dim = 0;
  std::vector<std::string> labels;
  std::map<std::pair<int, int>, SparseVec> table;  // i < j only; all even
  std::map<std::string, SparseVec> chev;           // "e1","f1","h0",... -> coords

  // Generation program: every basis element lies in the span of iterated
  // brackets of Chevalley generators. Used to derive full g_0 actions on
  // modules that are built from Chevalley actions alone.
  struct Step {
    int kind;         // 0: chevalley symbol, 1: bracket of two earlier steps
    std::string sym;  // for kind 0
    int i = -1, j = -1;
  };
  std::vector<Step> steps;
  std::vector<SparseVec> basis_expr;  // per basis index: combination over steps

  SparseVec bracket_basis(int i, int j) const {
    if (i == j) return {};
    bool flip = i > j;
    if (flip) std::swap(i, j);
    auto it = table.find({i, j});
    if (it == table.end()) return {};
    return flip ? vec_scaled(it->second, Rat(-1)) : it->second;
  }

  SparseVec bracket(const SparseVec& x, const SparseVec& y) const {
    SparseVec out;
    for (const auto& [i, ci] : x)
      for (const auto& [j, cj] : y) vec_add_scaled(out, bracket_basis(i, j), ci * cj);
    return out;
  }

  void set_bracket(int i, int j, SparseVec v) {
    if (i >= j) throw error(errc::internal, "level0 set_bracket order");
    if (!v.empty()) table[{i, j}] = std::move(v);
  }

  const SparseVec& chev_elem(const std::string& s) const {
    auto it = chev.find(s);
    if (it == chev.end()) throw error(errc::internal, "no chevalley element " + s);
    return it->second;
  }
};

namespace detail {

// Fill steps/basis_expr by closing the Chevalley generators under brackets.
inline void build_generation_table(Level0& g) {
  TrackedRowSpace span(g.dim);
  std::vector<SparseVec> values;
  auto add_step = [&](Level0::Step st, const SparseVec& v) {
    if (!span.insert(v)) return false;
    g.steps.push_back(std::move(st));
    values.push_back(v);
    return true;
  };
  std::vector<std::string> symbols;
  for (const auto& [s, v] : g.chev) symbols.push_back(s);
  std::sort(symbols.begin(), symbols.end());
  for (const auto& s : symbols) add_step({0, s}, g.chev.at(s));
  size_t frontier_begin = 0;
  while (span.rank() < g.dim) {
    size_t frontier_end = g.steps.size();
    bool grew = false;
    for (size_t i = 0; i < frontier_end; ++i)
      for (size_t j = std::max(i + 1, frontier_begin); j < frontier_end; ++j) {
        SparseVec v = g.bracket(values[i], values[j]);
        if (v.empty()) continue;
        if (add_step({1, "", static_cast<int>(i), static_cast<int>(j)}, v)) grew = true;
        if (span.rank() == g.dim) break;
      }
    if (!grew)
      throw error(errc::internal, "chevalley generators do not generate " + g.name);
    frontier_begin = frontier_end;
  }
  for (int k = 0; k < g.dim; ++k) {
    SparseVec unit;
    unit[k] = 1;
    auto expr = span.express(unit);
    if (!expr) throw error(errc::internal, "generation table incomplete");
    g.basis_expr.push_back(std::move(*expr));
  }
}

}  // namespace detail

// gl(n) with basis G^a_b (flat index a*n+b) and the identifications
// e_i = G^{i-1}_i, f_i = G^i_{i-1}, h_i = G^{i-1}_{i-1} - G^i_i,
// h_0 = G - G^0_0.
inline Level0 gl_level0(int n) {
  if (n < 2) throw error(errc::invalid_rank, "gl(n) model requires n >= 2");
  Level0 g;
  g.name = "gl(" + std::to_string(n) + ")";
  g.dim = n * n;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      g.labels.push_back("G^" + std::to_string(a) + "_" + std::to_string(b));
  auto idx = [n](int a, int b) { return a * n + b; };
  // [G^a_b, G^c_d] = delta_b^c G^a_d - delta_d^a G^c_b
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          int i = idx(a, b), j = idx(c, d);
          if (i >= j) continue;
          SparseVec v;
          if (b == c) vec_add_scaled(v, SparseVec{{idx(a, d), Rat(1)}}, Rat(1));
          if (d == a) vec_add_scaled(v, SparseVec{{idx(c, b), Rat(1)}}, Rat(-1));
          g.set_bracket(i, j, std::move(v));
        }
  for (int i = 1; i < n; ++i) {
    g.chev["e" + std::to_string(i)] = SparseVec{{idx(i - 1, i), Rat(1)}};
    g.chev["f" + std::to_string(i)] = SparseVec{{idx(i, i - 1), Rat(1)}};
    g.chev["h" + std::to_string(i)] =
        SparseVec{{idx(i - 1, i - 1), Rat(1)}, {idx(i, i), Rat(-1)}};
  }
  SparseVec h0;
  for (int a = 1; a < n; ++a) h0[idx(a, a)] = 1;
  g.chev["h0"] = std::move(h0);
  detail::build_generation_table(g);
  return g;
}

// Root-space model of g (simply laced, from the Cartan matrix A) extended by
// h_0 acting with the B_{0i} weights. Basis: E_alpha for all roots, then
// h_1..h_r, then h_0.
inline Level0 rootspace_level0(const CartanData& c) {
  if (!c.nondegenerate_A)
    throw error(errc::degenerate_cartan, "root-space model needs a non-degenerate Cartan matrix");
  int r = c.rank;
  using Root = std::vector<int>;
  auto pairing = [&](const Root& x, const Root& y) {
    long long s = 0;
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) s += static_cast<long long>(x[i]) * c.A[i][j] * y[j];
    return s;
  };
  // positive roots by height
  std::vector<Root> pos;
  std::map<Root, int> seen;
  for (int i = 0; i < r; ++i) {
    Root a(r, 0);
    a[i] = 1;
    seen[a] = static_cast<int>(pos.size());
    pos.push_back(a);
  }
  for (size_t head = 0; head < pos.size(); ++head) {
    Root a = pos[head];
    for (int i = 0; i < r; ++i) {
      Root simple(r, 0);
      simple[i] = 1;
      if (pairing(a, simple) != -1) continue;
      Root b = a;
      b[i] += 1;
      if (!seen.count(b)) {
        seen[b] = static_cast<int>(pos.size());
        pos.push_back(b);
      }
    }
  }
  std::sort(pos.begin(), pos.end(), [](const Root& x, const Root& y) {
    int hx = 0, hy = 0;
    for (int v : x) hx += v;
    for (int v : y) hy += v;
    if (hx != hy) return hx < hy;
    return x < y;
  });
  int np = static_cast<int>(pos.size());

  Level0 g;
  g.name = std::string(1, series_char(c.series)) + std::to_string(r) + "+h0";
  g.dim = 2 * np + r + 1;
  auto root_at = [&](int idx) -> Root {  // signed root for basis index < 2*np
    if (idx < np) return pos[idx];
    Root neg = pos[idx - np];
    for (int& v : neg) v = -v;
    return neg;
  };
  auto root_label = [&](const Root& a) {
    std::string s = "E[";
    for (int i = 0; i < r; ++i) {
      if (i) s += ",";
      s += std::to_string(a[i]);
    }
    return s + "]";
  };
  for (int i = 0; i < 2 * np; ++i) g.labels.push_back(root_label(root_at(i)));
  for (int i = 1; i <= r; ++i) g.labels.push_back("H" + std::to_string(i));
  g.labels.push_back("H0");

  auto root_index = [&](const Root& a) -> int {
    Root p = a;
    bool negative = false;
    for (int v : a)
      if (v > 0) break;
      else if (v < 0) {
        negative = true;
        break;
      }
    if (negative)
      for (int& v : p) v = -v;
    auto it = seen.find(p);
    if (it == seen.end()) return -1;
    // map BFS index to sorted order
    auto pos_it = std::find(pos.begin(), pos.end(), p);
    int k = static_cast<int>(pos_it - pos.begin());
    return negative ? k + np : k;
  };
  int h_base = 2 * np;  // h_i at h_base + (i-1), h_0 at h_base + r

  // bimultiplicative asymmetry function on the root lattice
  auto eps = [&](const Root& x, const Root& y) -> int {
    long long e = 0;
    for (int i = 0; i < r; ++i) {
      if (x[i] == 0) continue;
      for (int j = 0; j < r; ++j) {
        if (y[j] == 0) continue;
        bool contributes = (i == j) || (i < j && c.A[i][j] == -1);
        if (contributes) e += static_cast<long long>(x[i]) * y[j];
      }
    }
    return (e % 2 == 0) ? 1 : -1;
  };

  // root-root brackets
  for (int i = 0; i < 2 * np; ++i) {
    Root a = root_at(i);
    for (int j = i + 1; j < 2 * np; ++j) {
      Root b = root_at(j);
      Root sum(r);
      bool zero = true;
      for (int t = 0; t < r; ++t) {
        sum[t] = a[t] + b[t];
        if (sum[t] != 0) zero = false;
      }
      SparseVec v;
      if (zero) {
        // [E_a, E_{-a}] = -H_a
        for (int t = 0; t < r; ++t)
          if (a[t] != 0) v[h_base + t] = -a[t];
      } else {
        int k = root_index(sum);
        if (k >= 0) v[k] = eps(a, b);
      }
      g.set_bracket(i, j, std::move(v));
    }
  }
  // Cartan action: [h_i, E_a] = (alpha_i, a) E_a ; [h_0, E_a] = sum a_j B_{0j} E_a
  for (int i = 0; i < 2 * np; ++i) {
    Root a = root_at(i);
    for (int t = 0; t < r; ++t) {
      long long w = 0;
      for (int j = 0; j < r; ++j) w += static_cast<long long>(c.A[t][j]) * a[j];
      SparseVec v;
      if (w != 0) v[i] = -w;  // stored as [E_a, h] since i < h_base
      g.set_bracket(i, h_base + t, std::move(v));
    }
    long long w0 = 0;
    for (int j = 0; j < r; ++j) w0 += static_cast<long long>(c.B[0][j + 1]) * a[j];
    SparseVec v;
    if (w0 != 0) v[i] = -w0;
    g.set_bracket(i, h_base + r, std::move(v));
  }
  for (int i = 1; i <= r; ++i) {
    Root simple(r, 0);
    simple[i - 1] = 1;
    g.chev["e" + std::to_string(i)] = SparseVec{{root_index(simple), Rat(1)}};
    Root neg = simple;
    neg[i - 1] = -1;
    g.chev["f" + std::to_string(i)] = SparseVec{{root_index(neg), Rat(-1)}};
    g.chev["h" + std::to_string(i)] = SparseVec{{h_base + i - 1, Rat(1)}};
  }
  g.chev["h0"] = SparseVec{{h_base + r, Rat(1)}};
  detail::build_generation_table(g);
  return g;
}

// level0_from_chevalley: the concrete gl-type model for series A; for other
// series the abstract Chevalley-generated level-0 algebra (root-space model).
inline Level0 level0_from_chevalley(const CartanData& c, bool require_gl_model = false) {
  if (c.series == Series::A) return gl_level0(c.rank + 1);
  if (require_gl_model)
    throw error(errc::unsupported_series, "gl tensor model only exists for series A");
  return rootspace_level0(c);
}

}  // namespace superforge
