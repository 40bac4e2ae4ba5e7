#pragma once

#include <string>
#include <vector>

#include "superforge/error.hpp"
#include "superforge/grassmann.hpp"
#include "superforge/superalgebra.hpp"

namespace superforge {

// Concrete model of W(n) = der Lambda(n). Level -p+1 holds the K^{a1..ap}_b
// with p upper indices; the sign convention puts the derivations d/d theta at
// level +1 (levels reversed relative to the usual convention).
struct WAlgebra {
  int n = 0;
  GradedSuperalgebra algebra;
  std::map<int, std::vector<Deriv>> basis;  // per level, aligned with labels

  const Deriv& deriv_at(int level, int i) const { return basis.at(level)[i]; }

  // Position of K^{upper}_lower in its level's basis.
  int index_of(const Deriv& k) const {
    const auto& lvl = basis.at(deriv_level(k));
    for (size_t i = 0; i < lvl.size(); ++i)
      if (lvl[i].upper == k.upper && lvl[i].lower == k.lower) return static_cast<int>(i);
    throw error(errc::internal, "derivation not in basis");
  }

  Element to_element(const DerivElem& d) const {
    Element out;
    for (const auto& [key, c] : d) {
      Deriv k{key.first, key.second};
      out[{deriv_level(k), index_of(k)}] = c;
    }
    return out;
  }
};

namespace detail {

// Strictly increasing index lists of length p over {0..n-1}, in lex order.
inline std::vector<Mask> combinations_lex(int n, int p) {
  std::vector<Mask> out;
  std::vector<int> idx(p);
  for (int i = 0; i < p; ++i) idx[i] = i;
  if (p == 0) return {Mask(0)};
  while (true) {
    Mask m = 0;
    for (int i : idx) m |= Mask(1) << i;
    out.push_back(m);
    int i = p - 1;
    while (i >= 0 && idx[i] == n - p + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < p; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

inline long long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

}  // namespace detail

inline WAlgebra build_W(int n) {
  if (n < 2) throw error(errc::invalid_rank, "W(n) requires n >= 2");
  if (n > kMaxGrassmannRank) throw error(errc::invalid_rank, "n too large");
  WAlgebra w;
  w.n = n;
  w.algebra.name = "W(" + std::to_string(n) + ")";
  for (int p = 0; p <= n; ++p) {
    int level = 1 - p;
    w.algebra.levels.push_back(level);
    auto& lvl = w.basis[level];
    std::vector<std::string> lab;
    for (Mask upper : detail::combinations_lex(n, p))
      for (int b = 0; b < n; ++b) {
        lvl.push_back({upper, b});
        lab.push_back(deriv_label({upper, b}));
      }
    if (static_cast<long long>(lvl.size()) != n * detail::binom(n, p))
      throw error(errc::internal, "level dimension mismatch in build_W");
    w.algebra.labels[level] = std::move(lab);
  }
  // structure constants: compose contraction actions once at build time
  int total = w.algebra.total_dim();
  for (int fa = 0; fa < total; ++fa) {
    auto [la, ia] = w.algebra.unflat(fa);
    for (int fb = fa; fb < total; ++fb) {
      auto [lb, ib] = w.algebra.unflat(fb);
      if (!w.algebra.has_level(la + lb)) continue;
      DerivElem d = bracket_derivs(w.deriv_at(la, ia), w.deriv_at(lb, ib), n);
      SparseVec coords;
      for (const auto& [key, c] : d) {
        Deriv k{key.first, key.second};
        if (deriv_level(k) != la + lb) throw error(errc::internal, "bracket level mismatch");
        coords[w.index_of(k)] = c;
      }
      w.algebra.set_bracket(la, ia, lb, ib, std::move(coords));
    }
  }
  return w;
}

// Coordinates of the trace vector t^a = sum_b K^{ab}_b in level -1 of W(n).
// For b < a the stored basis element is K^{ba}_b, which carries a sign.
inline SparseVec trace_vector(const WAlgebra& w, int a) {
  SparseVec v;
  for (int b = 0; b < w.n; ++b) {
    if (b == a) continue;
    Mask upper = (Mask(1) << a) | (Mask(1) << b);
    v[w.index_of({upper, b})] = (a < b) ? 1 : -1;
  }
  return v;
}

// Basis of the traceless part of level -1: kernel of the contraction of the
// lower index with an upper index.
inline std::vector<SparseVec> traceless_level_minus1(const WAlgebra& w) {
  int dim = w.algebra.dim(-1);
  SparseMatrix trace_map(w.n, dim);
  for (int i = 0; i < dim; ++i) {
    const Deriv& k = w.deriv_at(-1, i);
    Mask bit = Mask(1) << k.lower;
    if (!(k.upper & bit)) continue;
    // contribution of K^{ab}_b to t^a, with the antisymmetry sign
    Mask other = k.upper & ~bit;
    int a = mono_indices(other)[0];
    trace_map.set(a, i, (a < k.lower) ? Rat(1) : Rat(-1));
  }
  return kernel_basis(trace_map);
}

// S(n): generated by level +1 and the traceless part of level -1.
inline SubalgebraResult build_S(int n) {
  if (n < 3) throw error(errc::invalid_rank, "S(n) requires n >= 3");
  WAlgebra w = build_W(n);
  std::vector<std::pair<int, SparseVec>> seeds;
  for (int a = 0; a < n; ++a) {
    SparseVec v;
    v[w.index_of({0, a})] = 1;
    seeds.emplace_back(1, std::move(v));
  }
  for (auto& v : traceless_level_minus1(w)) seeds.emplace_back(-1, std::move(v));
  SubalgebraSpans spans = subalgebra_close(w.algebra, seeds);
  auto result = subalgebra_build(w.algebra, spans, "S(" + std::to_string(n) + ")");
  // expected dimensions: n*C(n,p) - C(n,p-1) at level -p+1, empty below 2-n
  for (int p = 0; p <= n; ++p) {
    long long expect = w.n * detail::binom(n, p) - detail::binom(n, p - 1);
    if (result.algebra.dim(1 - p) != expect)
      throw error(errc::internal, "S(n) level dimension mismatch");
  }
  return result;
}

// A(n-1,0) inside W(n): generated by level +1 and the trace part of level -1.
// The basis is labeled by the gl(n) tensors E_a, G^a_b, F^a with E_a = K_a,
// G^a_b = K^a_b, F^a = sum_b K^{ab}_b.
struct ASubAlgebra {
  int n = 0;
  GradedSuperalgebra algebra;                       // levels +1, 0, -1
  std::map<int, std::vector<SparseVec>> embedding;  // into W(n) coords
};

inline ASubAlgebra build_A_sub(int n) {
  if (n < 2) throw error(errc::invalid_rank, "A(n-1,0) model requires n >= 2");
  WAlgebra w = build_W(n);
  ASubAlgebra a;
  a.n = n;
  a.algebra.name = "A(" + std::to_string(n - 1) + ",0)";
  a.algebra.levels = {1, 0, -1};
  std::vector<std::string> lab1, lab0, labm1;
  std::vector<SparseVec> emb1, emb0, embm1;
  for (int i = 0; i < n; ++i) {
    SparseVec v;
    v[w.index_of({0, i})] = 1;
    emb1.push_back(std::move(v));
    lab1.push_back("E_" + std::to_string(i));
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      SparseVec v;
      v[w.index_of({Mask(1) << i, j})] = 1;
      emb0.push_back(std::move(v));
      lab0.push_back("G^" + std::to_string(i) + "_" + std::to_string(j));
    }
  for (int i = 0; i < n; ++i) {
    embm1.push_back(trace_vector(w, i));
    labm1.push_back("F^" + std::to_string(i));
  }
  a.algebra.labels[1] = lab1;
  a.algebra.labels[0] = lab0;
  a.algebra.labels[-1] = labm1;
  a.embedding[1] = emb1;
  a.embedding[0] = emb0;
  a.embedding[-1] = embm1;

  // closure check + structure constants in the E/G/F basis
  std::map<int, RowSpace> spans;
  for (int l : a.algebra.levels) {
    RowSpace rs(w.algebra.dim(l));
    for (const auto& v : a.embedding[l]) rs.insert(v);
    if (rs.rank() != static_cast<int>(a.embedding[l].size()))
      throw error(errc::internal, "A-sub basis not independent");
    spans.emplace(l, std::move(rs));
  }
  for (int la : a.algebra.levels)
    for (int lb : a.algebra.levels) {
      int target = la + lb;
      for (size_t ia = 0; ia < a.embedding[la].size(); ++ia)
        for (size_t ib = 0; ib < a.embedding[lb].size(); ++ib) {
          int fa = a.algebra.flat(la, static_cast<int>(ia));
          int fb = a.algebra.flat(lb, static_cast<int>(ib));
          if (fa > fb) continue;
          Element r = w.algebra.bracket(GradedSuperalgebra::from_coords(la, a.embedding[la][ia]),
                                        GradedSuperalgebra::from_coords(lb, a.embedding[lb][ib]));
          if (r.empty()) continue;
          SparseVec coords_w = w.algebra.level_coords(r, target);
          auto it = spans.find(target);
          if (it == spans.end())
            throw error(errc::internal, "A-sub not closed: bracket at level " +
                                            std::to_string(target));
          // solve for coordinates in the (non-echelon) E/G/F basis
          SparseMatrix m(w.algebra.dim(target), static_cast<int>(a.embedding[target].size()));
          for (size_t col = 0; col < a.embedding[target].size(); ++col)
            for (const auto& [row, c] : a.embedding[target][col])
              m.set(row, static_cast<int>(col), c);
          auto sol = solve_affine(m, coords_w);
          if (!sol.consistent) throw error(errc::internal, "A-sub not closed under bracket");
          a.algebra.set_bracket(la, static_cast<int>(ia), lb, static_cast<int>(ib),
                                std::move(sol.particular));
        }
    }
  return a;
}

}  // namespace superforge
