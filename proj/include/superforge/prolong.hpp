#pragma once

#include <deque>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "superforge/error.hpp"
#include "superforge/level0.hpp"
#include "superforge/modules.hpp"
#include "superforge/superalgebra.hpp"
#include "superforge/wn.hpp"

namespace superforge {

// Local part g_{-1} + g_0 + g_{+1} of a Z-graded superalgebra, with the
// pairing [g_{+1}, g_{-1}] -> g_0. Level +-1 are odd, g_0 is even. The
// bracket [g_{+1}, g_{+1}] is flagged: in scope it vanishes.
struct LocalPart {
  Level0 g0;
  G0Module plus;   // V_{+1}
  G0Module minus;  // V_{-1}
  // ev[m][e] = [E_e, x_m] in g0 coordinates
  std::vector<std::vector<SparseVec>> ev;
  bool plus_bracket_zero = true;
};

// Jacobi validation on triples whose brackets stay inside the local data.
inline void validate_local_part(const LocalPart& lp) {
  const Level0& g0 = lp.g0;
  auto act_plus = [&](int z, int e) { return lp.plus.act[z][e]; };
  auto act_minus = [&](int z, int m) { return lp.minus.act[z][m]; };
  // (0,0,+1) and (0,0,-1): module axioms
  for (int z1 = 0; z1 < g0.dim; ++z1)
    for (int z2 = 0; z2 < g0.dim; ++z2) {
      SparseVec zz = g0.bracket_basis(z1, z2);
      for (int e = 0; e < lp.plus.dim; ++e) {
        SparseVec lhs = lp.plus.apply_columns(lp.plus.act[z1], act_plus(z2, e));
        vec_add_scaled(lhs, lp.plus.apply_columns(lp.plus.act[z2], act_plus(z1, e)), Rat(-1));
        vec_add_scaled(lhs, lp.plus.apply_g0(zz, SparseVec{{e, Rat(1)}}), Rat(-1));
        if (!lhs.empty()) throw error(errc::inconsistent_local_part, "g0 action on V+1");
      }
      for (int m = 0; m < lp.minus.dim; ++m) {
        SparseVec lhs = lp.minus.apply_columns(lp.minus.act[z1], act_minus(z2, m));
        vec_add_scaled(lhs, lp.minus.apply_columns(lp.minus.act[z2], act_minus(z1, m)), Rat(-1));
        vec_add_scaled(lhs, lp.minus.apply_g0(zz, SparseVec{{m, Rat(1)}}), Rat(-1));
        if (!lhs.empty()) throw error(errc::inconsistent_local_part, "g0 action on V-1");
      }
    }
  // (0,+1,-1): [z,[E,x]] = [[z,E],x] + [E,[z,x]]
  for (int z = 0; z < g0.dim; ++z)
    for (int e = 0; e < lp.plus.dim; ++e)
      for (int m = 0; m < lp.minus.dim; ++m) {
        SparseVec lhs = g0.bracket(SparseVec{{z, Rat(1)}}, lp.ev[m][e]);
        SparseVec rhs;
        for (const auto& [ep, c] : act_plus(z, e)) vec_add_scaled(rhs, lp.ev[m][ep], c);
        for (const auto& [mp, c] : act_minus(z, m)) vec_add_scaled(rhs, lp.ev[mp][e], c);
        vec_add_scaled(lhs, rhs, Rat(-1));
        if (!lhs.empty()) throw error(errc::inconsistent_local_part, "pairing equivariance");
      }
  // (+1,+1,-1) under the [V+1,V+1] = 0 assumption:
  // [E,[E',x]] + [E',[E,x]] = [[E,E'],x] = 0
  if (lp.plus_bracket_zero) {
    for (int e1 = 0; e1 < lp.plus.dim; ++e1)
      for (int e2 = 0; e2 < lp.plus.dim; ++e2)
        for (int m = 0; m < lp.minus.dim; ++m) {
          // [E1, [E2, x]]: bracket of level +1 with g0 lands back in V+1:
          // [E, z] = -[z, E]
          SparseVec lhs;
          for (const auto& [t, c] : lp.ev[m][e2]) vec_add_scaled(lhs, act_plus(t, e1), -c);
          for (const auto& [t, c] : lp.ev[m][e1]) vec_add_scaled(lhs, act_plus(t, e2), -c);
          if (!lhs.empty()) throw error(errc::inconsistent_local_part, "[V+1,V+1] = 0 fails");
        }
  }
}

// Local part of the concrete W(n); the level-0 table must agree with gl(n).
inline LocalPart local_part_from_W(const WAlgebra& w) {
  LocalPart lp;
  int n = w.n;
  lp.g0 = gl_level0(n);
  // level 0 of W(n) is K^a_b in the same flat order a*n+b; verify once
  for (int i = 0; i < n * n; ++i)
    for (int j = i + 1; j < n * n; ++j) {
      SparseVec expect = lp.g0.bracket_basis(i, j);
      SparseVec got = w.algebra.bracket_basis(w.algebra.flat(0, i), w.algebra.flat(0, j));
      if (expect != got) throw error(errc::internal, "gl(n) model misaligned with W level 0");
    }
  auto module_from_levels = [&](int level) {
    G0Module m;
    m.dim = w.algebra.dim(level);
    m.labels = w.algebra.labels.at(level);
    m.act.assign(lp.g0.dim, std::vector<SparseVec>(m.dim));
    for (int z = 0; z < lp.g0.dim; ++z)
      for (int b = 0; b < m.dim; ++b)
        m.act[z][b] = w.algebra.level_coords(
            w.algebra.bracket(w.algebra.basis_element(0, z), w.algebra.basis_element(level, b)),
            level);
    for (const auto& [sym, coords] : lp.g0.chev) {
      std::vector<SparseVec> cols(m.dim);
      for (int b = 0; b < m.dim; ++b) cols[b] = m.apply_g0(coords, SparseVec{{b, Rat(1)}});
      m.chev_act[sym] = std::move(cols);
    }
    return m;
  };
  lp.plus = module_from_levels(1);
  lp.minus = module_from_levels(-1);
  lp.ev.assign(lp.minus.dim, std::vector<SparseVec>(lp.plus.dim));
  for (int m = 0; m < lp.minus.dim; ++m)
    for (int e = 0; e < lp.plus.dim; ++e)
      lp.ev[m][e] = w.algebra.level_coords(
          w.algebra.bracket(w.algebra.basis_element(1, e), w.algebra.basis_element(-1, m)), 0);
  // [K_a, K_b] = 0 in W(n)
  for (int e1 = 0; e1 < lp.plus.dim; ++e1)
    for (int e2 = e1; e2 < lp.plus.dim; ++e2)
      if (!w.algebra
               .bracket(w.algebra.basis_element(1, e1), w.algebra.basis_element(1, e2))
               .empty())
        throw error(errc::internal, "level +2 of W(n) is not empty");
  lp.plus_bracket_zero = true;
  return lp;
}

// Per-level data of a constructed negative part.
struct NegLevelData {
  int dim = 0;
  // mu[x][q]: [x, q] for x in v, q in the previous level, in this level's coords
  std::vector<std::vector<SparseVec>> mu;
  // g0act[z][b]: action columns per g0 basis element
  std::vector<std::vector<SparseVec>> g0act;
  // per basis element: combination over pair symbols x*prev_dim + q realizing it
  std::vector<SparseVec> preimage;
  // prolongation only: per basis element, flat phi matrix (e*prev_dim + c)
  std::vector<SparseVec> phi;
};

namespace detail {

// Deep brackets [Q_{-j}, Q_{-k}] with j + k = total, j,k >= 2, for an
// assembled algebra whose mu-pairs, g0 action pairs and all deep pairs of
// smaller total are already stored. Each level--j basis element carries a
// preimage over pair symbols (x, w).
inline void fill_deep_brackets(GradedSuperalgebra& alg, int vdim,
                               const std::vector<NegLevelData>& L, int total) {
  {
    if (total < 4 || !alg.has_level(-total)) return;
    for (int j = 2; 2 * j <= total; ++j) {
      int k = total - j;
      if (!alg.has_level(-j) || !alg.has_level(-k)) continue;
      const NegLevelData& Lj = L[j - 2];
      int prev_dim = (j == 2) ? vdim : L[j - 3].dim;
      for (int u = 0; u < Lj.dim; ++u) {
        for (int vb = 0; vb < alg.dim(-k); ++vb) {
          if (j == k && u > vb) continue;
          Element total_val;
          for (const auto& [sym, cf] : Lj.preimage[u]) {
            int x = sym / prev_dim, wq = sym % prev_dim;
            // [[x,w],v'] = [x,[w,v']] - (-1)^{|x||w|} [w,[x,v']]
            Element w_elt = GradedSuperalgebra::from_coords(-(j - 1), SparseVec{{wq, Rat(1)}});
            Element x_elt = GradedSuperalgebra::from_coords(-1, SparseVec{{x, Rat(1)}});
            Element v_elt = GradedSuperalgebra::from_coords(-k, SparseVec{{vb, Rat(1)}});
            Element t1 = alg.bracket(x_elt, alg.bracket(w_elt, v_elt));
            Element t2 = alg.bracket(w_elt, alg.bracket(x_elt, v_elt));
            Rat sgn = ((j - 1) % 2 == 1) ? Rat(-1) : Rat(1);  // (-1)^{|x||w|}
            elem_add_scaled(total_val, t1, cf);
            elem_add_scaled(total_val, t2, -sgn * cf);
          }
          SparseVec coords = alg.level_coords(total_val, -total);
          // everything must be concentrated at level -total
          alg.set_bracket(-j, u, -k, vb, std::move(coords));
        }
      }
    }
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Minimal transitive prolongation.
//
// Realizes the quotient of the free extension by the maximal ideal meeting
// the local part trivially: level -(k+1) is the span of the maps
// phi_{x,u}: e -> [[e,x],u] + (-1)^{|e||x|} [x,[e,u]] inside Hom(g_{+1}, g_{-k}).

struct Prolongation {
  LocalPart lp;
  std::vector<NegLevelData> deeper;  // level -(k+1) at index k-1
  GradedSuperalgebra assembled;      // +1, 0, -1, ..., lowest constructed
  bool truncated = false;            // depth cap hit before an empty level
};

inline Prolongation minimal_prolongation(const LocalPart& lp_in, int depth,
                                         const std::string& name = "prolonged",
                                         bool validate = true) {
  if (depth < 1) throw error(errc::invalid_rank, "depth must be >= 1");
  if (validate) validate_local_part(lp_in);
  Prolongation P;
  P.lp = lp_in;
  const Level0& g0 = P.lp.g0;
  const G0Module& plus = P.lp.plus;
  const G0Module& minus = P.lp.minus;

  GradedSuperalgebra& alg = P.assembled;
  alg.name = name;
  alg.levels = {1, 0, -1};
  alg.labels[1] = module_labels(plus, "P[1]");
  alg.labels[0] = g0.labels;
  alg.labels[-1] = module_labels(minus, "P[-1]");
  // local brackets
  for (int e = 0; e < plus.dim; ++e)
    for (int ep = e; ep < plus.dim; ++ep) alg.set_bracket(1, e, 1, ep, {});
  for (int e = 0; e < plus.dim; ++e)
    for (int z = 0; z < g0.dim; ++z)
      alg.set_bracket(1, e, 0, z, vec_scaled(plus.act[z][e], Rat(-1)));
  for (int i = 0; i < g0.dim; ++i)
    for (int j = i + 1; j < g0.dim; ++j) alg.set_bracket(0, i, 0, j, g0.bracket_basis(i, j));
  for (int e = 0; e < plus.dim; ++e)
    for (int m = 0; m < minus.dim; ++m) alg.set_bracket(1, e, -1, m, P.lp.ev[m][e]);
  for (int z = 0; z < g0.dim; ++z)
    for (int m = 0; m < minus.dim; ++m) alg.set_bracket(0, z, -1, m, minus.act[z][m]);

  // prev level data views; levels are constructed down to -depth
  int prev_dim = minus.dim;
  for (int k = 1; k + 1 <= depth; ++k) {
    int new_level = -(k + 1);
    // phi_{x,u}: flat vector over e*prev_dim + c
    TrackedRowSpace span(plus.dim * prev_dim);
    std::vector<std::vector<SparseVec>> mu(minus.dim, std::vector<SparseVec>(prev_dim));
    std::vector<SparseVec> phis;
    phis.reserve(static_cast<size_t>(minus.dim) * prev_dim);
    for (int x = 0; x < minus.dim; ++x)
      for (int u = 0; u < prev_dim; ++u) {
        SparseVec phi;
        for (int e = 0; e < plus.dim; ++e) {
          // term1 = [[e,x],u] = act_{-k}(ev(e,x), u)
          SparseVec z1 = P.lp.ev[x][e];
          SparseVec t1;
          if (k == 1) {
            for (const auto& [z, c] : z1) vec_add_scaled(t1, minus.act[z][u], c);
          } else {
            for (const auto& [z, c] : z1)
              vec_add_scaled(t1, P.deeper[k - 2].g0act[z][u], c);
          }
          // term2 = (-1)^{|e||x|} [x,[e,u]] with |e| = |x| = 1
          SparseVec t2;
          if (k == 1) {
            // [e,u] in g0; [x, z] = -act(z, x)
            SparseVec z2 = P.lp.ev[u][e];
            for (const auto& [z, c] : z2) vec_add_scaled(t2, minus.act[z][x], c);
            // phi = t1 + act(z2, x): signs worked out from Eq. (1)
          } else {
            // [e,u] one level up; [x, w] = mu_{k-1}(x, w)
            const NegLevelData& prev = P.deeper[k - 2];
            const SparseVec& eu = prev.phi[u];  // flat over e'*dim_{-(k-1)} + c
            int dim_up = (k == 2) ? minus.dim : P.deeper[k - 3].dim;
            SparseVec w;
            for (auto it = eu.lower_bound(e * dim_up);
                 it != eu.end() && it->first < (e + 1) * dim_up; ++it)
              w[it->first - e * dim_up] = it->second;
            // [x, w] via mu of the previous level, entering with the sign
            // (-1)^{|e||x|} = -1
            SparseVec xw;
            for (const auto& [c, cf] : w) vec_add_scaled(xw, prev.mu[x][c], cf);
            t2 = vec_scaled(xw, Rat(-1));
          }
          vec_add_scaled(t1, t2, Rat(1));
          for (const auto& [c, cf] : t1) phi[e * prev_dim + c] = cf;
        }
        phis.push_back(phi);
        span.insert(phi, x * prev_dim + u);
      }
    if (span.rank() == 0) break;
    NegLevelData lvl;
    lvl.dim = span.rank();
    lvl.phi = span.basis();
    lvl.preimage = span.basis_exprs();
    for (int x = 0; x < minus.dim; ++x)
      for (int u = 0; u < prev_dim; ++u) {
        auto coords = span.coordinates(phis[x * prev_dim + u]);
        if (!coords) throw error(errc::internal, "phi escaped its own span");
        mu[x][u] = std::move(*coords);
      }
    lvl.mu = std::move(mu);
    // g0 action: phi_{[z,v]}(e) = [[e,z],v] + [z, phi_v(e)]
    lvl.g0act.assign(g0.dim, std::vector<SparseVec>(lvl.dim));
    for (int z = 0; z < g0.dim; ++z)
      for (int b = 0; b < lvl.dim; ++b) {
        SparseVec target;
        for (int e = 0; e < plus.dim; ++e) {
          SparseVec val;
          // [e,z] = -[z,e] = -act_plus(z,e); phi_v on that V+1 combination
          for (const auto& [ep, c] : plus.act[z][e]) {
            for (auto it = lvl.phi[b].lower_bound(ep * prev_dim);
                 it != lvl.phi[b].end() && it->first < (ep + 1) * prev_dim; ++it)
              vec_add_scaled(val, SparseVec{{it->first - ep * prev_dim, it->second}}, -c);
          }
          // [z, phi_v(e)]
          SparseVec pv;
          for (auto it = lvl.phi[b].lower_bound(e * prev_dim);
               it != lvl.phi[b].end() && it->first < (e + 1) * prev_dim; ++it)
            pv[it->first - e * prev_dim] = it->second;
          if (k == 1) {
            for (const auto& [c, cf] : pv) vec_add_scaled(val, minus.act[z][c], cf);
          } else {
            for (const auto& [c, cf] : pv) vec_add_scaled(val, P.deeper[k - 2].g0act[z][c], cf);
          }
          for (const auto& [c, cf] : val) {
            Rat& slot = target[e * prev_dim + c];
            slot += cf;
            if (slot == 0) target.erase(e * prev_dim + c);
          }
        }
        auto coords = span.coordinates(target);
        if (!coords)
          throw error(errc::internal, "prolongation level is not g0-stable");
        lvl.g0act[z][b] = std::move(*coords);
      }
    P.deeper.push_back(std::move(lvl));
    NegLevelData& stored = P.deeper.back();
    // extend the assembled algebra
    alg.levels.push_back(new_level);
    std::vector<std::string> lab;
    for (int b = 0; b < stored.dim; ++b)
      lab.push_back("P[" + std::to_string(new_level) + "]." + std::to_string(b));
    alg.labels[new_level] = std::move(lab);
    for (int e = 0; e < plus.dim; ++e)
      for (int b = 0; b < stored.dim; ++b) {
        SparseVec ev;
        for (auto it = stored.phi[b].lower_bound(e * prev_dim);
             it != stored.phi[b].end() && it->first < (e + 1) * prev_dim; ++it)
          ev[it->first - e * prev_dim] = it->second;
        alg.set_bracket(1, e, new_level, b, std::move(ev));
      }
    for (int z = 0; z < g0.dim; ++z)
      for (int b = 0; b < stored.dim; ++b)
        alg.set_bracket(0, z, new_level, b, stored.g0act[z][b]);
    for (int x = 0; x < minus.dim; ++x)
      for (int u = 0; u < prev_dim; ++u) {
        if (k == 1 && x > u) continue;
        alg.set_bracket(-1, x, -k, u, stored.mu[x][u]);
      }
    detail::fill_deep_brackets(alg, minus.dim, P.deeper, k + 1);
    prev_dim = stored.dim;
    if (k + 1 == depth && stored.dim > 0) P.truncated = true;
  }
  return P;
}

// ---------------------------------------------------------------------------
// Free negative part modulo the ideal generated by degree-2 relations.
//
// Q_{-1} = v, Q_{-2} = S^2(v) / <g0-closure of the relations>, and deeper
// levels are v (x) Q_{-k} modulo the Jacobi enforcement relations, with the
// bracket rewriting grounded in the mu symbols.

struct NegativeQuotient {
  G0Module v;
  std::vector<NegLevelData> levels;  // -2 at [0]
  GradedSuperalgebra assembled;      // 0, -1, -2, ... (g0 at level 0)
  bool truncated = false;
};

namespace detail {

inline int s2_index(int i, int j, int d) {
  if (i > j) std::swap(i, j);
  return i * d - i * (i - 1) / 2 + (j - i);
}

// action of g0 basis element z on S^2(v): z.(ei v ej) = (z ei) v ej + ei v (z ej)
inline SparseVec s2_act(const G0Module& v, int z, const SparseVec& s2vec) {
  int d = v.dim;
  SparseVec out;
  auto add = [&](int a, int b, const Rat& c) {
    if (c == 0) return;
    Rat& slot = out[s2_index(a, b, d)];
    slot += c;
    if (slot == 0) out.erase(s2_index(a, b, d));
  };
  for (const auto& [idx, c] : s2vec) {
    // invert the triangular index
    int i = 0;
    int rem = idx;
    while (rem >= d - i) {
      rem -= d - i;
      ++i;
    }
    int j = i + rem;
    for (const auto& [a, ca] : v.act[z][i]) add(a, j, c * ca);
    for (const auto& [b, cb] : v.act[z][j]) add(i, b, c * cb);
  }
  return out;
}

}  // namespace detail

inline NegativeQuotient free_negative_quotient(const Level0& g0, const G0Module& v,
                                               const std::vector<SparseVec>& relations_s2,
                                               int depth, const std::string& name = "quotient") {
  if (depth < 1) throw error(errc::invalid_rank, "depth must be >= 1");
  NegativeQuotient Q;
  Q.v = v;
  GradedSuperalgebra& alg = Q.assembled;
  alg.name = name;
  alg.levels = {0, -1};
  alg.labels[0] = g0.labels;
  alg.labels[-1] = module_labels(v, "Q[-1]");
  for (int i = 0; i < g0.dim; ++i)
    for (int j = i + 1; j < g0.dim; ++j) alg.set_bracket(0, i, 0, j, g0.bracket_basis(i, j));
  for (int z = 0; z < g0.dim; ++z)
    for (int m = 0; m < v.dim; ++m) alg.set_bracket(0, z, -1, m, v.act[z][m]);
  if (depth < 2) return Q;

  int d = v.dim;
  // ----- level -2
  int n2 = d * (d + 1) / 2;
  RowSpace U2(n2);
  std::deque<SparseVec> work;
  for (const auto& r : relations_s2) {
    for (const auto& [idx, c] : r)
      if (idx < 0 || idx >= n2) throw error(errc::relation_not_degree2, "bad S^2 coordinate");
    if (U2.insert(r)) work.push_back(r);
  }
  while (!work.empty()) {
    SparseVec r = work.front();
    work.pop_front();
    for (int z = 0; z < g0.dim; ++z) {
      SparseVec zr = detail::s2_act(v, z, r);
      if (U2.insert(zr)) work.push_back(zr);
    }
  }
  // quotient basis = free S^2 coordinates
  std::vector<bool> is_pivot(n2, false);
  for (int p : U2.pivot_columns()) is_pivot[p] = true;
  std::vector<int> free_cols;
  std::map<int, int> col_to_basis;
  for (int cidx = 0; cidx < n2; ++cidx)
    if (!is_pivot[cidx]) {
      col_to_basis[cidx] = static_cast<int>(free_cols.size());
      free_cols.push_back(cidx);
    }
  auto project2 = [&](const SparseVec& vec) {
    SparseVec red = U2.reduce(vec);
    SparseVec out;
    for (const auto& [cidx, c] : red) out[col_to_basis.at(cidx)] = c;
    return out;
  };
  NegLevelData L2;
  L2.dim = static_cast<int>(free_cols.size());
  L2.mu.assign(d, std::vector<SparseVec>(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      L2.mu[i][j] = project2(SparseVec{{detail::s2_index(i, j, d), Rat(1)}});
  L2.g0act.assign(g0.dim, std::vector<SparseVec>(L2.dim));
  for (int z = 0; z < g0.dim; ++z)
    for (int b = 0; b < L2.dim; ++b)
      L2.g0act[z][b] = project2(detail::s2_act(v, z, SparseVec{{free_cols[b], Rat(1)}}));
  L2.preimage.resize(L2.dim);
  for (int b = 0; b < L2.dim; ++b) {
    // free column = symbol (i,j): store as pair symbol i*d + j
    int idx = free_cols[b];
    int i = 0, rem = idx;
    while (rem >= d - i) {
      rem -= d - i;
      ++i;
    }
    int j = i + rem;
    L2.preimage[b] = SparseVec{{i * d + j, Rat(1)}};
  }
  if (L2.dim > 0) {
    Q.levels.push_back(std::move(L2));
    NegLevelData& st = Q.levels.back();
    alg.levels.push_back(-2);
    std::vector<std::string> lab;
    for (int b = 0; b < st.dim; ++b) lab.push_back("Q[-2]." + std::to_string(b));
    alg.labels[-2] = std::move(lab);
    for (int x = 0; x < d; ++x)
      for (int u = x; u < d; ++u) alg.set_bracket(-1, x, -1, u, st.mu[x][u]);
    for (int z = 0; z < g0.dim; ++z)
      for (int b = 0; b < st.dim; ++b) alg.set_bracket(0, z, -2, b, st.g0act[z][b]);
  } else {
    return Q;  // everything below vanishes
  }

  // ----- deeper levels
  // LiftAny(q at level -j, w basis at level -k) -> C-vector over v (x) Q_{-(m-1)}
  // with m = j + k, grounded in the swap when k = 1.
  std::function<SparseVec(int, const SparseVec&, int, int)> lift_any =
      [&](int j, const SparseVec& q, int k, int w) -> SparseVec {
    int m = j + k;
    int prev_dim = (m - 1 == 1) ? d : Q.levels[m - 3].dim;
    SparseVec out;
    if (k == 1) {
      // [q, w] = -(-1)^{|q|} [w, q] and [w, q] is the symbol w (x) q
      Rat sgn = (j % 2 == 0) ? Rat(-1) : Rat(1);
      for (const auto& [s, c] : q) out[w * prev_dim + s] = sgn * c;
      return out;
    }
    const NegLevelData& Lj = Q.levels[j - 2];
    int prev_j = (j == 2) ? d : Q.levels[j - 3].dim;
    for (const auto& [s, cq] : q) {
      // defining symbol (z, dq) of basis element s
      const SparseVec& pre = Lj.preimage[s];
      if (pre.size() != 1) throw error(errc::internal, "quotient basis symbol missing");
      int sym = pre.begin()->first;
      int z = sym / prev_j, dq = sym % prev_j;
      // [q_s, w] = [z,[dq,w]] - (-1)^{|z||dq|} [dq,[z,w]]
      Element dw = alg.bracket(GradedSuperalgebra::from_coords(-(j - 1), SparseVec{{dq, Rat(1)}}),
                               GradedSuperalgebra::from_coords(-k, SparseVec{{w, Rat(1)}}));
      SparseVec dw_coords = alg.level_coords(dw, -(m - 1));
      for (const auto& [c, cf] : dw_coords) {
        Rat add = cq * cf;
        Rat& slot = out[z * prev_dim + c];
        slot += add;
        if (slot == 0) out.erase(z * prev_dim + c);
      }
      Element zw = alg.bracket(GradedSuperalgebra::from_coords(-1, SparseVec{{z, Rat(1)}}),
                               GradedSuperalgebra::from_coords(-k, SparseVec{{w, Rat(1)}}));
      SparseVec zw_coords = alg.level_coords(zw, -(k + 1));
      Rat sgn = ((j - 1) % 2 == 1) ? Rat(-1) : Rat(1);
      for (const auto& [wc, cf] : zw_coords) {
        SparseVec rec;
        if (j - 1 == 1) {
          rec[dq * prev_dim + wc] = 1;
        } else {
          rec = lift_any(j - 1, SparseVec{{dq, Rat(1)}}, k + 1, wc);
        }
        vec_add_scaled(out, rec, -sgn * cq * cf);
      }
    }
    return out;
  };

  for (int m = 3; m <= depth; ++m) {
    int prev_dim = (m == 3) ? Q.levels[0].dim : Q.levels[m - 3].dim;
    if (prev_dim == 0) break;
    int ncols = d * prev_dim;
    RowSpace Um(ncols);
    std::deque<SparseVec> closure_work;
    auto mu_of = [&](int x, int level, int q) -> SparseVec {
      // [x, q] for q at -level: stored bracket (-1, -level)
      Element r = alg.bracket(GradedSuperalgebra::from_coords(-1, SparseVec{{x, Rat(1)}}),
                              GradedSuperalgebra::from_coords(-level, SparseVec{{q, Rat(1)}}));
      return alg.level_coords(r, -(level + 1));
    };
    // J3 relations over (x in v, u at -j, w at -k), j + k = m - 1
    for (int j = 1; j <= m - 2; ++j) {
      int k = m - 1 - j;
      if (k < 1) continue;
      int dim_j = (j == 1) ? d : Q.levels[j - 2].dim;
      int dim_k = (k == 1) ? d : Q.levels[k - 2].dim;
      if (dim_j == 0 || dim_k == 0) continue;
      for (int x = 0; x < d; ++x)
        for (int u = 0; u < dim_j; ++u) {
          if (j == 1 && k == 1 && u < x) continue;
          for (int w = 0; w < dim_k; ++w) {
            if (j == 1 && k == 1 && (w < u)) continue;
            SparseVec rel;
            // [x, [u,w]]
            Element uw = alg.bracket(GradedSuperalgebra::from_coords(-j, SparseVec{{u, Rat(1)}}),
                                     GradedSuperalgebra::from_coords(-k, SparseVec{{w, Rat(1)}}));
            for (const auto& [cc, cf] : alg.level_coords(uw, -(m - 1)))
              vec_add_scaled(rel, SparseVec{{x * prev_dim + cc, cf}}, Rat(1));
            // -[[x,u],w]
            SparseVec xu = mu_of(x, j, u);
            vec_add_scaled(rel, lift_any(j + 1, xu, k, w), Rat(-1));
            // -(-1)^{|x||u|} [u,[x,w]]
            SparseVec xw = mu_of(x, k, w);
            Rat sgn = (j % 2 == 1) ? Rat(-1) : Rat(1);
            if (j == 1) {
              SparseVec t;
              for (const auto& [wc, cf] : xw) t[u * prev_dim + wc] = cf;
              vec_add_scaled(rel, t, -sgn);
            } else {
              for (const auto& [wc, cf] : xw)
                vec_add_scaled(rel, lift_any(j, SparseVec{{u, Rat(1)}}, k + 1, wc), -sgn * cf);
            }
            if (Um.insert(rel)) closure_work.push_back(rel);
          }
        }
    }
    // close U_m under the g0 action on v (x) Q_{-(m-1)}
    while (!closure_work.empty()) {
      SparseVec r = closure_work.front();
      closure_work.pop_front();
      for (int z = 0; z < g0.dim; ++z) {
        SparseVec zr;
        for (const auto& [idx, c] : r) {
          int x = idx / prev_dim, q = idx % prev_dim;
          for (const auto& [xp, cx] : v.act[z][x])
            vec_add_scaled(zr, SparseVec{{xp * prev_dim + q, c * cx}}, Rat(1));
          const std::vector<SparseVec>& cols =
              (m == 3) ? Q.levels[0].g0act[z] : Q.levels[m - 3].g0act[z];
          for (const auto& [qp, cqp] : cols[q])
            vec_add_scaled(zr, SparseVec{{x * prev_dim + qp, c * cqp}}, Rat(1));
        }
        if (Um.insert(zr)) closure_work.push_back(zr);
      }
    }
    // quotient
    std::vector<bool> piv(ncols, false);
    for (int p : Um.pivot_columns()) piv[p] = true;
    std::vector<int> freec;
    std::map<int, int> c2b;
    for (int cidx = 0; cidx < ncols; ++cidx)
      if (!piv[cidx]) {
        c2b[cidx] = static_cast<int>(freec.size());
        freec.push_back(cidx);
      }
    auto project = [&](const SparseVec& vec) {
      SparseVec red = Um.reduce(vec);
      SparseVec out;
      for (const auto& [cidx, c] : red) out[c2b.at(cidx)] = c;
      return out;
    };
    NegLevelData Lm;
    Lm.dim = static_cast<int>(freec.size());
    if (Lm.dim == 0) break;
    Lm.mu.assign(d, std::vector<SparseVec>(prev_dim));
    for (int x = 0; x < d; ++x)
      for (int q = 0; q < prev_dim; ++q)
        Lm.mu[x][q] = project(SparseVec{{x * prev_dim + q, Rat(1)}});
    Lm.g0act.assign(g0.dim, std::vector<SparseVec>(Lm.dim));
    for (int z = 0; z < g0.dim; ++z)
      for (int b = 0; b < Lm.dim; ++b) {
        int idx = freec[b];
        int x = idx / prev_dim, q = idx % prev_dim;
        SparseVec zr;
        for (const auto& [xp, cx] : v.act[z][x])
          vec_add_scaled(zr, SparseVec{{xp * prev_dim + q, cx}}, Rat(1));
        const std::vector<SparseVec>& cols =
            (m == 3) ? Q.levels[0].g0act[z] : Q.levels[m - 3].g0act[z];
        for (const auto& [qp, cqp] : cols[q])
          vec_add_scaled(zr, SparseVec{{x * prev_dim + qp, cqp}}, Rat(1));
        Lm.g0act[z][b] = project(zr);
      }
    Lm.preimage.resize(Lm.dim);
    for (int b = 0; b < Lm.dim; ++b) Lm.preimage[b] = SparseVec{{freec[b], Rat(1)}};
    Q.levels.push_back(std::move(Lm));
    NegLevelData& st = Q.levels.back();
    alg.levels.push_back(-m);
    std::vector<std::string> lab;
    for (int b = 0; b < st.dim; ++b) lab.push_back("Q[" + std::to_string(-m) + "]." + std::to_string(b));
    alg.labels[-m] = std::move(lab);
    for (int x = 0; x < d; ++x)
      for (int q = 0; q < prev_dim; ++q) alg.set_bracket(-1, x, -(m - 1), q, st.mu[x][q]);
    for (int z = 0; z < g0.dim; ++z)
      for (int b = 0; b < st.dim; ++b) alg.set_bracket(0, z, -m, b, st.g0act[z][b]);
    detail::fill_deep_brackets(alg, d, Q.levels, m);
    if (m == depth && st.dim > 0) Q.truncated = true;
  }
  return Q;
}

// ---------------------------------------------------------------------------
// Exact graded intertwiner from a NegativeQuotient to a Prolongation over the
// same level -1 space: T fixes v, transports brackets, and is verified to be
// bijective, bracket-preserving and g0-equivariant, level by level.

struct IntertwinerReport {
  bool dims_match = false;
  bool exists = false;  // bracket transport consistent + bijective + equivariant
  std::string detail;
};

inline IntertwinerReport intertwine_quotient_prolongation(const NegativeQuotient& Q,
                                                          const Prolongation& P) {
  IntertwinerReport rep;
  if (Q.v.dim != P.lp.minus.dim) {
    rep.detail = "level -1 dimensions differ";
    return rep;
  }
  int depth_q = static_cast<int>(Q.levels.size());
  int depth_p = static_cast<int>(P.deeper.size());
  if (depth_q != depth_p) {
    rep.detail = "constructed depths differ (" + std::to_string(depth_q) + " vs " +
                 std::to_string(depth_p) + ")";
    return rep;
  }
  for (int t = 0; t < depth_q; ++t)
    if (Q.levels[t].dim != P.deeper[t].dim) {
      rep.detail = "dimension mismatch at level " + std::to_string(-(t + 2));
      return rep;
    }
  rep.dims_match = true;

  int d = Q.v.dim;
  // T per level: T[-1] = id; deeper T via bracket transport on symbols
  std::vector<std::vector<SparseVec>> T;  // T[t][q-basis] -> P coords at level -(t+2)
  for (int t = 0; t < depth_q; ++t) {
    const NegLevelData& Lq = Q.levels[t];
    const NegLevelData& Lp = P.deeper[t];
    int prev_dim = (t == 0) ? d : Q.levels[t - 1].dim;
    std::vector<SparseVec> Tm(Lq.dim);
    for (int b = 0; b < Lq.dim; ++b) {
      int sym = Lq.preimage[b].begin()->first;
      int x = sym / prev_dim, q = sym % prev_dim;
      if (t == 0) {
        Tm[b] = Lp.mu[x][q];
      } else {
        SparseVec tq = T[t - 1][q];
        SparseVec out;
        for (const auto& [c, cf] : tq) vec_add_scaled(out, Lp.mu[x][c], cf);
        Tm[b] = std::move(out);
      }
    }
    // verify transport on every pair: T(mu_Q(x,q)) = mu_P(x, T(q))
    for (int x = 0; x < d; ++x)
      for (int q = 0; q < prev_dim; ++q) {
        SparseVec lhs;
        for (const auto& [b, cf] : Lq.mu[x][q]) vec_add_scaled(lhs, Tm[b], cf);
        SparseVec rhs;
        if (t == 0)
          rhs = Lp.mu[x][q];
        else
          for (const auto& [c, cf] : T[t - 1][q]) vec_add_scaled(rhs, Lp.mu[x][c], cf);
        vec_add_scaled(lhs, rhs, Rat(-1));
        if (!lhs.empty()) {
          rep.detail = "bracket transport inconsistent at level " + std::to_string(-(t + 2));
          return rep;
        }
      }
    // bijectivity
    RowSpace rs(Lp.dim);
    for (const auto& row : Tm) rs.insert(row);
    if (rs.rank() != Lq.dim) {
      rep.detail = "transport not bijective at level " + std::to_string(-(t + 2));
      return rep;
    }
    // g0-equivariance
    int g0dim = static_cast<int>(Lq.g0act.size());
    for (int z = 0; z < g0dim; ++z)
      for (int b = 0; b < Lq.dim; ++b) {
        SparseVec lhs;
        for (const auto& [bp, cf] : Lq.g0act[z][b]) vec_add_scaled(lhs, Tm[bp], cf);
        SparseVec rhs;
        for (const auto& [c, cf] : Tm[b]) vec_add_scaled(rhs, Lp.g0act[z][c], cf);
        vec_add_scaled(lhs, rhs, Rat(-1));
        if (!lhs.empty()) {
          rep.detail = "transport not g0-equivariant at level " + std::to_string(-(t + 2));
          return rep;
        }
      }
    T.push_back(std::move(Tm));
  }
  rep.exists = true;
  rep.detail = "exact graded isomorphism fixing the local part";
  return rep;
}

}  // namespace superforge
