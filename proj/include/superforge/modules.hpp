#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <string>
#include <vector>

#include "superforge/dynkin.hpp"
#include "superforge/error.hpp"
#include "superforge/level0.hpp"
#include "superforge/sparse_matrix.hpp"

namespace superforge {

// Finite-dimensional module over a Level0 algebra with exact actions.
// chev_act holds the actions of the named Chevalley generators; act holds
// derived action columns for every g_0 basis element.
struct G0Module {
  int dim = 0;
  std::vector<std::string> labels;
  std::map<std::string, std::vector<SparseVec>> chev_act;  // sym -> column images
  std::vector<std::vector<SparseVec>> act;                 // g0 basis -> column images

  SparseVec apply_columns(const std::vector<SparseVec>& cols, const SparseVec& v) const {
    SparseVec out;
    for (const auto& [b, c] : v) {
      if (b < 0 || b >= static_cast<int>(cols.size()))
        throw error(errc::index_out_of_range, "module index");
      vec_add_scaled(out, cols[b], c);
    }
    return out;
  }

  SparseVec apply_sym(const std::string& sym, const SparseVec& v) const {
    auto it = chev_act.find(sym);
    if (it == chev_act.end()) throw error(errc::internal, "module has no action for " + sym);
    return apply_columns(it->second, v);
  }

  // action of an arbitrary g_0 element given by coordinates
  SparseVec apply_g0(const SparseVec& z, const SparseVec& v) const {
    if (act.empty()) throw error(errc::internal, "full actions not derived");
    SparseVec out;
    for (const auto& [k, c] : z) vec_add_scaled(out, apply_columns(act[k], v), c);
    return out;
  }
};

inline std::vector<std::string> module_labels(const G0Module& m, const std::string& prefix) {
  if (static_cast<int>(m.labels.size()) == m.dim) return m.labels;
  std::vector<std::string> out;
  for (int i = 0; i < m.dim; ++i) out.push_back(prefix + "." + std::to_string(i));
  return out;
}

namespace detail {

// Compose column matrices: (A after B)[b] = A(B[b]).
inline std::vector<SparseVec> compose_columns(const G0Module& m, const std::vector<SparseVec>& a,
                                              const std::vector<SparseVec>& b) {
  std::vector<SparseVec> out(b.size());
  for (size_t i = 0; i < b.size(); ++i) out[i] = m.apply_columns(a, b[i]);
  return out;
}

}  // namespace detail

// Derives action columns for every g_0 basis element from the Chevalley
// actions, via the generation program recorded in the Level0.
inline void derive_full_actions(const Level0& g0, G0Module& m) {
  std::vector<std::vector<SparseVec>> step_act;
  step_act.reserve(g0.steps.size());
  for (const auto& st : g0.steps) {
    if (st.kind == 0) {
      auto it = m.chev_act.find(st.sym);
      if (it == m.chev_act.end())
        throw error(errc::internal, "missing chevalley action " + st.sym);
      step_act.push_back(it->second);
    } else {
      auto ab = detail::compose_columns(m, step_act[st.i], step_act[st.j]);
      auto ba = detail::compose_columns(m, step_act[st.j], step_act[st.i]);
      std::vector<SparseVec> comm(m.dim);
      for (int b = 0; b < m.dim; ++b) {
        comm[b] = ab[b];
        vec_add_scaled(comm[b], ba[b], Rat(-1));
      }
      step_act.push_back(std::move(comm));
    }
  }
  m.act.assign(g0.dim, std::vector<SparseVec>(m.dim));
  for (int k = 0; k < g0.dim; ++k) {
    std::vector<SparseVec> cols(m.dim);
    for (const auto& [s, c] : g0.basis_expr[k])
      for (int b = 0; b < m.dim; ++b) vec_add_scaled(cols[b], step_act[s][b], c);
    m.act[k] = std::move(cols);
  }
}

// ---------------------------------------------------------------------------
// Extreme-weight cyclic module via the contravariant form.
//
// Builds the irreducible module generated by a vector v0 that is annihilated
// by every lowering generator, has the given h-weights, and is raised by the
// opposite family. Word candidates are tested against the contravariant
// pairing <r_i u, y> = <u, l_i y>; dependent candidates are resolved through
// the Gram rows, which quotients out exactly the form radical.

enum class RaiseWith { e, f };

struct ExtremeModuleResult {
  G0Module module;
  std::vector<std::pair<int, int>> words;  // (raise index, parent) per basis elt; (-1,-1) for v0
  std::vector<std::vector<Rat>> weights;   // per basis elt, h_0..h_r values
};

inline ExtremeModuleResult extreme_module(const Level0& g0, const CartanData& cartan,
                                          const std::vector<Rat>& lambda, RaiseWith dir,
                                          const std::string& generator_label, int maxlen = 128) {
  int r = cartan.rank;
  if (static_cast<int>(lambda.size()) != r + 1)
    throw error(errc::dimension_mismatch, "lowest weight must give h_0..h_r values");
  auto raise_sym = [&](int i) {
    return (dir == RaiseWith::e ? "e" : "f") + std::to_string(i);
  };
  auto lower_sym = [&](int i) {
    return (dir == RaiseWith::e ? "f" : "e") + std::to_string(i);
  };
  // [l_j, r_i] = -+ delta_ij h_i : minus for raise-with-e, plus for raise-with-f
  Rat lr_sign = dir == RaiseWith::e ? Rat(-1) : Rat(1);

  ExtremeModuleResult res;
  std::vector<std::vector<Rat>>& weights = res.weights;
  std::vector<std::pair<int, int>>& words = res.words;
  // lower/raise actions as column images over the accepted basis
  std::vector<std::vector<SparseVec>> lower_act(r + 1), raise_act(r + 1);  // index 1..r
  std::map<std::pair<int, int>, Rat> gram;

  weights.push_back(lambda);
  words.push_back({-1, -1});
  for (int i = 1; i <= r; ++i) {
    lower_act[i].push_back({});
    raise_act[i].push_back({});  // filled when round 1 resolves
  }
  gram[{0, 0}] = 1;

  auto weight_after_raise = [&](const std::vector<Rat>& w, int i) {
    std::vector<Rat> out = w;
    for (int a = 0; a <= r; ++a) {
      Rat delta(cartan.B[a][i]);
      out[a] += (dir == RaiseWith::e) ? delta : -delta;
    }
    return out;
  };

  std::vector<int> prev_round{0};  // basis indices accepted in the previous round
  bool closed = false;
  for (int len = 1; len <= maxlen && !prev_round.empty(); ++len) {
    struct Candidate {
      int parent, raise;
      std::vector<Rat> weight;
      std::vector<SparseVec> lower;  // per lower index 1..r (position i-1)
    };
    std::vector<Candidate> cands;
    for (int parent : prev_round)
      for (int i = 1; i <= r; ++i) {
        Candidate c;
        c.parent = parent;
        c.raise = i;
        c.weight = weight_after_raise(weights[parent], i);
        c.lower.resize(r);
        for (int j = 1; j <= r; ++j) {
          // l_j(r_i w) = r_i(l_j w) + [l_j, r_i] w
          SparseVec v;
          for (const auto& [b, cf] : lower_act[j][parent])
            vec_add_scaled(v, raise_act[i][b], cf);
          if (i == j) {
            Rat hw = 0;  // h_i weight of the parent as sum over simple-coroot values
            // h_i action is diagonal: weight value of parent under h_i
            hw = weights[parent][i];
            vec_add_scaled(v, SparseVec{{parent, Rat(1)}}, lr_sign * hw);
          }
          c.lower[j - 1] = std::move(v);
        }
        cands.push_back(std::move(c));
      }
    // group candidates by weight
    std::map<std::vector<Rat>, std::vector<int>> groups;
    for (size_t t = 0; t < cands.size(); ++t) groups[cands[t].weight].push_back(static_cast<int>(t));

    std::vector<int> accepted_round;
    for (auto& [wt, members] : groups) {
      int ncols = static_cast<int>(members.size());
      // gram rows of each candidate against all candidates in the group
      std::vector<SparseVec> rows(members.size());
      for (size_t a = 0; a < members.size(); ++a) {
        const Candidate& ca = cands[members[a]];
        for (size_t b = 0; b < members.size(); ++b) {
          const Candidate& cb = cands[members[b]];
          // <c_a, c_b> = <parent_a, l_{raise_a}(c_b)>
          Rat val = 0;
          for (const auto& [idx, cf] : cb.lower[ca.raise - 1]) {
            auto it = gram.find({std::min(ca.parent, idx), std::max(ca.parent, idx)});
            if (it != gram.end()) val += cf * it->second;
          }
          if (val != 0) rows[a][static_cast<int>(b)] = val;
        }
      }
      TrackedRowSpace gramspace(ncols);
      std::vector<int> accepted_in_group;      // positions within members
      std::vector<int> accepted_basis_index;   // assigned basis indices
      for (size_t a = 0; a < members.size(); ++a) {
        Candidate& ca = cands[members[a]];
        auto expr = gramspace.express(rows[a]);
        if (!expr) {
          gramspace.insert(rows[a]);
          int idx = static_cast<int>(weights.size());
          weights.push_back(ca.weight);
          words.push_back({ca.raise, ca.parent});
          for (int j = 1; j <= r; ++j) {
            lower_act[j].push_back(ca.lower[j - 1]);
            raise_act[j].push_back({});
          }
          raise_act[ca.raise][ca.parent] = SparseVec{{idx, Rat(1)}};
          accepted_in_group.push_back(static_cast<int>(a));
          accepted_basis_index.push_back(idx);
          accepted_round.push_back(idx);
        } else {
          // dependent: expression over the accepted members of this group
          SparseVec image;
          for (const auto& [pos, cf] : *expr)
            image[accepted_basis_index[pos]] = cf;
          raise_act[ca.raise][ca.parent] = image;
          // consistency: the lowering actions must agree with the expansion
          for (int j = 1; j <= r; ++j) {
            SparseVec expect;
            for (const auto& [bidx, cf] : image)
              vec_add_scaled(expect, lower_act[j][bidx], cf);
            if (expect != ca.lower[j - 1])
              throw error(errc::internal, "contravariant reduction inconsistent");
          }
        }
      }
      // grams among newly accepted and with prior basis (prior different
      // weight -> zero; within the group use the candidate pairings)
      for (size_t x = 0; x < accepted_in_group.size(); ++x)
        for (size_t y = x; y < accepted_in_group.size(); ++y) {
          Rat v = vec_at(rows[accepted_in_group[x]], accepted_in_group[y]);
          int bx = accepted_basis_index[x], by = accepted_basis_index[y];
          gram[{std::min(bx, by), std::max(bx, by)}] = v;
        }
    }
    if (accepted_round.empty()) {
      closed = true;
      break;
    }
    prev_round = std::move(accepted_round);
  }
  if (!closed) throw error(errc::bound_too_small, "extreme module did not close");

  G0Module& m = res.module;
  m.dim = static_cast<int>(weights.size());
  for (int b = 0; b < m.dim; ++b) {
    if (b == 0)
      m.labels.push_back(generator_label);
    else
      m.labels.push_back(generator_label + ":" + raise_sym(words[b].first) + "." +
                         std::to_string(words[b].second));
  }
  for (int i = 1; i <= r; ++i) {
    m.chev_act[raise_sym(i)] = raise_act[i];
    m.chev_act[lower_sym(i)] = lower_act[i];
  }
  for (int a = 0; a <= r; ++a) {
    std::vector<SparseVec> h(m.dim);
    for (int b = 0; b < m.dim; ++b)
      if (weights[b][a] != 0) h[b] = SparseVec{{b, weights[b][a]}};
    m.chev_act["h" + std::to_string(a)] = std::move(h);
  }
  derive_full_actions(g0, m);
  return res;
}

// ---------------------------------------------------------------------------
// module_from_relations: the level -1 space of a presentation, realized by
// its contraction maps into Hom(V_{+1}, g_0).
//
// For each presented generator w the values [E, w] (E running over the level
// +1 module) are unknowns of a linear system. The system consists of the
// anchors [e_0, w_a] = h_a together with the linear module relations; its
// solution gives the contraction map of each generator, and the level -1
// space is the g_0-closure of those maps.

struct ModuleRelationTerm {
  Rat coeff;
  std::vector<std::string> word;  // applied right to left: word[0]( word[1]( ... gen))
  int gen;
};

struct PresentedModuleSpec {
  std::vector<std::string> gen_names;
  std::vector<SparseVec> e0_brackets;                      // [e0, gen] in g0 coords
  std::vector<std::vector<ModuleRelationTerm>> relations;  // each: sum of terms = 0
};

struct Minus1Module {
  G0Module module;
  std::vector<SparseVec> gen_images;         // presented generators in module coords
  std::vector<std::vector<SparseVec>> ev;    // [basis m][V1 basis E] -> g0 coords
  int freedom = 0;
  bool stabilized = false;
  int depth_reached = 0;
};

namespace detail {

struct AffScalar {
  Rat c;
  SparseVec lin;
  bool zero() const { return c == 0 && lin.empty(); }
};

using AffVec = std::vector<AffScalar>;  // dense over g0 coordinates

inline void aff_add(AffScalar& dst, const AffScalar& src, const Rat& f) {
  dst.c += src.c * f;
  vec_add_scaled(dst.lin, src.lin, f);
}

// [z, x] for a fixed g0 element z and an affine g0 vector x
inline AffVec aff_bracket_left(const Level0& g0, const SparseVec& z, const AffVec& x) {
  AffVec out(g0.dim);
  for (const auto& [i, zi] : z)
    for (int t = 0; t < g0.dim; ++t) {
      if (x[t].zero()) continue;
      SparseVec sc = g0.bracket_basis(i, t);
      for (const auto& [tp, cf] : sc) aff_add(out[tp], x[t], zi * cf);
    }
  return out;
}

struct AffCMap {
  std::vector<AffVec> at;  // per V1 basis index
};

// c(z . m) from c(m): (z phi)(E) = [z, phi(E)] - phi(z E)
inline AffCMap aff_apply_generator(const Level0& g0, const G0Module& v1, const std::string& sym,
                                   const AffCMap& phi) {
  int nv = static_cast<int>(phi.at.size());
  AffCMap out;
  out.at.assign(nv, AffVec(g0.dim));
  const SparseVec& z = g0.chev_elem(sym);
  for (int E = 0; E < nv; ++E) {
    out.at[E] = aff_bracket_left(g0, z, phi.at[E]);
    SparseVec zE = v1.apply_sym(sym, SparseVec{{E, Rat(1)}});
    for (const auto& [Ep, cf] : zE)
      for (int t = 0; t < g0.dim; ++t)
        if (!phi.at[Ep][t].zero()) aff_add(out.at[E][t], phi.at[Ep][t], -cf);
  }
  return out;
}

// numeric version: phi as a flat vector with layout idx = E*dimg0 + t
inline SparseVec cmap_apply_generator(const Level0& g0, const G0Module& v1,
                                      const std::string& sym, const SparseVec& phi, int dimv1) {
  SparseVec out;
  const SparseVec& z = g0.chev_elem(sym);
  // [z, phi(E)]
  for (const auto& [idx, cf] : phi) {
    int E = idx / g0.dim, t = idx % g0.dim;
    for (const auto& [i, zi] : z) {
      SparseVec sc = g0.bracket_basis(i, t);
      for (const auto& [tp, c2] : sc) {
        Rat add = zi * c2 * cf;
        if (add == 0) continue;
        Rat& slot = out[E * g0.dim + tp];
        slot += add;
        if (slot == 0) out.erase(E * g0.dim + tp);
      }
    }
  }
  // - phi(z E)
  for (int E = 0; E < dimv1; ++E) {
    SparseVec zE = v1.apply_sym(sym, SparseVec{{E, Rat(1)}});
    for (const auto& [Ep, cf] : zE)
      for (auto it = phi.lower_bound(Ep * g0.dim); it != phi.end() && it->first < (Ep + 1) * g0.dim;
           ++it) {
        int t = it->first % g0.dim;
        Rat add = -cf * it->second;
        Rat& slot = out[E * g0.dim + t];
        slot += add;
        if (slot == 0) out.erase(E * g0.dim + t);
      }
  }
  return out;
}

}  // namespace detail

inline Minus1Module module_from_relations(const Level0& g0, const G0Module& v1,
                                          const PresentedModuleSpec& spec, int bound) {
  int ngen = static_cast<int>(spec.gen_names.size());
  int dimv1 = v1.dim;
  int nvars = ngen * dimv1 * g0.dim;
  auto var = [&](int g, int E, int t) { return (g * dimv1 + E) * g0.dim + t; };

  // generator c-maps as pure unknowns
  std::vector<detail::AffCMap> gen_cmap(ngen);
  for (int g = 0; g < ngen; ++g) {
    gen_cmap[g].at.assign(dimv1, detail::AffVec(g0.dim));
    for (int E = 0; E < dimv1; ++E)
      for (int t = 0; t < g0.dim; ++t) gen_cmap[g].at[E][t].lin[var(g, E, t)] = 1;
  }

  SparseMatrix system(0, nvars);
  SparseVec rhs;
  auto add_row = [&](const SparseVec& lin, const Rat& c) {
    if (lin.empty() && c == 0) return;
    int r = system.rows;
    system.append_row(lin);
    if (c != 0) rhs[r] = -c;
  };
  // anchors: [e0, w_g](E = e_0 index 0) ... i.e. c(w_g)(e0) = given bracket
  for (int g = 0; g < ngen; ++g)
    for (int t = 0; t < g0.dim; ++t) {
      SparseVec lin{{var(g, 0, t), Rat(1)}};
      add_row(lin, -vec_at(spec.e0_brackets[g], t));
    }
  // relations
  for (const auto& rel : spec.relations) {
    detail::AffCMap total;
    total.at.assign(dimv1, detail::AffVec(g0.dim));
    for (const auto& term : rel) {
      detail::AffCMap cur = gen_cmap[term.gen];
      for (auto it = term.word.rbegin(); it != term.word.rend(); ++it)
        cur = detail::aff_apply_generator(g0, v1, *it, cur);
      for (int E = 0; E < dimv1; ++E)
        for (int t = 0; t < g0.dim; ++t) detail::aff_add(total.at[E][t], cur.at[E][t], term.coeff);
    }
    for (int E = 0; E < dimv1; ++E)
      for (int t = 0; t < g0.dim; ++t)
        if (!total.at[E][t].zero()) add_row(total.at[E][t].lin, total.at[E][t].c);
  }
  AffineSolution sol = solve_affine(system, rhs);
  if (!sol.consistent)
    throw error(errc::no_solution, "presented module relations are unsatisfiable");

  Minus1Module out;
  out.freedom = static_cast<int>(sol.kernel.size());

  // concrete c-maps, flat layout idx = E*dimg0 + t
  std::vector<SparseVec> images(ngen);
  for (int g = 0; g < ngen; ++g)
    for (int E = 0; E < dimv1; ++E)
      for (int t = 0; t < g0.dim; ++t) {
        Rat v = vec_at(sol.particular, var(g, E, t));
        if (v != 0) images[g][E * g0.dim + t] = v;
      }

  // g0-closure of the generator images inside Hom(V1, g0)
  std::vector<std::string> gens;
  for (const auto& [s, v] : g0.chev) gens.push_back(s);
  std::sort(gens.begin(), gens.end());
  RowSpace span(dimv1 * g0.dim);
  std::deque<std::pair<SparseVec, int>> queue;
  for (int g = 0; g < ngen; ++g)
    if (span.insert(images[g])) queue.push_back({images[g], 0});
  int depth_reached = 0;
  while (!queue.empty()) {
    auto [v, d] = queue.front();
    queue.pop_front();
    if (d >= bound) continue;
    for (const auto& s : gens) {
      SparseVec w = detail::cmap_apply_generator(g0, v1, s, v, dimv1);
      if (span.insert(w)) {
        queue.push_back({w, d + 1});
        depth_reached = std::max(depth_reached, d + 1);
      }
    }
  }
  out.depth_reached = depth_reached;

  // closure test decides stabilization
  bool closed = true;
  for (const auto& row : span.basis()) {
    for (const auto& s : gens) {
      SparseVec w = detail::cmap_apply_generator(g0, v1, s, row, dimv1);
      if (!span.contains(w)) {
        closed = false;
        break;
      }
    }
    if (!closed) break;
  }
  out.stabilized = closed;

  G0Module& m = out.module;
  m.dim = span.rank();
  for (int b = 0; b < m.dim; ++b) m.labels.push_back("v[-1]." + std::to_string(b));
  auto rows = span.basis();
  if (closed) {
    for (const auto& s : gens) {
      std::vector<SparseVec> cols(m.dim);
      for (int b = 0; b < m.dim; ++b) {
        SparseVec w = detail::cmap_apply_generator(g0, v1, s, rows[b], dimv1);
        auto coords = span.coordinates(w);
        if (!coords) throw error(errc::internal, "closure lost");
        cols[b] = std::move(*coords);
      }
      m.chev_act[s] = std::move(cols);
    }
    derive_full_actions(g0, m);
  }
  for (int g = 0; g < ngen; ++g) {
    auto coords = span.coordinates(images[g]);
    if (!coords) throw error(errc::internal, "generator image escaped its own closure");
    out.gen_images.push_back(std::move(*coords));
  }
  out.ev.assign(m.dim, std::vector<SparseVec>(dimv1));
  for (int b = 0; b < m.dim; ++b)
    for (const auto& [idx, c] : rows[b]) out.ev[b][idx / g0.dim][idx % g0.dim] = c;
  return out;
}

}  // namespace superforge
