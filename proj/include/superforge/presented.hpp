#pragma once

#include <string>
#include <vector>

#include "superforge/dynkin.hpp"
#include "superforge/level0.hpp"
#include "superforge/modules.hpp"
#include "superforge/prolong.hpp"
#include "superforge/relations.hpp"

namespace superforge {

// The presentation-side local part of W~(g) (tha mode) or B(g) (borcherds
// mode): level 0 from the Chevalley generators, level +1 as the extreme
// module generated by e_0, level -1 from the defining relations via its
// contraction maps.
struct PresentedSide {
  CartanData cartan;
  AlphabetMode mode = AlphabetMode::tha;
  Level0 g0;
  ExtremeModuleResult plus;
  Minus1Module minus;
  LocalPart local;
};

// Module relations imposed on the level -1 generators, by mode. Index g runs
// over the generator list (f0a for tha, the single f0 for borcherds).
inline PresentedModuleSpec presented_minus1_spec(const CartanData& c, AlphabetMode mode,
                                                 const Level0& g0) {
  int r = c.rank;
  PresentedModuleSpec spec;
  auto sym = [](const char* k, int i) { return std::string(k) + std::to_string(i); };
  if (mode == AlphabetMode::borcherds) {
    spec.gen_names = {"f0"};
    spec.e0_brackets = {g0.chev_elem("h0")};
    std::vector<ModuleRelationTerm> rel;
    for (int a = 0; a <= r; ++a) {
      // [h_a, f0] = -B_{a0} f0
      spec.relations.push_back({{Rat(1), {sym("h", a)}, 0}, {Rat(c.B[a][0]), {}, 0}});
    }
    for (int i = 1; i <= r; ++i) spec.relations.push_back({{Rat(1), {sym("e", i)}, 0}});
    for (int i = 2; i <= r; ++i) spec.relations.push_back({{Rat(1), {sym("f", i)}, 0}});
    spec.relations.push_back({{Rat(1), {"f1", "f1"}, 0}});
    return spec;
  }
  Alphabet al = make_alphabet(AlphabetMode::tha, r);
  std::vector<int> f0idx = al.f0_indices();
  std::map<int, int> gen_of;  // f0 index -> generator position
  for (size_t g = 0; g < f0idx.size(); ++g) {
    gen_of[f0idx[g]] = static_cast<int>(g);
    spec.gen_names.push_back(f0_name(f0idx[g]));
    spec.e0_brackets.push_back(g0.chev_elem(sym("h", f0idx[g])));
  }
  int ngen = static_cast<int>(f0idx.size());
  for (int g = 0; g < ngen; ++g) {
    // [h_a, f0b] = -B_{a0} f0b for a = 0..r
    for (int a = 0; a <= r; ++a)
      spec.relations.push_back({{Rat(1), {sym("h", a)}, g}, {Rat(c.B[a][0]), {}, g}});
    // [e_1, f0a] = 0
    spec.relations.push_back({{Rat(1), {"e1"}, g}});
    // [f_a, [f_a, f0b]] = 0 for a = 1..r
    for (int a = 1; a <= r; ++a)
      spec.relations.push_back({{Rat(1), {sym("f", a), sym("f", a)}, g}});
    // [e_i, [f_j, f0a]] = delta_ij B_{aj} f0j for i, j = 2..r
    for (int i = 2; i <= r; ++i)
      for (int j = 2; j <= r; ++j) {
        std::vector<ModuleRelationTerm> rel{{Rat(1), {sym("e", i), sym("f", j)}, g}};
        if (i == j) rel.push_back({Rat(-c.B[f0idx[g]][j]), {}, gen_of.at(j)});
        spec.relations.push_back(std::move(rel));
      }
  }
  // Chevalley-Serre relations of f00 = f0: [e_a, f00] = 0 (a >= 1) and
  // [f_a, f00] = 0 (a >= 2)
  for (int a = 2; a <= r; ++a) {
    spec.relations.push_back({{Rat(1), {sym("e", a)}, gen_of.at(0)}});
    spec.relations.push_back({{Rat(1), {sym("f", a)}, gen_of.at(0)}});
  }
  return spec;
}

inline PresentedSide build_presented_side(const CartanData& c, AlphabetMode mode,
                                          int module_bound = 16) {
  PresentedSide side;
  side.cartan = c;
  side.mode = mode;
  side.g0 = level0_from_chevalley(c);
  std::vector<Rat> lambda;
  for (int a = 0; a <= c.rank; ++a) lambda.push_back(Rat(c.B[a][0]));
  side.plus = extreme_module(side.g0, c, lambda, RaiseWith::e, "e0");
  PresentedModuleSpec spec = presented_minus1_spec(c, mode, side.g0);
  side.minus = module_from_relations(side.g0, side.plus.module, spec, module_bound);
  side.local.g0 = side.g0;
  side.local.plus = side.plus.module;
  side.local.minus = side.minus.module;
  side.local.ev = side.minus.ev;
  // level +2 vanishes for the A-series local parts; for D/E it need not,
  // and the construction only ever descends, so the assembled algebra is a
  // truncation at level +1 there
  side.local.plus_bracket_zero = (c.series == Series::A);
  return side;
}

// The ideal-J generators as vectors in S^2 of the presented level -1 space.
// [f0a, f0b] -> wa v wb; the nested generators use the module action of f1.
inline std::vector<SparseVec> ideal_J_s2(const CartanData& c, const Minus1Module& minus) {
  int r = c.rank;
  const std::vector<SparseVec>& w = minus.gen_images;
  int d = minus.module.dim;
  Alphabet al = make_alphabet(AlphabetMode::tha, r);
  std::vector<int> f0idx = al.f0_indices();
  std::map<int, int> gen_of;
  for (size_t g = 0; g < f0idx.size(); ++g) gen_of[f0idx[g]] = static_cast<int>(g);
  auto s2_of = [&](const SparseVec& x, const SparseVec& y) {
    SparseVec out;
    for (const auto& [i, ci] : x)
      for (const auto& [j, cj] : y) {
        int idx = detail::s2_index(i, j, d);
        Rat& slot = out[idx];
        slot += ci * cj;
        if (slot == 0) out.erase(idx);
      }
    return out;
  };
  std::vector<SparseVec> rels;
  for (size_t s = 0; s < f0idx.size(); ++s)
    for (size_t t = s; t < f0idx.size(); ++t)
      rels.push_back(s2_of(w[s], w[t]));
  // [f0j, f1] = -f1 . w_j
  auto m_j = [&](int j) {
    return vec_scaled(minus.module.apply_sym("f1", w[gen_of.at(j)]), Rat(-1));
  };
  for (int i = 3; i <= r; ++i)
    for (int j = 3; j <= r; ++j) rels.push_back(s2_of(w[gen_of.at(i)], m_j(j)));
  for (int j = 3; j <= r; ++j) {
    SparseVec diff = w[gen_of.at(2)];
    vec_add_scaled(diff, w[gen_of.at(0)], Rat(-1));
    rels.push_back(s2_of(diff, m_j(j)));
  }
  return rels;
}

}  // namespace superforge
