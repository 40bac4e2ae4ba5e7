#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "superforge/error.hpp"
#include "superforge/rational.hpp"
#include "superforge/sparse_matrix.hpp"

namespace superforge {

// An element of a graded superalgebra: (level, basis index) -> coefficient.
using Element = std::map<std::pair<int, int>, Rat>;

inline void elem_add(Element& dst, const std::pair<int, int>& key, const Rat& c) {
  if (c == 0) return;
  Rat& slot = dst[key];
  slot += c;
  if (slot == 0) dst.erase(key);
}

inline void elem_add_scaled(Element& dst, const Element& src, const Rat& c) {
  for (const auto& [k, v] : src) elem_add(dst, k, v * c);
}

// Finite Z-graded Lie superalgebra with exact structure constants. The
// grading is consistent: parity of level l is l mod 2. Structure constants
// are stored once per canonically ordered basis pair; the other order
// follows from super-antisymmetry.
struct GradedSuperalgebra {
  std::string name;
  std::vector<int> levels;  // strictly descending, e.g. +1, 0, -1, ...
  std::map<int, std::vector<std::string>> labels;

  // key: flat_a * stride + flat_b with flat_a <= flat_b
  // value: coordinates of [a, b] at level(a)+level(b)
  std::map<std::uint64_t, SparseVec> table;

  int dim(int level) const {
    auto it = labels.find(level);
    return it == labels.end() ? 0 : static_cast<int>(it->second.size());
  }

  bool has_level(int level) const { return dim(level) > 0; }

  int total_dim() const {
    int d = 0;
    for (int l : levels) d += dim(l);
    return d;
  }

  static int parity(int level) { return ((level % 2) + 2) % 2; }

  // Flat enumeration in (levels descending, index ascending) order.
  int flat(int level, int i) const {
    int base = 0;
    for (int l : levels) {
      if (l == level) return base + i;
      base += dim(l);
    }
    throw error(errc::index_out_of_range, "level " + std::to_string(level));
  }

  std::pair<int, int> unflat(int f) const {
    for (int l : levels) {
      int d = dim(l);
      if (f < d) return {l, f};
      f -= d;
    }
    throw error(errc::index_out_of_range, "flat index");
  }

  // key layout is independent of the (growing) level list
  static std::uint64_t pair_key(int fa, int fb) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(fa)) << 32) |
           static_cast<std::uint64_t>(static_cast<std::uint32_t>(fb));
  }

  void set_bracket(int level_a, int ia, int level_b, int ib, SparseVec value) {
    int fa = flat(level_a, ia), fb = flat(level_b, ib);
    if (fa > fb) throw error(errc::internal, "set_bracket expects canonical order");
    if (value.empty()) return;
    table[pair_key(fa, fb)] = std::move(value);
  }

  // [basis fa, basis fb] as coordinates at level la+lb (empty if that level
  // is absent or the bracket vanishes).
  SparseVec bracket_basis(int fa, int fb) const {
    bool flip = fa > fb;
    if (flip) std::swap(fa, fb);
    auto it = table.find(pair_key(fa, fb));
    if (it == table.end()) return {};
    if (!flip) return it->second;
    auto [la, ia] = unflat(fa);
    auto [lb, ib] = unflat(fb);
    // [y,x] = -(-1)^{|x||y|} [x,y]
    Rat s = (parity(la) && parity(lb)) ? Rat(1) : Rat(-1);
    return vec_scaled(it->second, s);
  }

  Element bracket(const Element& x, const Element& y) const {
    Element out;
    for (const auto& [ka, ca] : x)
      for (const auto& [kb, cb] : y) {
        int target = ka.first + kb.first;
        SparseVec v = bracket_basis(flat(ka.first, ka.second), flat(kb.first, kb.second));
        for (const auto& [j, c] : v) elem_add(out, {target, j}, c * ca * cb);
      }
    return out;
  }

  Element basis_element(int level, int i) const {
    Element e;
    e[{level, i}] = 1;
    return e;
  }

  // Coordinates of an element restricted to one level.
  SparseVec level_coords(const Element& x, int level) const {
    SparseVec v;
    for (const auto& [k, c] : x)
      if (k.first == level) v[k.second] = c;
    return v;
  }

  static Element from_coords(int level, const SparseVec& v) {
    Element e;
    for (const auto& [i, c] : v) e[{level, i}] = c;
    return e;
  }
};

// ---------------------------------------------------------------------------
// Super-Jacobi verification

struct JacobiFailure {
  std::array<std::pair<int, int>, 3> triple;  // (level, index) of x, y, z
  Element residual;
};

struct JacobiReport {
  std::uint64_t checked = 0;
  std::vector<JacobiFailure> failures;  // capped
  bool ok() const { return failures.empty(); }
};

// Residual of [x,[y,z]] - [[x,y],z] - (-1)^{|x||y|} [y,[x,z]] on basis triples.
inline Element jacobi_residual(const GradedSuperalgebra& g, std::pair<int, int> a,
                               std::pair<int, int> b, std::pair<int, int> c) {
  Element x = g.basis_element(a.first, a.second);
  Element y = g.basis_element(b.first, b.second);
  Element z = g.basis_element(c.first, c.second);
  Element lhs = g.bracket(x, g.bracket(y, z));
  Element r1 = g.bracket(g.bracket(x, y), z);
  Element r2 = g.bracket(y, g.bracket(x, z));
  Rat s = (GradedSuperalgebra::parity(a.first) && GradedSuperalgebra::parity(b.first)) ? -1 : 1;
  elem_add_scaled(lhs, r1, Rat(-1));
  elem_add_scaled(lhs, r2, -s);
  return lhs;
}

inline JacobiReport check_super_jacobi_exhaustive(const GradedSuperalgebra& g,
                                                  size_t max_failures = 4) {
  JacobiReport rep;
  int n = g.total_dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        ++rep.checked;
        Element res = jacobi_residual(g, g.unflat(i), g.unflat(j), g.unflat(k));
        if (!res.empty() && rep.failures.size() < max_failures)
          rep.failures.push_back({{g.unflat(i), g.unflat(j), g.unflat(k)}, res});
      }
  return rep;
}

inline JacobiReport check_super_jacobi_sampled(const GradedSuperalgebra& g, std::uint64_t samples,
                                               std::uint64_t seed, size_t max_failures = 4) {
  JacobiReport rep;
  int n = g.total_dim();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(0, n - 1);
  for (std::uint64_t t = 0; t < samples; ++t) {
    int i = dist(rng), j = dist(rng), k = dist(rng);
    ++rep.checked;
    Element res = jacobi_residual(g, g.unflat(i), g.unflat(j), g.unflat(k));
    if (!res.empty() && rep.failures.size() < max_failures)
      rep.failures.push_back({{g.unflat(i), g.unflat(j), g.unflat(k)}, res});
  }
  return rep;
}

enum class JacobiMode { exhaustive, sampled };

inline JacobiReport check_super_jacobi(const GradedSuperalgebra& g, JacobiMode mode,
                                       std::uint64_t samples = 10000, std::uint64_t seed = 0) {
  return mode == JacobiMode::exhaustive ? check_super_jacobi_exhaustive(g)
                                        : check_super_jacobi_sampled(g, samples, seed);
}

// ---------------------------------------------------------------------------
// Subalgebra closure

// Spans per level of the subalgebra generated by the given seed vectors,
// inside the ambient algebra g. Seeds are (level, coordinates) pairs.
struct SubalgebraSpans {
  std::map<int, RowSpace> spans;

  int dim(int level) const {
    auto it = spans.find(level);
    return it == spans.end() ? 0 : it->second.rank();
  }
};

inline SubalgebraSpans subalgebra_close(const GradedSuperalgebra& g,
                                        const std::vector<std::pair<int, SparseVec>>& seeds) {
  SubalgebraSpans out;
  for (const auto& [level, v] : seeds) {
    auto it = out.spans.find(level);
    if (it == out.spans.end()) it = out.spans.emplace(level, RowSpace(g.dim(level))).first;
    it->second.insert(v);
  }
  bool grew = true;
  while (grew) {
    grew = false;
    // snapshot to iterate over stable bases
    std::vector<std::pair<int, std::vector<SparseVec>>> snapshot;
    for (auto& [l, rs] : out.spans) snapshot.emplace_back(l, rs.basis());
    for (const auto& [la, basis_a] : snapshot)
      for (const auto& [lb, basis_b] : snapshot) {
        if (la > lb) continue;
        int target = la + lb;
        if (!g.has_level(target)) continue;
        for (const auto& va : basis_a)
          for (const auto& vb : basis_b) {
            Element r = g.bracket(GradedSuperalgebra::from_coords(la, va),
                                  GradedSuperalgebra::from_coords(lb, vb));
            SparseVec coords = g.level_coords(r, target);
            if (coords.empty()) continue;
            auto it = out.spans.find(target);
            if (it == out.spans.end())
              it = out.spans.emplace(target, RowSpace(g.dim(target))).first;
            if (it->second.insert(coords)) grew = true;
          }
      }
  }
  return out;
}

// Builds a standalone algebra from closed spans inside g. Basis vectors are
// the canonical echelon rows of each span; the embedding is returned so the
// result can be compared against other subspaces of g.
struct SubalgebraResult {
  GradedSuperalgebra algebra;
  std::map<int, std::vector<SparseVec>> embedding;  // basis vectors in g coords
};

inline SubalgebraResult subalgebra_build(const GradedSuperalgebra& g, const SubalgebraSpans& spans,
                                         const std::string& name,
                                         const std::map<int, std::vector<std::string>>* label_override = nullptr) {
  SubalgebraResult out;
  out.algebra.name = name;
  for (int l : g.levels) {
    auto it = spans.spans.find(l);
    if (it == spans.spans.end() || it->second.rank() == 0) continue;
    out.algebra.levels.push_back(l);
    out.embedding[l] = it->second.basis();
    std::vector<std::string> lab;
    if (label_override && label_override->count(l)) {
      lab = label_override->at(l);
      if (static_cast<int>(lab.size()) != it->second.rank())
        throw error(errc::internal, "label override size mismatch");
    } else {
      for (int i = 0; i < it->second.rank(); ++i)
        lab.push_back(name + "[" + std::to_string(l) + "]." + std::to_string(i));
    }
    out.algebra.labels[l] = std::move(lab);
  }
  // structure constants by projecting ambient brackets onto the spans
  for (int la : out.algebra.levels)
    for (int lb : out.algebra.levels) {
      int target = la + lb;
      for (size_t ia = 0; ia < out.embedding[la].size(); ++ia)
        for (size_t ib = 0; ib < out.embedding[lb].size(); ++ib) {
          int fa = out.algebra.flat(la, static_cast<int>(ia));
          int fb = out.algebra.flat(lb, static_cast<int>(ib));
          if (fa > fb) continue;
          Element r = g.bracket(GradedSuperalgebra::from_coords(la, out.embedding[la][ia]),
                                GradedSuperalgebra::from_coords(lb, out.embedding[lb][ib]));
          SparseVec coords_g = g.level_coords(r, target);
          if (coords_g.empty()) {
            if (!r.empty()) throw error(errc::internal, "bracket leaves the grading");
            continue;
          }
          auto it = spans.spans.find(target);
          if (it == spans.spans.end())
            throw error(errc::internal, "subalgebra spans not closed under bracket");
          auto coords = it->second.coordinates(coords_g);
          if (!coords)
            throw error(errc::internal, "subalgebra spans not closed under bracket");
          out.algebra.set_bracket(la, static_cast<int>(ia), lb, static_cast<int>(ib),
                                  std::move(*coords));
        }
    }
  return out;
}

}  // namespace superforge
