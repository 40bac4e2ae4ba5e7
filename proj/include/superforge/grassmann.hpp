#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "superforge/error.hpp"
#include "superforge/rational.hpp"

namespace superforge {

// Monomials of the Grassmann algebra on n odd generators are kept as bit
// masks over the index set {0,...,n-1}; the empty monomial is mask 0.
using Mask = std::uint32_t;

constexpr int kMaxGrassmannRank = 31;

inline int mono_degree(Mask m) { return std::popcount(m); }

inline std::vector<int> mono_indices(Mask m) {
  std::vector<int> out;
  for (int i = 0; m; ++i, m >>= 1)
    if (m & 1u) out.push_back(i);
  return out;
}

inline Mask mono_from_indices(std::span<const int> idx, int n) {
  Mask m = 0;
  for (int i : idx) {
    if (i < 0 || i >= n) throw error(errc::index_out_of_range, "theta index " + std::to_string(i));
    m |= Mask(1) << i;
  }
  return m;
}

struct NormalizedMonomial {
  int sign = 0;  // +1, -1, or 0 when an index repeats
  Mask mask = 0;
};

// Sorts theta^{i1}...theta^{ik} into strictly increasing order. The sign is
// the parity of the sorting permutation; a repeated index gives zero.
inline NormalizedMonomial normalize_monomial(std::span<const int> idx, int n) {
  if (n < 0 || n > kMaxGrassmannRank) throw error(errc::invalid_rank, "n out of range");
  Mask m = 0;
  int inversions = 0;
  for (size_t pos = 0; pos < idx.size(); ++pos) {
    int i = idx[pos];
    if (i < 0 || i >= n) throw error(errc::index_out_of_range, "theta index " + std::to_string(i));
    Mask bit = Mask(1) << i;
    if (m & bit) return {0, 0};
    // indices already placed that are greater than i each contribute a swap
    inversions += std::popcount(m >> (i + 1));
    m |= bit;
  }
  return {(inversions % 2 == 0) ? 1 : -1, m};
}

// An element of Lambda(n): monomial mask -> coefficient.
using LambdaElem = std::map<Mask, Rat>;

inline void lambda_add(LambdaElem& dst, Mask m, const Rat& c) {
  if (c == 0) return;
  Rat& slot = dst[m];
  slot += c;
  if (slot == 0) dst.erase(m);
}

// Basis derivation K^{upper}_lower = theta^{upper} d/d theta^{lower}.
// Level is 1 - |upper|; parity is (|upper| + 1) mod 2.
struct Deriv {
  Mask upper = 0;
  int lower = 0;
};

inline int deriv_level(const Deriv& k) { return 1 - std::popcount(k.upper); }
inline int deriv_parity(const Deriv& k) { return (std::popcount(k.upper) + 1) & 1; }

struct SignedMono {
  int sign = 0;
  Mask mask = 0;
};

// K^{A}_b acting on a monomial: contract theta^b from the left, then
// multiply by theta^{A} and normalize.
inline SignedMono apply_deriv_mono(const Deriv& k, Mask m) {
  Mask bit = Mask(1) << k.lower;
  if (!(m & bit)) return {0, 0};
  int below = std::popcount(m & (bit - 1));
  int sign = (below % 2 == 0) ? 1 : -1;
  Mask rest = m & ~bit;
  if (k.upper & rest) return {0, 0};
  // inversions when sorting the concatenation (upper, rest)
  int inv = 0;
  for (Mask r = rest; r;) {
    int i = std::countr_zero(r);
    r &= r - 1;
    inv += std::popcount(k.upper >> (i + 1));
  }
  if (inv % 2 != 0) sign = -sign;
  return {sign, k.upper | rest};
}

inline LambdaElem apply_derivation(const Deriv& k, const LambdaElem& x) {
  LambdaElem out;
  for (const auto& [m, c] : x) {
    SignedMono r = apply_deriv_mono(k, m);
    if (r.sign != 0) lambda_add(out, r.mask, c * r.sign);
  }
  return out;
}

// A derivation given as a K-basis combination: (upper, lower) -> coefficient.
using DerivElem = std::map<std::pair<Mask, int>, Rat>;

inline LambdaElem apply_derivation(const DerivElem& d, const LambdaElem& x) {
  LambdaElem out;
  for (const auto& [key, c] : d) {
    Deriv k{key.first, key.second};
    for (const auto& [m, cm] : x) {
      SignedMono r = apply_deriv_mono(k, m);
      if (r.sign != 0) lambda_add(out, r.mask, c * cm * r.sign);
    }
  }
  return out;
}

// Super-commutator of two basis derivations, re-expressed in the K basis.
// A derivation is determined by its action on the generators theta^c, and
// the coefficient of K^{A}_b is the coefficient of theta^{A} in D(theta^b).
inline DerivElem bracket_derivs(const Deriv& x, const Deriv& y, int n) {
  DerivElem out;
  int sign_flip = (deriv_parity(x) && deriv_parity(y)) ? 1 : -1;  // -(-1)^{|x||y|}
  for (int b = 0; b < n; ++b) {
    LambdaElem gen;
    gen[Mask(1) << b] = 1;
    LambdaElem xy = apply_derivation(Deriv{x.upper, x.lower},
                                     apply_derivation(Deriv{y.upper, y.lower}, gen));
    LambdaElem yx = apply_derivation(Deriv{y.upper, y.lower},
                                     apply_derivation(Deriv{x.upper, x.lower}, gen));
    for (const auto& [m, c] : yx) lambda_add(xy, m, c * sign_flip);
    for (const auto& [m, c] : xy) {
      auto key = std::make_pair(m, b);
      Rat& slot = out[key];
      slot += c;
      if (slot == 0) out.erase(key);
    }
  }
  return out;
}

inline std::string deriv_label(const Deriv& k) {
  std::string s = "K";
  if (k.upper) {
    s += "^";
    for (int i : mono_indices(k.upper)) s += std::to_string(i);
  }
  s += "_" + std::to_string(k.lower);
  return s;
}

}  // namespace superforge
