#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "superforge/grassmann.hpp"

using namespace superforge;

namespace {

// Independent oracle: the contraction action written as the antisymmetrized
// formula q delta_b^{[c1} theta^{A} theta^{c2} ... theta^{cq]}, evaluated by
// summing over all permutations of the monomial indices.
LambdaElem contraction_oracle(const Deriv& k, Mask mono, int n) {
  LambdaElem out;
  std::vector<int> idx = mono_indices(mono);
  int q = static_cast<int>(idx.size());
  if (q == 0) return out;
  std::vector<int> perm = idx;
  std::sort(perm.begin(), perm.end());
  // factor q / q! = 1 / (q-1)!
  Rat factor(1);
  for (int i = 2; i < q; ++i) factor /= i;
  do {
    // permutation sign relative to the sorted order
    int inv = 0;
    for (int i = 0; i < q; ++i)
      for (int j = i + 1; j < q; ++j)
        if (perm[i] > perm[j]) ++inv;
    int sgn = (inv % 2 == 0) ? 1 : -1;
    if (perm[0] != k.lower) continue;
    std::vector<int> concat = mono_indices(k.upper);
    concat.insert(concat.end(), perm.begin() + 1, perm.end());
    NormalizedMonomial nm = normalize_monomial(concat, n);
    if (nm.sign == 0) continue;
    lambda_add(out, nm.mask, factor * sgn * nm.sign);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

LambdaElem mono_product(Mask a, Mask b, int n) {
  LambdaElem out;
  std::vector<int> concat = mono_indices(a);
  for (int i : mono_indices(b)) concat.push_back(i);
  NormalizedMonomial nm = normalize_monomial(concat, n);
  if (nm.sign != 0) out[nm.mask] = nm.sign;
  return out;
}

}  // namespace

TEST_CASE("normalize_monomial: transposition, repeat, cyclic") {
  auto r1 = normalize_monomial(std::vector<int>{1, 0}, 3);
  CHECK(r1.sign == -1);
  CHECK(r1.mask == 0b011u);
  auto r2 = normalize_monomial(std::vector<int>{0, 0}, 3);
  CHECK(r2.sign == 0);
  auto r3 = normalize_monomial(std::vector<int>{2, 0, 1}, 3);
  CHECK(r3.sign == 1);
  CHECK(r3.mask == 0b111u);
  CHECK_THROWS_AS(normalize_monomial(std::vector<int>{3}, 3), error);
}

TEST_CASE("apply_derivation: spec examples") {
  // K^0_1 acting on theta^1 theta^2 gives theta^0 theta^2
  Deriv k01{0b001u, 1};
  auto r = apply_deriv_mono(k01, 0b110u);
  CHECK(r.sign == 1);
  CHECK(r.mask == 0b101u);
  // K_a on theta^a gives the empty monomial
  Deriv ka{0, 2};
  auto r2 = apply_deriv_mono(ka, 0b100u);
  CHECK(r2.sign == 1);
  CHECK(r2.mask == 0u);
  // K^{01}_2 on theta^0 vanishes: nothing to contract
  Deriv k012{0b011u, 2};
  CHECK(apply_deriv_mono(k012, 0b001u).sign == 0);
}

TEST_CASE("operator form agrees with the antisymmetrized contraction formula") {
  for (int n = 2; n <= 4; ++n) {
    for (int p = 0; p <= n; ++p) {
      // iterate all derivations with |upper| = p and all monomials
      for (Mask upper = 0; upper < (Mask(1) << n); ++upper) {
        if (std::popcount(upper) != p) continue;
        for (int b = 0; b < n; ++b) {
          Deriv k{upper, b};
          for (Mask m = 0; m < (Mask(1) << n); ++m) {
            LambdaElem expect = contraction_oracle(k, m, n);
            LambdaElem got;
            auto r = apply_deriv_mono(k, m);
            if (r.sign != 0) got[r.mask] = r.sign;
            CHECK(got == expect);
          }
        }
      }
    }
  }
}

TEST_CASE("basis derivations satisfy the graded Leibniz rule") {
  std::mt19937_64 rng(11);
  int n = 5;
  for (int trial = 0; trial < 300; ++trial) {
    Mask x = static_cast<Mask>(rng() & ((1u << n) - 1));
    Mask y = static_cast<Mask>(rng() & ((1u << n) - 1));
    Mask upper = static_cast<Mask>(rng() & ((1u << n) - 1));
    int b = static_cast<int>(rng() % n);
    Deriv d{upper, b};
    int dx_parity = deriv_parity(d) * static_cast<int>(std::popcount(x));
    LambdaElem xy = mono_product(x, y, n);
    LambdaElem lhs = apply_derivation(d, xy);
    // d(x) y + (-1)^{|d||x|} x d(y)
    LambdaElem rhs;
    auto dx = apply_deriv_mono(d, x);
    if (dx.sign != 0)
      for (const auto& [m, c] : mono_product(dx.mask, y, n)) lambda_add(rhs, m, c * dx.sign);
    auto dy = apply_deriv_mono(d, y);
    if (dy.sign != 0) {
      Rat s = (dx_parity % 2 == 0) ? 1 : -1;
      for (const auto& [m, c] : mono_product(x, dy.mask, n)) lambda_add(rhs, m, c * dy.sign * s);
    }
    CHECK(lhs == rhs);
  }
}
