#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "superforge/wn.hpp"

using namespace superforge;

namespace {

long long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

// composition of two basis derivations on a monomial, as plain operators
LambdaElem compose_on_mono(const Deriv& a, const Deriv& b, Mask m) {
  LambdaElem mid;
  auto r = apply_deriv_mono(b, m);
  if (r.sign != 0) mid[r.mask] = r.sign;
  return apply_derivation(a, mid);
}

}  // namespace

TEST_CASE("build_W level dimensions and totals for n = 2..5") {
  for (int n = 2; n <= 5; ++n) {
    WAlgebra w = build_W(n);
    long long total = 0;
    for (int p = 0; p <= n; ++p) {
      CHECK(w.algebra.dim(1 - p) == n * binom(n, p));
      total += w.algebra.dim(1 - p);
    }
    CHECK(total == n * (1LL << n));
    CHECK(w.algebra.total_dim() == total);
  }
  CHECK(build_W(3).algebra.dim(-2) == 3);
  CHECK_FALSE(build_W(3).algebra.has_level(-3));
  CHECK_THROWS_AS(build_W(1), error);
}

TEST_CASE("W(n) level 0 is gl(n): [K^a_b, K^c_d] = d_b^c K^a_d - d_d^a K^c_b") {
  int n = 3;
  WAlgebra w = build_W(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          Element lhs = w.algebra.bracket(w.algebra.basis_element(0, a * n + b),
                                          w.algebra.basis_element(0, c * n + d));
          Element rhs;
          if (b == c) elem_add(rhs, {0, a * n + d}, 1);
          if (d == a) elem_add(rhs, {0, c * n + b}, -1);
          CHECK(lhs == rhs);
        }
}

TEST_CASE("two level +1 derivations anticommute to zero") {
  WAlgebra w = build_W(3);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      CHECK(w.algebra.bracket(w.algebra.basis_element(1, a), w.algebra.basis_element(1, b)).empty());
}

TEST_CASE("stored brackets reproduce the operator composition on every monomial") {
  int n = 3;
  WAlgebra w = build_W(n);
  int total = w.algebra.total_dim();
  for (int fa = 0; fa < total; ++fa)
    for (int fb = 0; fb < total; ++fb) {
      auto [la, ia] = w.algebra.unflat(fa);
      auto [lb, ib] = w.algebra.unflat(fb);
      const Deriv& x = w.deriv_at(la, ia);
      const Deriv& y = w.deriv_at(lb, ib);
      SparseVec coords = w.algebra.bracket_basis(fa, fb);
      int sflip = (deriv_parity(x) && deriv_parity(y)) ? 1 : -1;
      for (Mask m = 0; m < (Mask(1) << n); ++m) {
        // oracle: [x,y](m) via operator composition on the full monomial
        LambdaElem expect = compose_on_mono(x, y, m);
        for (const auto& [mm, c] : compose_on_mono(y, x, m)) lambda_add(expect, mm, c * sflip);
        LambdaElem got;
        for (const auto& [i, c] : coords) {
          const Deriv& k = w.deriv_at(la + lb, i);
          auto r = apply_deriv_mono(k, m);
          if (r.sign != 0) lambda_add(got, r.mask, c * r.sign);
        }
        CHECK(got == expect);
      }
    }
}

TEST_CASE("super-Jacobi holds exhaustively on W(3)") {
  WAlgebra w = build_W(3);
  auto rep = check_super_jacobi(w.algebra, JacobiMode::exhaustive);
  CHECK(rep.ok());
}

TEST_CASE("super-Jacobi holds on sampled triples of W(4) and W(5)") {
  for (int n : {4, 5}) {
    WAlgebra w = build_W(n);
    auto rep = check_super_jacobi(w.algebra, JacobiMode::sampled, 10000, 42);
    CHECK(rep.checked == 10000);
    CHECK(rep.ok());
  }
}

TEST_CASE("a corrupted structure constant is caught with a located triple") {
  WAlgebra w = build_W(3);
  // corrupt one entry of a nonzero bracket
  auto it = w.algebra.table.begin();
  std::advance(it, 17);
  it->second.begin()->second += 1;
  auto rep = check_super_jacobi(w.algebra, JacobiMode::exhaustive);
  CHECK_FALSE(rep.ok());
  CHECK_FALSE(rep.failures.empty());
  CHECK_FALSE(rep.failures[0].residual.empty());
}

TEST_CASE("build_S dimensions: S(3) and S(4)") {
  auto s3 = build_S(3);
  CHECK(s3.algebra.dim(1) == 3);
  CHECK(s3.algebra.dim(0) == 8);
  CHECK(s3.algebra.dim(-1) == 6);
  CHECK_FALSE(s3.algebra.has_level(-2));  // table stops at level -n+2
  CHECK(s3.algebra.total_dim() == 17);

  auto s4 = build_S(4);
  CHECK(s4.algebra.dim(-1) == 24 - 4);
  CHECK(s4.algebra.dim(-2) == 4 * binom(4, 3) - binom(4, 2));
  CHECK_FALSE(s4.algebra.has_level(-3));
  CHECK_THROWS_AS(build_S(2), error);
}

TEST_CASE("super-Jacobi holds exhaustively on S(3)") {
  auto s3 = build_S(3);
  auto rep = check_super_jacobi(s3.algebra, JacobiMode::exhaustive);
  CHECK(rep.ok());
}

TEST_CASE("build_A_sub is 3-graded with dims (n, n^2, n)") {
  for (int n = 2; n <= 4; ++n) {
    ASubAlgebra a = build_A_sub(n);
    CHECK(a.algebra.dim(1) == n);
    CHECK(a.algebra.dim(0) == n * n);
    CHECK(a.algebra.dim(-1) == n);
    CHECK(a.algebra.total_dim() == n * n + 2 * n);
  }
  CHECK_THROWS_AS(build_A_sub(1), error);
}

TEST_CASE("A(n-1,0) commutation relations hold exactly in the trace sector") {
  for (int n = 2; n <= 4; ++n) {
    ASubAlgebra a = build_A_sub(n);
    auto E = [&](int i) { return a.algebra.basis_element(1, i); };
    auto G = [&](int i, int j) { return a.algebra.basis_element(0, i * n + j); };
    auto F = [&](int i) { return a.algebra.basis_element(-1, i); };
    Element Gsum;
    for (int i = 0; i < n; ++i) elem_add(Gsum, {0, i * n + i}, 1);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        // [E_a, F^b] = -G^b_a + delta_a^b G
        Element lhs = a.algebra.bracket(E(i), F(j));
        Element rhs;
        elem_add_scaled(rhs, G(j, i), Rat(-1));
        if (i == j) elem_add_scaled(rhs, Gsum, Rat(1));
        CHECK(lhs == rhs);
        // [E_a, E_b] = [F^a, F^b] = 0
        CHECK(a.algebra.bracket(E(i), E(j)).empty());
        CHECK(a.algebra.bracket(F(i), F(j)).empty());
        for (int c = 0; c < n; ++c) {
          // [G^a_b, F^c] = delta_b^c F^a
          Element gf = a.algebra.bracket(G(i, j), F(c));
          Element gf_expect;
          if (j == c) elem_add_scaled(gf_expect, F(i), Rat(1));
          CHECK(gf == gf_expect);
          // [G^a_b, E_c] = -delta_c^a E_b
          Element ge = a.algebra.bracket(G(i, j), E(c));
          Element ge_expect;
          if (c == i) elem_add_scaled(ge_expect, E(j), Rat(-1));
          CHECK(ge == ge_expect);
        }
      }
  }
}

TEST_CASE("super-Jacobi holds exhaustively on A-sub(4)") {
  ASubAlgebra a = build_A_sub(4);
  auto rep = check_super_jacobi(a.algebra, JacobiMode::exhaustive);
  CHECK(rep.ok());
}

TEST_CASE("grading consistency: brackets land at the level sum") {
  WAlgebra w = build_W(4);
  for (const auto& [key, val] : w.algebra.table) {
    int fa = static_cast<int>(key >> 32), fb = static_cast<int>(key & 0xffffffffu);
    auto [la, ia] = w.algebra.unflat(fa);
    auto [lb, ib] = w.algebra.unflat(fb);
    CHECK(w.algebra.has_level(la + lb));
    for (const auto& [i, c] : val) {
      CHECK(i >= 0);
      CHECK(i < w.algebra.dim(la + lb));
    }
  }
}
