// Acceptance suite: one line per criterion, exit nonzero when any fails.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "superforge/grassmann.hpp"
#include "superforge/json_io.hpp"
#include "superforge/presented.hpp"
#include "superforge/verify.hpp"

using namespace superforge;
namespace fs = std::filesystem;

namespace {

struct Criterion {
  std::string name;
  bool pass = true;
  double seconds = 0;
  std::string detail;
};

std::vector<Criterion> results;

class Timer {
 public:
  Timer() : t0_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
  }

 private:
  std::chrono::steady_clock::time_point t0_;
};

void record(const std::string& name, bool pass, double seconds, const std::string& detail) {
  results.push_back({name, pass, seconds, detail});
  std::cout << (pass ? "PASS" : "FAIL") << " - " << name << " (" << seconds << " s)";
  if (!detail.empty()) std::cout << " - " << detail;
  std::cout << "\n" << std::flush;
}

long long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

struct RunResult {
  int exit_code;
  std::string out;
  std::string err;
};

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  fs::path dir = fs::temp_directory_path() / "superforge_acceptance";
  fs::create_directories(dir);
  fs::path out = dir / ("out" + std::to_string(counter) + ".txt");
  fs::path err = dir / ("err" + std::to_string(counter) + ".txt");
  ++counter;
  std::string cmd = std::string(SF_CLI_PATH) + " " + args + " > " + out.string() + " 2> " +
                    err.string();
  int status = std::system(cmd.c_str());
  int code = (status >= 256) ? (status >> 8) & 0xff : status;
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  return {code, slurp(out), slurp(err)};
}

std::string golden_path(const std::string& name) {
  return std::string(SF_GOLDEN_DIR) + "/" + name;
}

std::string slurp_file(const std::string& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// --- criterion 1: concrete-model dimensions -------------------------------

void criterion1() {
  bool ok = true;
  std::string detail;
  double total_s = 0;
  for (int n = 2; n <= 5; ++n) {
    Timer t;
    WAlgebra w = build_W(n);
    double s = t.seconds();
    total_s += s;
    bool dims_ok = w.algebra.total_dim() == n * (1LL << n);
    for (int p = 0; p <= n; ++p)
      if (w.algebra.dim(1 - p) != n * binom(n, p)) dims_ok = false;
    if (s >= 10.0) dims_ok = false;
    if (!dims_ok) ok = false;
    detail += "n=" + std::to_string(n) + ":" + std::to_string(w.algebra.total_dim()) + " ";
  }
  record("criterion 1: W(n) level dims n*C(n,p), totals n*2^n, n=2..5, <10 s each", ok, total_s,
         detail);
}

// --- criterion 2: super-axioms ---------------------------------------------

bool antisymmetry_holds(const GradedSuperalgebra& g) {
  int total = g.total_dim();
  for (int i = 0; i < total; ++i)
    for (int j = 0; j < total; ++j) {
      auto [li, ii] = g.unflat(i);
      auto [lj, jj] = g.unflat(j);
      Element lhs = g.bracket(g.basis_element(li, ii), g.basis_element(lj, jj));
      Element rhs = g.bracket(g.basis_element(lj, jj), g.basis_element(li, ii));
      // [x,y] + (-1)^{|x||y|} [y,x] = 0
      Rat s = (GradedSuperalgebra::parity(li) && GradedSuperalgebra::parity(lj)) ? -1 : 1;
      elem_add_scaled(lhs, rhs, s);
      if (!lhs.empty()) return false;
    }
  return true;
}

// independent route for W(n): brackets recomputed as operator compositions
bool w_matches_composition_oracle(const WAlgebra& w) {
  int n = w.n;
  int total = w.algebra.total_dim();
  for (int fa = 0; fa < total; ++fa)
    for (int fb = 0; fb < total; ++fb) {
      auto [la, ia] = w.algebra.unflat(fa);
      auto [lb, ib] = w.algebra.unflat(fb);
      Deriv x = w.deriv_at(la, ia), y = w.deriv_at(lb, ib);
      SparseVec coords = w.algebra.bracket_basis(fa, fb);
      int sflip = (deriv_parity(x) && deriv_parity(y)) ? 1 : -1;
      for (Mask m = 0; m < (Mask(1) << n); ++m) {
        LambdaElem mid;
        auto r1 = apply_deriv_mono(y, m);
        if (r1.sign != 0) mid[r1.mask] = r1.sign;
        LambdaElem expect = apply_derivation(x, mid);
        LambdaElem mid2;
        auto r2 = apply_deriv_mono(x, m);
        if (r2.sign != 0) mid2[r2.mask] = r2.sign;
        for (const auto& [mm, c] : apply_derivation(y, mid2)) lambda_add(expect, mm, c * sflip);
        LambdaElem got;
        for (const auto& [i, c] : coords) {
          auto r = apply_deriv_mono(w.deriv_at(la + lb, i), m);
          if (r.sign != 0) lambda_add(got, r.mask, c * r.sign);
        }
        if (got != expect) return false;
      }
    }
  return true;
}

void criterion2() {
  Timer t;
  bool ok = true;
  std::string detail;
  {
    WAlgebra w3 = build_W(3);
    if (!w_matches_composition_oracle(w3)) ok = false;
    if (!antisymmetry_holds(w3.algebra)) ok = false;
    auto jr = check_super_jacobi(w3.algebra, JacobiMode::exhaustive);
    if (!jr.ok()) ok = false;
    detail += "W(3):" + std::to_string(jr.checked) + " ";
  }
  {
    auto s3 = build_S(3);
    if (!antisymmetry_holds(s3.algebra)) ok = false;
    auto jr = check_super_jacobi(s3.algebra, JacobiMode::exhaustive);
    if (!jr.ok()) ok = false;
    detail += "S(3):" + std::to_string(jr.checked) + " ";
  }
  {
    auto a4 = build_A_sub(4);
    if (!antisymmetry_holds(a4.algebra)) ok = false;
    auto jr = check_super_jacobi(a4.algebra, JacobiMode::exhaustive);
    if (!jr.ok()) ok = false;
    detail += "A-sub(4):" + std::to_string(jr.checked) + " ";
  }
  {
    WAlgebra w5 = build_W(5);
    auto jr = check_super_jacobi(w5.algebra, JacobiMode::sampled, 10000, 20240810);
    if (!jr.ok() || jr.checked < 10000) ok = false;
    detail += "W(5)-sampled:" + std::to_string(jr.checked);
  }
  double s = t.seconds();
  if (s >= 60.0) ok = false;
  record("criterion 2: super-axioms exhaustive on W(3), S(3), A-sub(4); 1e4 seeded on W(5); <60 s",
         ok, s, detail);
}

// --- criterion 3: Borcherds 3-grading ---------------------------------------

void criterion3() {
  Timer t;
  bool ok = true;
  std::string detail;
  for (int n = 2; n <= 4; ++n) {
    VerificationReport rep = verify_borcherds_3grading(n);
    bool this_ok = rep.ok() && rep.dim_table.at(1).at("presented") == n &&
                   rep.dim_table.at(0).at("presented") == n * n &&
                   rep.dim_table.at(-1).at("presented") == n;
    int total = rep.dim_table.at(1).at("presented") + rep.dim_table.at(0).at("presented") +
                rep.dim_table.at(-1).at("presented");
    if (total != n * n + 2 * n) this_ok = false;
    if (!this_ok) ok = false;
    detail += "n=" + std::to_string(n) + ":" + std::to_string(total) + " ";
  }
  double s = t.seconds();
  if (s >= 30.0) ok = false;
  record("criterion 3: presented B(A_{n-1}) is 3-graded with dims (n,n^2,n), n=2..4, <30 s", ok, s,
         detail);
}

// --- criterion 4: the theorem ------------------------------------------------

void criterion4() {
  bool ok = true;
  std::string detail;
  double total_s = 0;
  for (int n = 2; n <= 4; ++n) {
    Timer t;
    VerificationReport rep = verify_theorem(n);
    double s = t.seconds();
    total_s += s;
    bool this_ok = rep.ok();
    // stage 5 and 6 must agree with the concrete dims at every deep level
    for (const auto& [lvl, row] : rep.dim_table) {
      if (!row.count("prolonged") && !row.count("quotient")) continue;
      int concrete = row.count("concrete") ? row.at("concrete") : 0;
      if (row.count("prolonged") && row.at("prolonged") != concrete) this_ok = false;
      if (row.count("quotient") && row.at("quotient") != concrete) this_ok = false;
    }
    if (n == 4 && s >= 120.0) this_ok = false;
    if (!this_ok) ok = false;
    detail += "n=" + std::to_string(n) + ":" + rep.verdict + " ";
  }
  record("criterion 4: verify_theorem passes all six stages for n=2,3,4; <2 min at n=4", ok,
         total_s, detail);
  {
    Timer t;
    VerificationReport rep = verify_theorem(5);
    double s = t.seconds();
    bool ok5 = rep.ok() && s < 900.0;
    record("criterion 4 (optional): verify_theorem at n=5, <15 min", ok5, s, rep.verdict);
  }
}

// --- criterion 5: S(n) extraction ---------------------------------------------

void criterion5() {
  Timer t;
  bool ok = true;
  std::string detail;
  for (int n : {3, 4}) {
    ExtractSResult res = extract_S_A_series(n);
    bool this_ok = res.report.ok();
    long long total = 0;
    for (int p = 0; p <= n; ++p) {
      long long expect = n * binom(n, p) - binom(n, p - 1);
      int lvl = 1 - p;
      long long got = res.dims.count(lvl) ? res.dims.at(lvl) : 0;
      if (got != expect) this_ok = false;
      total += got;
    }
    if (n == 3 && total != 17) this_ok = false;
    if (!this_ok) ok = false;
    detail += "n=" + std::to_string(n) + ":total=" + std::to_string(total) + " ";
  }
  double s = t.seconds();
  if (s >= 30.0) ok = false;
  record("criterion 5: extract_S matches build_S with dims n*C(n,p)-C(n,p-1), n=3,4, <30 s", ok, s,
         detail);
}

// --- criterion 6: negative controls --------------------------------------------

void criterion6() {
  Timer t;
  int n = 4;
  WAlgebra w = build_W(n);
  CartanData c = cartan_from_series(Series::A, n - 1);
  RelationSet rs = relations_tha(c);
  EmbeddingSolution sol = embed_tha_into_W(w, rs);
  LocalPart lp = local_part_from_W(w);
  std::vector<SparseVec> rels = ideal_J_concrete(w, sol);
  NegativeQuotient base = free_negative_quotient(lp.g0, lp.minus, rels, n + 1, "full");

  int growing = 0, redundant_proven = 0;
  std::string redundant_list;
  for (size_t drop = 0; drop < rels.size(); ++drop) {
    std::vector<SparseVec> sub;
    for (size_t i = 0; i < rels.size(); ++i)
      if (i != drop) sub.push_back(rels[i]);
    NegativeQuotient q = free_negative_quotient(lp.g0, lp.minus, sub, n + 1, "drop");
    bool grew = false;
    for (size_t lvl = 0; lvl < q.levels.size(); ++lvl) {
      int b = lvl < base.levels.size() ? base.levels[lvl].dim : 0;
      if (q.levels[lvl].dim > b) grew = true;
    }
    if (grew) {
      ++growing;
    } else {
      // prove the redundancy: the dropped generator lies in the g0-closure
      // span of the remaining seven, so no growth is possible at any depth
      RowSpace closure(lp.minus.dim * (lp.minus.dim + 1) / 2);
      std::deque<SparseVec> work;
      for (const auto& r : sub)
        if (closure.insert(r)) work.push_back(r);
      while (!work.empty()) {
        SparseVec r = work.front();
        work.pop_front();
        for (int z = 0; z < lp.g0.dim; ++z) {
          SparseVec zr = detail::s2_act(lp.minus, z, r);
          if (closure.insert(zr)) work.push_back(zr);
        }
      }
      if (closure.contains(rels[drop])) {
        ++redundant_proven;
        redundant_list += std::to_string(drop) + " ";
      }
    }
  }
  bool all_grow = growing == static_cast<int>(rels.size());
  std::string analysis =
      std::to_string(growing) + "/" + std::to_string(rels.size()) +
      " single removals grow the quotient; the other " + std::to_string(redundant_proven) +
      " generators (indices " + redundant_list +
      ") are proven redundant: each lies in the g0-closure of the remaining seven, so the "
      "generating family is not minimal and growth is impossible for them";
  record("criterion 6a: removing any single ideal-J generator at n=4 strictly grows the quotient",
         all_grow, t.seconds(), analysis);

  {
    Timer t2;
    WAlgebra w3 = build_W(3);
    auto it = w3.algebra.table.begin();
    std::advance(it, 23);
    it->second.begin()->second += 1;
    auto jr = check_super_jacobi(w3.algebra, JacobiMode::exhaustive);
    bool caught = !jr.ok() && !jr.failures.empty() && !jr.failures[0].residual.empty();
    std::string where;
    if (caught) {
      const auto& f = jr.failures[0];
      where = "located triple (" + std::to_string(f.triple[0].first) + "," +
              std::to_string(f.triple[0].second) + ")(" + std::to_string(f.triple[1].first) + "," +
              std::to_string(f.triple[1].second) + ")(" + std::to_string(f.triple[2].first) + "," +
              std::to_string(f.triple[2].second) + ")";
    }
    record("criterion 6b: a corrupted structure constant fails check_super_jacobi with a located triple",
           caught, t2.seconds(), where);
  }
}

// --- criterion 7: parser golden files ---------------------------------------

void criterion7() {
  Timer t;
  bool ok = true;
  std::string detail;
  std::vector<std::string> names{"a1", "a2", "a3", "a4", "a5", "a6", "a7", "a8",
                                 "d3", "d4", "d5", "e6", "e7", "e8"};
  for (const auto& name : names) {
    DynkinDiagram d = parse_diagram(slurp_file(golden_path(name + ".dynkin")));
    std::string canon = emit_diagram(d);
    if (canon != slurp_file(golden_path(name + ".norm"))) {
      ok = false;
      detail += name + ":norm-mismatch ";
    }
    DynkinDiagram d2 = parse_diagram(canon);
    if (emit_diagram(d2) != canon) {
      ok = false;
      detail += name + ":not-fixed-point ";
    }
  }
  // the figure input yields the exact extended Cartan matrix
  {
    RunResult r = run_cli("parse-dynkin " + golden_path("fig1.dynkin"));
    bool fig_ok = r.exit_code == 0;
    auto j = nlohmann::json::parse(r.out, nullptr, false);
    std::vector<std::vector<int>> expect{{0, -1, 0}, {-1, 2, -1}, {0, -1, 2}};
    if (j.is_discarded() || j["B"].get<std::vector<std::vector<int>>>() != expect) fig_ok = false;
    if (!fig_ok) {
      ok = false;
      detail += "fig1 ";
    }
  }
  // malformed inputs exit 2 with a located message
  {
    RunResult r = run_cli("parse-dynkin " + golden_path("bad_syntax.dynkin"));
    if (r.exit_code != 2 || r.err.find("line 2") == std::string::npos ||
        r.err.find("col") == std::string::npos) {
      ok = false;
      detail += "bad_syntax ";
    }
    for (std::string bad : {"bad_twogray", "bad_dangling", "bad_empty"})
      if (run_cli("parse-dynkin " + golden_path(bad + ".dynkin")).exit_code != 2) {
        ok = false;
        detail += bad + " ";
      }
  }
  record("criterion 7: golden round-trips A1..A8 + D/E, exact figure matrix, exit-2 diagnostics",
         ok, t.seconds(), detail.empty() ? "14 diagrams + 4 malformed inputs" : detail);
}

// --- criterion 8: D-series smoke ---------------------------------------------

void criterion8() {
  Timer t;
  bool ok = true;
  std::string detail;
  for (int r : {3, 4}) {
    std::string args = "build tha-presented D " + std::to_string(r) + " --depth 3 --format csv";
    RunResult a = run_cli(args);
    RunResult b = run_cli(args);
    bool this_ok = a.exit_code == 0 && b.exit_code == 0 && a.out == b.out &&
                   a.out.find("level,dimension") == 0;
    if (!this_ok) ok = false;
    detail += "D" + std::to_string(r) + (this_ok ? ":stable " : ":UNSTABLE ");
  }
  record("criterion 8: tha-presented D_3 and D_4 complete at depth 3 with stable tables", ok,
         t.seconds(), detail);
}

}  // namespace

int main() {
  std::cout << "superforge acceptance suite\n";
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  int failed = 0;
  for (const auto& c : results)
    if (!c.pass) ++failed;
  std::cout << "----\n"
            << results.size() - failed << "/" << results.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
