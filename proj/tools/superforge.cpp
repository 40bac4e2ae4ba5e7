// superforge: exact construction and verification of Cartan-type Lie
// superalgebras W(n), S(n) and their generators-and-relations presentations.

#include <CLI11.hpp>

#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "superforge/json_io.hpp"
#include "superforge/log.hpp"
#include "superforge/presented.hpp"
#include "superforge/verify.hpp"

using namespace superforge;

namespace {

struct GlobalOpts {
  std::string format = "json";
  std::string out_path;
  int depth = 0;
  std::uint64_t seed = 0;
  int jobs = 1;
  bool emit_structure_constants = false;
};

void write_output(const GlobalOpts& g, const std::string& payload) {
  if (g.out_path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream out(g.out_path, std::ios::binary);
  if (!out) throw error(errc::semantic_error, "cannot open output file " + g.out_path);
  out << payload;
}

std::string slurp_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error(errc::semantic_error, "cannot read file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int cmd_parse(const GlobalOpts& g, const std::string& file) {
  DynkinDiagram d = parse_diagram(slurp_file(file));
  CartanData c = cartan_from_diagram(d);
  if (g.format == "text") {
    std::ostringstream os;
    os << "series " << series_char(c.series) << " rank " << c.rank << "\n";
    os << emit_diagram(d);
    write_output(g, os.str());
  } else {
    write_output(g, cartan_to_json(c).dump(2) + "\n");
  }
  return 0;
}

// Parses "<kind> <n>" or "<kind> <series> <rank>".
struct BuildSpec {
  std::string kind;
  bool concrete = false;
  int n = 0;
  Series series = Series::A;
  int rank = 0;
};

BuildSpec parse_build_args(const std::vector<std::string>& args) {
  if (args.size() < 2) throw error(errc::semantic_error, "build needs a kind and a size");
  BuildSpec spec;
  spec.kind = args[0];
  if (spec.kind == "W" || spec.kind == "S" || spec.kind == "A-sub") {
    if (args.size() != 2) throw error(errc::semantic_error, "usage: build " + spec.kind + " <n>");
    spec.concrete = true;
    spec.n = std::stoi(args[1]);
    return spec;
  }
  if (spec.kind == "borcherds-presented" || spec.kind == "tha-presented") {
    if (args.size() != 3)
      throw error(errc::semantic_error, "usage: build " + spec.kind + " <series> <rank>");
    if (args[1].size() != 1) throw error(errc::unsupported_series, args[1]);
    spec.series = series_from_char(args[1][0]);
    spec.rank = std::stoi(args[2]);
    return spec;
  }
  throw error(errc::semantic_error, "unknown build kind " + spec.kind);
}

int cmd_build(const GlobalOpts& g, const std::vector<std::string>& args) {
  BuildSpec spec = parse_build_args(args);
  GradedSuperalgebra alg;
  bool truncated = false;
  if (spec.kind == "W") {
    alg = build_W(spec.n).algebra;
  } else if (spec.kind == "S") {
    alg = build_S(spec.n).algebra;
  } else if (spec.kind == "A-sub") {
    alg = build_A_sub(spec.n).algebra;
  } else {
    int depth = g.depth;
    if (depth <= 0) {
      if (spec.series != Series::A)
        throw error(errc::semantic_error, "--depth is required for the D and E series");
      depth = spec.rank + 2;
    }
    CartanData c = cartan_from_series(spec.series, spec.rank);
    AlphabetMode mode = spec.kind == "tha-presented" ? AlphabetMode::tha : AlphabetMode::borcherds;
    log::info("building presented side for " + std::string(1, series_char(spec.series)) +
              std::to_string(spec.rank));
    PresentedSide side = build_presented_side(c, mode, depth + 6);
    if (!side.minus.stabilized)
      throw error(errc::bound_too_small, "level -1 module did not stabilize at this depth");
    Prolongation p = minimal_prolongation(side.local, depth, spec.kind);
    alg = p.assembled;
    alg.name = spec.kind + "(" + std::string(1, series_char(spec.series)) +
               std::to_string(spec.rank) + ")";
    truncated = p.truncated;
  }
  // internal consistency gate: exit 1 when the bracket tables violate Jacobi
  if (!truncated) {
    JacobiReport jr = alg.total_dim() <= 32
                          ? check_super_jacobi(alg, JacobiMode::exhaustive)
                          : check_super_jacobi(alg, JacobiMode::sampled, 5000, g.seed);
    if (!jr.ok()) {
      std::cerr << "internal consistency failure: super-Jacobi violated\n";
      return 1;
    }
  }
  if (g.format == "csv") {
    write_output(g, dims_to_csv(alg));
  } else if (g.format == "text") {
    std::ostringstream os;
    os << alg.name << (truncated ? " (truncated at --depth)" : "") << "\n";
    os << "level  dimension\n";
    for (int l : alg.levels) os << "  " << l << "    " << alg.dim(l) << "\n";
    os << "total  " << alg.total_dim() << "\n";
    write_output(g, os.str());
  } else {
    Json j;
    j["config"] = Json{{"command", "build"},
                       {"kind", spec.kind},
                       {"n", spec.concrete ? spec.n : 0},
                       {"series", spec.concrete ? "" : std::string(1, series_char(spec.series))},
                       {"rank", spec.concrete ? 0 : spec.rank},
                       {"depth", g.depth},
                       {"seed", g.seed}};
    j["truncated"] = truncated;
    j["algebra"] = algebra_to_json(alg, g.emit_structure_constants);
    write_output(g, j.dump(2) + "\n");
  }
  return 0;
}

int cmd_verify(const GlobalOpts& g, const std::string& check, std::vector<int> ns,
               const std::string& jacobi_target, const std::string& jacobi_mode,
               std::uint64_t samples) {
  if (ns.empty()) throw error(errc::semantic_error, "verify needs at least one --n");
  auto run_one = [&](int n) -> VerificationReport {
    if (check == "theorem") return verify_theorem(n, g.depth, g.seed);
    if (check == "borcherds") return verify_borcherds_3grading(n, g.seed);
    if (check == "jacobi") {
      JacobiMode mode =
          jacobi_mode == "exhaustive" ? JacobiMode::exhaustive : JacobiMode::sampled;
      return verify_jacobi(jacobi_target, n, mode, samples, g.seed);
    }
    throw error(errc::semantic_error, "unknown verify check " + check);
  };
  std::vector<VerificationReport> reports(ns.size());
  if (g.jobs > 1 && ns.size() > 1) {
    std::vector<std::future<VerificationReport>> futs;
    for (int n : ns)
      futs.push_back(std::async(std::launch::async, [&run_one, n] { return run_one(n); }));
    for (size_t i = 0; i < futs.size(); ++i) reports[i] = futs[i].get();
  } else {
    for (size_t i = 0; i < ns.size(); ++i) reports[i] = run_one(ns[i]);
  }
  std::string payload;
  if (g.format == "json") {
    if (reports.size() == 1) {
      payload = report_to_json(reports[0]).dump(2) + "\n";
    } else {
      Json arr = Json::array();
      for (const auto& r : reports) arr.push_back(report_to_json(r));
      payload = arr.dump(2) + "\n";
    }
  } else if (g.format == "csv") {
    for (const auto& r : reports) payload += report_dims_to_csv(r);
  } else {
    for (const auto& r : reports) payload += report_to_text(r);
  }
  write_output(g, payload);
  for (const auto& r : reports)
    if (!r.ok()) return 1;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact Cartan-type superalgebra workbench"};
  app.require_subcommand(1);
  GlobalOpts g;
  app.add_option("--format", g.format, "output format")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--out", g.out_path, "write output to a file instead of stdout");
  app.add_option("--depth", g.depth, "level depth bound (required for D/E builds)");
  app.add_option("--seed", g.seed, "seed for sampled Jacobi checks");
  app.add_option("--jobs", g.jobs, "parallel verification targets");
  app.add_flag("--emit-structure-constants", g.emit_structure_constants,
               "include the full bracket tables in algebra JSON");

  auto* parse = app.add_subcommand("parse-dynkin", "parse a diagram file, emit Cartan data");
  std::string diagram_file;
  parse->add_option("file", diagram_file, "diagram file")->required();

  auto* build = app.add_subcommand("build", "construct an algebra and print its dimensions");
  std::vector<std::string> build_args;
  build->add_option("args", build_args,
                    "W|S|A-sub <n>  or  borcherds-presented|tha-presented <series> <rank>");

  auto* verify = app.add_subcommand("verify", "run a verification pipeline");
  std::string check;
  std::vector<int> ns;
  std::string jacobi_target = "W";
  std::string jacobi_mode = "exhaustive";
  std::uint64_t samples = 10000;
  verify->add_option("check", check, "theorem|borcherds|jacobi")->required();
  verify->add_option("--n", ns, "n value(s) to verify");
  verify->add_option("--target", jacobi_target, "jacobi target: W|S|A-sub");
  verify->add_option("--mode", jacobi_mode, "jacobi mode: exhaustive|sampled")
      ->check(CLI::IsMember({"exhaustive", "sampled"}));
  verify->add_option("--samples", samples, "sampled jacobi triple count");

  for (auto* sub : {parse, build, verify}) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);
  try {
    if (parse->parsed()) return cmd_parse(g, diagram_file);
    if (build->parsed()) return cmd_build(g, build_args);
    if (verify->parsed())
      return cmd_verify(g, check, ns, jacobi_target, jacobi_mode, samples);
  } catch (const syntax_error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
