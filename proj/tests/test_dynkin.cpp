#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>
#include <string>

#include "superforge/dynkin.hpp"

using namespace superforge;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(SF_GOLDEN_DIR) + "/" + name);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("smallest legal input parses") {
  DynkinDiagram d = parse_diagram("node 0 gray; node 1 white; edge 0 1");
  CHECK(d.nodes.size() == 2);
  CHECK(d.edges.size() == 1);
  CHECK(d.has_gray());
}

TEST_CASE("figure input: three nodes, chain 0-1-2, paper Cartan matrix") {
  DynkinDiagram d = parse_diagram(slurp("fig1.dynkin"));
  CHECK(d.nodes.size() == 3);
  REQUIRE(d.edges.size() == 2);
  CHECK(d.edges[0] == std::make_pair(0, 1));
  CHECK(d.edges[1] == std::make_pair(1, 2));
  CartanData c = cartan_from_diagram(d);
  CHECK(c.series == Series::A);
  CHECK(c.rank == 2);
  std::vector<std::vector<int>> expect{{0, -1, 0}, {-1, 2, -1}, {0, -1, 2}};
  CHECK(c.B == expect);
}

TEST_CASE("semantic errors: gray placement, duplicates, dangling edges") {
  CHECK_THROWS_AS(parse_diagram(slurp("bad_twogray.dynkin")), error);
  CHECK_THROWS_AS(parse_diagram(slurp("bad_dangling.dynkin")), error);
  CHECK_THROWS_AS(parse_diagram("node 0 gray; node 1 white; node 2 white; edge 0 1; edge 0 2"),
                  error);  // gray attached twice
  CHECK_THROWS_AS(parse_diagram("node 0 gray; node 2 white; edge 0 2"), error);  // ids not 1..r
  CHECK_THROWS_AS(parse_diagram("node 0 gray; node 0 white"), error);            // duplicate id
  CHECK_THROWS_AS(parse_diagram("node 1 white; edge 1 1"), error);               // self loop
}

TEST_CASE("syntax errors carry line and column") {
  try {
    parse_diagram(slurp("bad_syntax.dynkin"));
    FAIL("expected syntax error");
  } catch (const syntax_error& e) {
    CHECK(e.line() == 2);
    CHECK(e.col() == 6);
  }
  CHECK_THROWS_AS(parse_diagram(slurp("bad_empty.dynkin")), syntax_error);
}

TEST_CASE("golden round trips: parse -> emit is canonical, emit -> parse is a fixed point") {
  for (std::string name : {"a1", "a2", "a3", "a4", "a5", "a6", "a7", "a8", "d3", "d4", "d5",
                           "e6", "e7", "e8"}) {
    DynkinDiagram d = parse_diagram(slurp(name + ".dynkin"));
    std::string canon = emit_diagram(d);
    CHECK(canon == slurp(name + ".norm"));
    DynkinDiagram d2 = parse_diagram(canon);
    CHECK(emit_diagram(d2) == canon);
    CHECK(d2.nodes == d.nodes);
    CHECK(d2.edges == d.edges);
  }
}

TEST_CASE("series diagrams match their golden parse") {
  CHECK(emit_diagram(diagram_from_series(Series::A, 2)) == slurp("a2.norm"));
  CHECK(emit_diagram(diagram_from_series(Series::D, 4)) == slurp("d4.norm"));
  CHECK(emit_diagram(diagram_from_series(Series::E, 7)) == slurp("e7.norm"));
}

TEST_CASE("cartan_from_series: paper matrix for A_2, specialization to A_1") {
  CartanData a2 = cartan_from_series(Series::A, 2);
  std::vector<std::vector<int>> expect{{0, -1, 0}, {-1, 2, -1}, {0, -1, 2}};
  CHECK(a2.B == expect);
  CHECK(a2.A == std::vector<std::vector<int>>{{2, -1}, {-1, 2}});

  CartanData a1 = cartan_from_series(Series::A, 1);
  CHECK(a1.B == std::vector<std::vector<int>>{{0, -1}, {-1, 2}});
  CHECK(a1.nondegenerate_A);
  CHECK(a1.nondegenerate_B);
}

TEST_CASE("D_3 equals A_3 under the node relabelling 1<->2") {
  CartanData d3 = cartan_from_series(Series::D, 3);
  CartanData a3 = cartan_from_series(Series::A, 3);
  // permutation (1 2 3) -> (2 1 3)
  std::vector<int> p{1, 0, 2};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(d3.A[i][j] == a3.A[p[i]][p[j]]);
  CHECK(d3.nondegenerate_A);
}

TEST_CASE("non-degeneracy across the supported ranks; E_9 is degenerate") {
  for (int r = 1; r <= 8; ++r) {
    CartanData c = cartan_from_series(Series::A, r);
    CHECK(c.nondegenerate_A);
    CHECK(c.nondegenerate_B);
  }
  for (int r = 3; r <= 8; ++r) {
    CartanData c = cartan_from_series(Series::D, r);
    CHECK(c.nondegenerate_A);
    CHECK(c.nondegenerate_B);
  }
  for (int r = 6; r <= 8; ++r) {
    CartanData c = cartan_from_series(Series::E, r);
    CHECK(c.nondegenerate_A);
    CHECK(c.nondegenerate_B);
  }
  // the formal E_9 matrix is the affine E_8 one
  CartanData e9 = cartan_from_series(Series::E, 9);
  CHECK_FALSE(e9.nondegenerate_A);
  CHECK(cartan_from_series(Series::E, 10).nondegenerate_A);
}

TEST_CASE("invalid ranks are rejected") {
  CHECK_THROWS_AS(cartan_from_series(Series::A, 0), error);
  CHECK_THROWS_AS(cartan_from_series(Series::D, 2), error);
  CHECK_THROWS_AS(cartan_from_series(Series::E, 5), error);
}

TEST_CASE("cartan extraction classifies golden diagrams") {
  CHECK(cartan_from_diagram(parse_diagram(slurp("d4.dynkin"))).series == Series::D);
  CHECK(cartan_from_diagram(parse_diagram(slurp("e6.dynkin"))).series == Series::E);
  CHECK(cartan_from_diagram(parse_diagram(slurp("a8.dynkin"))).rank == 8);
  // no gray node -> cannot extend
  CHECK_THROWS_AS(cartan_from_diagram(parse_diagram("node 1 white; node 2 white; edge 1 2")),
                  error);
}
