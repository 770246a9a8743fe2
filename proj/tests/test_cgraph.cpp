#include <doctest.h>

#include "obtf/cgraph.hpp"
#include "obtf/error.hpp"

using namespace obtf;

namespace {

constexpr EdgeColor R = EdgeColor::kRed;
constexpr EdgeColor B = EdgeColor::kBlue;

ColoredGraph graph(int n, std::initializer_list<Edge> edges) {
  ColoredGraph g(n);
  for (const Edge& e : edges) g.set_color(e.u, e.v, e.color);
  return g;
}

std::uint64_t graph_count(int n) {
  std::uint64_t c = 1;
  for (int k = 0; k < pair_count(n); ++k) c *= 3;
  return c;
}

// Tries all 2^n sides.
bool brute_force_bb(const ColoredGraph& g) {
  for (std::uint32_t mask = 0; mask < (1U << g.n()); ++mask) {
    Bipartition b;
    for (int v = 0; v < g.n(); ++v) b.side.push_back((mask >> v) & 1U ? Side::kW : Side::kU);
    if (is_witness(g, b)) return true;
  }
  return false;
}

const ColoredGraph kOddTriangle = graph(3, {{0, 1, R}, {1, 2, R}, {0, 2, B}});
const ColoredGraph kFourCycle = graph(4, {{0, 1, B}, {1, 2, R}, {2, 3, R}, {0, 3, R}});

}  // namespace

TEST_CASE("pair ranks follow colex order") {
  int k = 0;
  for (int v = 1; v < 6; ++v) {
    for (int u = 0; u < v; ++u) {
      CHECK(pair_rank(u, v) == k);
      CHECK(pair_at(k).u == u);
      CHECK(pair_at(k).v == v);
      ++k;
    }
  }
}

TEST_CASE("graph codes round trip") {
  for (std::uint64_t code = 0; code < graph_count(4); ++code) {
    CHECK(ColoredGraph::from_code(4, code).code() == code);
  }
}

TEST_CASE("odd-blue triangles") {
  CHECK_FALSE(is_obtf(kOddTriangle));
  CHECK(is_obtf(graph(3, {{0, 1, B}, {1, 2, B}, {0, 2, R}})));
  CHECK_FALSE(is_obtf(graph(3, {{0, 1, B}, {1, 2, B}, {0, 2, B}})));
  CHECK(is_obtf(kFourCycle));
}

TEST_CASE("blue bipartitions") {
  const auto one = find_blue_bipartition(graph(2, {{0, 1, B}}));
  REQUIRE(one);
  CHECK(one->side[0] == Side::kU);
  CHECK(one->side[1] == Side::kW);
  CHECK_FALSE(find_blue_bipartition(kFourCycle));
  const auto empty = find_blue_bipartition(ColoredGraph(4));
  REQUIRE(empty);
  for (Side s : empty->side) CHECK(s == Side::kU);
}

TEST_CASE("propagation agrees with a sweep of all bipartitions") {
  for (int n = 1; n <= 4; ++n) {
    for (std::uint64_t code = 0; code < graph_count(n); ++code) {
      const ColoredGraph g = ColoredGraph::from_code(n, code);
      const auto found = find_blue_bipartition(g);
      CHECK(found.has_value() == brute_force_bb(g));
      if (found) CHECK(is_witness(g, *found));
    }
  }
  // n = 5 and 6 on a deterministic sample.
  for (int n = 5; n <= 6; ++n) {
    for (std::uint64_t code = 0; code < graph_count(n); code += 7919) {
      const ColoredGraph g = ColoredGraph::from_code(n, code);
      CHECK(is_blue_bipartite(g) == brute_force_bb(g));
    }
  }
}

TEST_CASE("kappa and gamma") {
  CHECK(kappa(kFourCycle).size == 1);
  CHECK(gamma(kFourCycle).size == 1);
  CHECK(gamma(kFourCycle).edges == std::vector<Edge>{{0, 1, B}});
  CHECK(kappa(kOddTriangle).size == 1);
  CHECK(gamma(kOddTriangle).size == 1);
  CHECK(kappa(graph(2, {{0, 1, B}})).size == 0);
  CHECK(gamma(ColoredGraph(3)).size == 0);
  CHECK_THROWS_AS(kappa(ColoredGraph(13)), ResourceError);
}

TEST_CASE("kappa, gamma and the bipartition agree on zero") {
  for (std::uint64_t code = 0; code < graph_count(4); ++code) {
    const ColoredGraph g = ColoredGraph::from_code(4, code);
    const bool bb = is_blue_bipartite(g);
    CHECK((kappa(g).size == 0) == bb);
    CHECK((gamma(g).size == 0) == bb);
    CHECK(is_blue_bipartite(g.without_vertices([&] {
      std::uint32_t m = 0;
      for (int v : kappa(g).vertices) m |= 1U << v;
      return m;
    }())));
  }
}

TEST_CASE("triangle components") {
  const ColoredGraph triangle = graph(3, {{0, 1, R}, {1, 2, B}, {0, 2, B}});
  CHECK(eta(triangle) == 1);
  CHECK(triangle_components(triangle).classes[0].size() == 3);
  CHECK(is_triangle_connected(triangle));

  const ColoredGraph bowtie =
      graph(5, {{0, 1, R}, {1, 2, R}, {0, 2, R}, {2, 3, R}, {3, 4, R}, {2, 4, R}});
  CHECK(eta(bowtie) == 2);
  CHECK_FALSE(is_triangle_connected(bowtie));

  CHECK(eta(graph(2, {{0, 1, B}})) == 1);
  CHECK(eta(ColoredGraph(3)) == 0);
  CHECK(is_triangle_connected(ColoredGraph(3)));
  CHECK(eta(kFourCycle) == 4);
}

TEST_CASE("graph of a poset") {
  LiteralPoset red(2);
  red.add(Literal::from_signed(-1), Literal::from_signed(2));
  red.add(Literal::from_signed(-2), Literal::from_signed(1));
  CHECK(graph_of_poset(red) == graph(2, {{0, 1, R}}));
  LiteralPoset blue(2);
  blue.add(Literal::from_signed(1), Literal::from_signed(2));
  blue.add(Literal::from_signed(-2), Literal::from_signed(-1));
  CHECK(graph_of_poset(blue) == graph(2, {{0, 1, B}}));
  CHECK(graph_of_poset(LiteralPoset(3)) == ColoredGraph(3));
}

TEST_CASE("double cover") {
  const CoverGraph blue = double_cover(graph(2, {{0, 1, B}}));
  CHECK(blue.edge_count() == 2);
  CHECK(blue.has_edge(0, 2));
  CHECK(blue.has_edge(1, 3));
  const CoverGraph red = double_cover(graph(2, {{0, 1, R}}));
  CHECK(red.has_edge(0, 3));
  CHECK(red.has_edge(1, 2));
  CHECK(double_cover(ColoredGraph(3)).edge_count() == 0);
  CHECK(double_cover(kFourCycle).edge_count() == 8);
}

TEST_CASE("posets of a graph") {
  CHECK(posets_of_graph(graph(2, {{0, 1, B}})).size() == 2);
  CHECK(posets_of_graph(kOddTriangle).empty());
  const auto antichain = posets_of_graph(ColoredGraph(3));
  REQUIRE(antichain.size() == 1);
  CHECK(antichain[0] == LiteralPoset(3));
  for (const LiteralPoset& p : posets_of_graph(kFourCycle)) CHECK(graph_of_poset(p) == kFourCycle);
}

TEST_CASE("every poset maps back to its graph") {
  for (std::uint64_t code = 0; code < graph_count(3); ++code) {
    const ColoredGraph g = ColoredGraph::from_code(3, code);
    for (const LiteralPoset& p : posets_of_graph(g)) {
      CHECK(is_pn_member(p));
      CHECK(graph_of_poset(p) == g);
    }
  }
}

TEST_CASE("closed walks") {
  CHECK(check_closed_walks(ColoredGraph(4)));
  CHECK(check_closed_walks(graph(3, {{0, 1, B}, {1, 2, B}, {0, 2, R}})));
  CHECK(check_closed_walks(kFourCycle));
  CHECK_THROWS_AS(check_closed_walks(kOddTriangle), DomainError);
  // On a non-OBTF triangle the walk search does find a witness.
  CHECK(find_odd_nonsimple_closed_walk(kOddTriangle).has_value());
}

TEST_CASE("graph text round trip") {
  const ColoredGraph g = parse_graph("n 4\n# cycle\n1 2 B\n2 3 R\n3 4 R\n1 4 R\n");
  CHECK(g == kFourCycle);
  CHECK(parse_graph(format_graph(g)) == g);
  CHECK_THROWS_AS(parse_graph("n 3\n1 1 R\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("n 3\n1 4 R\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("n 3\n1 2 G\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("n 3\n1 2 R\n2 1 B\n"), ParseError);
}
