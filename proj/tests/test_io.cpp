#include <doctest.h>

#include <queue>

#include "oracles.hpp"
#include "trigraph/effective.hpp"
#include "trigraph/io.hpp"
#include "trigraph/sequential.hpp"

using namespace trigraph;

TEST_CASE("parse_edge_list basics") {
  auto e = parse_edge_list("0 1\n1 2\n");
  REQUIRE(e.size() == 2);
  CHECK(e[0] == std::pair<NodeId, NodeId>{0, 1});
  CHECK(e[1] == std::pair<NodeId, NodeId>{1, 2});

  auto c = parse_edge_list("# comment\n3 4\n");
  REQUIRE(c.size() == 1);
  CHECK(c[0] == std::pair<NodeId, NodeId>{3, 4});

  CHECK(parse_edge_list("").empty());
  CHECK(parse_edge_list("\n  \n# only comments\n").empty());
}

TEST_CASE("parse_edge_list errors carry line numbers") {
  CHECK_THROWS_AS(parse_edge_list("0 x\n"), ParseError);
  try {
    parse_edge_list("0 1\n\n2 y\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 3);
  }
  CHECK_THROWS_AS(parse_edge_list("1 2 3\n"), ParseError);
}

TEST_CASE("edge list round trip") {
  auto g = oracles::g5();
  auto text = write_edge_list(g);
  CHECK(std::count(text.begin(), text.end(), '\n') == 6);
  auto g2 = build_graph(parse_edge_list(text));
  CHECK(g2.num_nodes() == g.num_nodes());
  CHECK(g2.num_edges() == g.num_edges());
  CHECK(write_edge_list(g2) == text);
  CHECK(write_edge_list(build_graph({})).empty());
}

TEST_CASE("gen_gnp edge cases") {
  CHECK(gen_gnp(100, 0, 1).num_edges() == 0);
  auto k6 = gen_gnp(6, 5, 1);
  CHECK(k6.num_edges() == 15);
  CHECK_THROWS_AS(gen_gnp(10, 20, 1), std::invalid_argument);
  auto a = gen_gnp(500, 8, 9);
  auto b = gen_gnp(500, 8, 9);
  CHECK(write_edge_list(a) == write_edge_list(b));
}

TEST_CASE("gen_gnp triangle expectation is d^3/6") {
  // E[T] = C(n,3) q^3 with q = d/(n-1), about d^3/6 for large n.
  const std::size_t n = 5000;
  const double d = 20;
  const int runs = 30;
  double sum = 0, sumsq = 0;
  for (int s = 0; s < runs; ++s) {
    auto g = gen_gnp(n, d, 1000 + s);
    auto eff = effective_adjacency(g, compute_order(g, OrderKind::by_degree()));
    double t = static_cast<double>(count_node_iterator_n(eff));
    sum += t;
    sumsq += t * t;
  }
  double mean = sum / runs;
  double var = (sumsq - runs * mean * mean) / (runs - 1);
  double se = std::sqrt(var / runs);
  const double q = d / static_cast<double>(n - 1);
  double expected = static_cast<double>(n) * (n - 1) * (n - 2) / 6.0 * q * q * q;
  CHECK(std::abs(mean - expected) <= 3 * se + 1e-9);
}

TEST_CASE("gen_pa shape and determinism") {
  auto g = gen_pa(10, 2, 3);
  // Seed clique on 2 nodes (1 edge) plus one edge per arriving node.
  CHECK(g.num_nodes() == 10);
  CHECK(g.num_edges() == doctest::Approx(9).epsilon(0.2));
  CHECK_THROWS_AS(gen_pa(10, 3, 1), std::invalid_argument);
  CHECK_THROWS_AS(gen_pa(2, 4, 1), std::invalid_argument);
  CHECK(write_edge_list(gen_pa(200, 4, 7)) == write_edge_list(gen_pa(200, 4, 7)));
}

TEST_CASE("gen_pa graphs are connected") {
  for (std::uint64_t s = 0; s < 5; ++s) {
    auto g = gen_pa(300, 4, s);
    std::vector<bool> seen(g.num_nodes(), false);
    std::queue<NodeId> q;
    q.push(0);
    seen[0] = true;
    std::size_t visited = 1;
    while (!q.empty()) {
      NodeId v = q.front();
      q.pop();
      for (NodeId u : g.neighbors(v))
        if (!seen[u]) {
          seen[u] = true;
          ++visited;
          q.push(u);
        }
    }
    CHECK(visited == g.num_nodes());
  }
}

TEST_CASE("gen_pa degree distribution is heavy tailed") {
  int hits = 0;
  for (std::uint64_t s = 0; s < 10; ++s) {
    auto g = gen_pa(10000, 10, s);
    std::size_t dmax = 0;
    for (NodeId v = 0; v < g.num_nodes(); ++v) dmax = std::max(dmax, g.degree(v));
    double davg = 2.0 * static_cast<double>(g.num_edges()) /
                  static_cast<double>(g.num_nodes());
    if (static_cast<double>(dmax) >= 5.0 * davg) ++hits;
  }
  CHECK(hits == 10);
}
