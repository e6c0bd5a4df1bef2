#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "trigraph/partition.hpp"

using namespace trigraph;

namespace {

CostVector costs_of(const std::vector<std::uint64_t>& f) {
  CostVector out;
  out.f = f;
  out.prefix.resize(f.size());
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    acc += f[i];
    out.prefix[i] = acc;
  }
  return out;
}

std::uint64_t cost_before(const CostVector& c, NodeId x) {
  return x == 0 ? 0 : c.prefix[x - 1];
}

}  // namespace

TEST_CASE("node costs on G5") {
  auto g = oracles::g5();
  auto eff = effective_adjacency(g, compute_order(g, OrderKind::by_degree()));

  auto n = node_costs(g, eff, CostKind::N);
  CHECK(n.f == std::vector<std::uint64_t>{1, 1, 1, 1, 1});
  CHECK(n.prefix[4] == 5);

  CHECK(node_costs(g, eff, CostKind::D).f == std::vector<std::uint64_t>{2, 3, 3, 3, 1});
  CHECK(node_costs(g, eff, CostKind::Dh).f == std::vector<std::uint64_t>{2, 2, 1, 0, 1});
  CHECK(node_costs(g, eff, CostKind::Ddh).f == std::vector<std::uint64_t>{4, 6, 3, 0, 1});
  CHECK(node_costs(g, eff, CostKind::Dh2).f == std::vector<std::uint64_t>{4, 4, 1, 0, 1});
  CHECK(node_costs(g, eff, CostKind::Dpd).f == std::vector<std::uint64_t>{7, 5, 1, 0, 1});
  CHECK(node_costs(g, eff, CostKind::Nov).f == std::vector<std::uint64_t>{0, 4, 6, 4, 0});
}

TEST_CASE("boundary examples") {
  auto p1 = compute_boundaries(costs_of({1, 1, 1, 1}), 2);
  CHECK(p1.boundaries == std::vector<NodeId>{0, 2, 4});
  CHECK(p1.core_begin(0) == 0);
  CHECK(p1.core_end(0) == 2);

  CHECK(compute_boundaries(costs_of({10, 1, 1}), 2).boundaries ==
        std::vector<NodeId>{0, 1, 3});

  auto p3 = compute_boundaries(costs_of({5, 5, 5}), 1);
  CHECK(p3.boundaries == std::vector<NodeId>{0, 3});

  CHECK_THROWS_AS(compute_boundaries(costs_of({1}), 0), std::invalid_argument);
}

TEST_CASE("empty core sets are legal") {
  // One heavy node swallows everything; later cores are empty.
  auto plan = compute_boundaries(costs_of({100, 1, 1}), 4);
  CHECK(plan.boundaries.size() == 5);
  CHECK(plan.boundaries.front() == 0);
  CHECK(plan.boundaries.back() == 3);
  std::size_t empties = 0;
  for (std::size_t i = 0; i < 4; ++i)
    if (plan.core_begin(i) == plan.core_end(i)) ++empties;
  CHECK(empties >= 1);
}

TEST_CASE("boundary invariant holds on random cost vectors") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 200; ++t) {
    std::size_t n = 1 + rng() % 60;
    std::vector<std::uint64_t> f(n);
    for (auto& x : f) x = rng() % 20;
    auto costs = costs_of(f);
    const std::uint64_t total = costs.total();
    for (std::size_t p : {1, 2, 3, 4, 8, 16}) {
      auto plan = compute_boundaries(costs, p);
      REQUIRE(plan.boundaries.size() == p + 1);
      CHECK(plan.boundaries.front() == 0);
      CHECK(plan.boundaries.back() == n);
      CHECK(std::is_sorted(plan.boundaries.begin(), plan.boundaries.end()));
      for (std::size_t j = 1; j < p; ++j) {
        NodeId xj = plan.boundaries[j];
        // Smallest node with p * costBefore >= j * total.
        CHECK(p * cost_before(costs, xj) >= j * total);
        if (xj > 0) CHECK(p * cost_before(costs, xj - 1) < j * total);
      }
    }
  }
}

TEST_CASE("owner maps every node to its core rank") {
  PartitionPlan plan{{0, 2, 2, 5, 7}};
  CHECK(plan.ranks() == 4);
  CHECK(plan.owner(0) == 0);
  CHECK(plan.owner(1) == 0);
  CHECK(plan.owner(2) == 2);
  CHECK(plan.owner(4) == 2);
  CHECK(plan.owner(5) == 3);
  CHECK(plan.owner(6) == 3);
  for (NodeId v = 0; v < 7; ++v) CHECK(plan.in_core(plan.owner(v), v));
}

TEST_CASE("overlap partition on G5 with plan [0,2,5]") {
  auto g = oracles::g5();
  auto eff = effective_adjacency(g, compute_order(g, OrderKind::by_degree()));
  PartitionPlan plan{{0, 2, 5}};

  auto p0 = build_overlap_partition(g, eff, plan, 0);
  CHECK(p0.core_begin == 0);
  CHECK(p0.core_end == 2);
  CHECK(p0.core_lists[0] == std::vector<NodeId>{1, 2});
  CHECK(p0.core_lists[1] == std::vector<NodeId>{2, 3});
  CHECK(p0.halo_nodes == std::vector<NodeId>{2, 3});
  CHECK(std::vector<NodeId>(p0.list(2).begin(), p0.list(2).end()) ==
        std::vector<NodeId>{3});
  CHECK(p0.list(3).empty());
  CHECK(p0.list(4).empty());

  auto p1 = build_overlap_partition(g, eff, plan, 1);
  CHECK(p1.halo_nodes.empty());
  CHECK(p1.stored_entries() == 2);
}

TEST_CASE("overlap partition with p=1 holds the full effective adjacency") {
  auto g = oracles::random_graph(30, 0.3, 2);
  auto eff = effective_adjacency(g, compute_order(g, OrderKind::by_degree()));
  auto plan = compute_boundaries(node_costs(g, eff, CostKind::N), 1);
  auto part = build_overlap_partition(g, eff, plan, 0);
  CHECK(part.halo_nodes.empty());
  CHECK(part.stored_entries() == eff.total_entries());
}

TEST_CASE("non-overlapping partitions store every entry exactly once") {
  auto g = oracles::g5();
  auto eff = effective_adjacency(g, compute_order(g, OrderKind::by_degree()));
  PartitionPlan plan{{0, 2, 5}};
  auto p0 = build_nonoverlap_partition(g, eff, plan, 0);
  auto p1 = build_nonoverlap_partition(g, eff, plan, 1);
  CHECK(p1.core_lists[0] == std::vector<NodeId>{3});
  CHECK(p1.core_lists[1].empty());
  CHECK(p1.core_lists[2] == std::vector<NodeId>{3});
  CHECK(p1.stored_entries() == 2);
  CHECK(p0.stored_entries() + p1.stored_entries() == g.num_edges());

  auto rnd = oracles::random_graph(50, 0.25, 8);
  auto reff = effective_adjacency(rnd, compute_order(rnd, OrderKind::by_degree()));
  for (std::size_t p : {2, 3, 7}) {
    auto rplan = compute_boundaries(node_costs(rnd, reff, CostKind::Dpd), p);
    std::size_t sum = 0;
    for (std::size_t i = 0; i < p; ++i)
      sum += build_nonoverlap_partition(rnd, reff, rplan, i).stored_entries();
    CHECK(sum == rnd.num_edges());
  }
}
