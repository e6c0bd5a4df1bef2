#ifndef TRIGRAPH_SEQUENTIAL_HPP
#define TRIGRAPH_SEQUENTIAL_HPP

#include <array>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "trigraph/effective.hpp"
#include "trigraph/graph.hpp"
#include "trigraph/intersect.hpp"
#include "trigraph/order.hpp"

namespace trigraph {

/// Sinks consume one (v, u, w) triple per distinct triangle. Any callable
/// with that shape works; the ones below cover the common uses.
struct NullSink {
  void operator()(NodeId, NodeId, NodeId) const {}
};

/// Per-node tally T_v: each triangle increments all three corners.
struct NodeTallySink {
  std::vector<std::uint64_t> counts;

  explicit NodeTallySink(std::size_t n) : counts(n, 0) {}
  void operator()(NodeId v, NodeId u, NodeId w) {
    ++counts[v];
    ++counts[u];
    ++counts[w];
  }
};

/// Collects triples normalized to ascending node IDs.
struct ListSink {
  std::vector<std::array<NodeId, 3>> triangles;

  void operator()(NodeId v, NodeId u, NodeId w) {
    std::array<NodeId, 3> t{v, u, w};
    if (t[0] > t[1]) std::swap(t[0], t[1]);
    if (t[1] > t[2]) std::swap(t[1], t[2]);
    if (t[0] > t[1]) std::swap(t[0], t[1]);
    triangles.push_back(t);
  }
};

/// NodeIterator++: for each node v, each ordered neighbor pair (u, w)
/// with v < u < w in the total order, tests membership of (u, w).
/// By default membership uses binary search in the sorted adjacency;
/// use_intersection switches to the set-intersection variant.
inline std::uint64_t count_node_iterator_pp(const Graph& g, const OrderRank& order,
                                            bool use_intersection = false) {
  std::uint64_t total = 0;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    for (NodeId u : g.neighbors(v)) {
      if (!order.precedes(v, u)) continue;
      if (use_intersection) {
        intersect_visit(g.neighbors(v), g.neighbors(u), [&](NodeId w) {
          if (order.precedes(u, w)) ++total;
        });
      } else {
        for (NodeId w : g.neighbors(v)) {
          if (order.precedes(u, w) && g.has_edge(u, w)) ++total;
        }
      }
    }
  }
  return total;
}

/// NodeIteratorN: for each v and each u in N_v, every w in N_v cap N_u
/// closes a triangle (v, u, w); each triangle is found exactly once.
template <class Sink>
std::uint64_t count_node_iterator_n(const EffectiveAdjacency& eff, Sink&& sink) {
  std::uint64_t total = 0;
  for (NodeId v = 0; v < eff.num_nodes(); ++v) {
    for (NodeId u : eff.eff(v)) {
      intersect_visit(eff.eff(v), eff.eff(u), [&](NodeId w) {
        ++total;
        sink(v, u, w);
      });
    }
  }
  return total;
}

inline std::uint64_t count_node_iterator_n(const EffectiveAdjacency& eff) {
  NullSink sink;
  return count_node_iterator_n(eff, sink);
}

/// The runtime shape of NodeIteratorN under a given order: sum over
/// nodes of d_v * effective degree.
inline std::uint64_t ordering_cost(const Graph& g, const OrderRank& order) {
  std::uint64_t cost = 0;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    std::uint64_t effdeg = 0;
    for (NodeId u : g.neighbors(v))
      if (order.precedes(v, u)) ++effdeg;
    cost += static_cast<std::uint64_t>(g.degree(v)) * effdeg;
  }
  return cost;
}

/// t_e for every edge: the number of triangles containing it.
/// Sum over edges equals 3T.
inline std::map<std::pair<NodeId, NodeId>, std::uint64_t>
per_edge_triangle_counts(const Graph& g, const EffectiveAdjacency& eff) {
  std::map<std::pair<NodeId, NodeId>, std::uint64_t> te;
  for (auto [u, v] : g.edges()) te[{u, v}] = 0;
  auto bump = [&](NodeId a, NodeId b) {
    if (a > b) std::swap(a, b);
    ++te[{a, b}];
  };
  count_node_iterator_n(eff, [&](NodeId v, NodeId u, NodeId w) {
    bump(v, u);
    bump(v, w);
    bump(u, w);
  });
  return te;
}

}  // namespace trigraph

#endif  // TRIGRAPH_SEQUENTIAL_HPP
