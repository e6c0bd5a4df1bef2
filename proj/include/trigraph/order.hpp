#ifndef TRIGRAPH_ORDER_HPP
#define TRIGRAPH_ORDER_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <variant>
#include <vector>

#include "trigraph/graph.hpp"

namespace trigraph {

/// Kinds of total node orderings. ByDegree breaks degree ties by node ID.
/// ByRandom is a seeded Fisher-Yates permutation (mt19937_64, modulo draw)
/// so runs are reproducible. ByCoreness sorts by (core number, degree, ID).
struct OrderKind {
  enum class Tag { ById, ByDegree, ByRandom, ByCoreness };
  Tag tag = Tag::ByDegree;
  std::uint64_t seed = 0;

  static OrderKind by_id() { return {Tag::ById, 0}; }
  static OrderKind by_degree() { return {Tag::ByDegree, 0}; }
  static OrderKind by_random(std::uint64_t seed) { return {Tag::ByRandom, seed}; }
  static OrderKind by_coreness() { return {Tag::ByCoreness, 0}; }
};

/// A total order over nodes as a rank array: u precedes v iff
/// rank[u] < rank[v]. rank is a permutation of [0, n).
struct OrderRank {
  std::vector<NodeId> rank;

  bool precedes(NodeId u, NodeId v) const { return rank[u] < rank[v]; }
};

/// Core numbers via the standard peeling decomposition: core[v] is the
/// largest k such that v belongs to a subgraph of minimum degree k.
inline std::vector<std::size_t> coreness(const Graph& g) {
  const std::size_t n = g.num_nodes();
  std::vector<std::size_t> deg(n), core(n, 0);
  std::size_t max_deg = 0;
  for (NodeId v = 0; v < n; ++v) {
    deg[v] = g.degree(v);
    max_deg = std::max(max_deg, deg[v]);
  }

  // Bucket sort nodes by degree.
  std::vector<std::size_t> bin(max_deg + 2, 0);
  for (NodeId v = 0; v < n; ++v) ++bin[deg[v] + 1];
  for (std::size_t d = 0; d <= max_deg; ++d) bin[d + 1] += bin[d];
  std::vector<NodeId> order(n);
  std::vector<std::size_t> pos(n);
  {
    std::vector<std::size_t> next = bin;
    for (NodeId v = 0; v < n; ++v) {
      pos[v] = next[deg[v]]++;
      order[pos[v]] = v;
    }
  }

  std::vector<std::size_t> start(bin.begin(), bin.end() - 1);
  for (std::size_t i = 0; i < n; ++i) {
    NodeId v = order[i];
    core[v] = deg[v];
    for (NodeId u : g.neighbors(v)) {
      if (deg[u] > deg[v]) {
        // Move u to the front of its degree bucket, then decrement.
        std::size_t du = deg[u];
        std::size_t pu = pos[u];
        std::size_t pw = start[du];
        NodeId w = order[pw];
        if (u != w) {
          std::swap(order[pu], order[pw]);
          std::swap(pos[u], pos[w]);
        }
        ++start[du];
        --deg[u];
      }
    }
  }
  return core;
}

inline OrderRank compute_order(const Graph& g, OrderKind kind) {
  const std::size_t n = g.num_nodes();
  OrderRank out;
  out.rank.resize(n);

  switch (kind.tag) {
    case OrderKind::Tag::ById: {
      std::iota(out.rank.begin(), out.rank.end(), NodeId{0});
      break;
    }
    case OrderKind::Tag::ByDegree: {
      std::vector<NodeId> nodes(n);
      std::iota(nodes.begin(), nodes.end(), NodeId{0});
      std::sort(nodes.begin(), nodes.end(), [&](NodeId a, NodeId b) {
        if (g.degree(a) != g.degree(b)) return g.degree(a) < g.degree(b);
        return a < b;
      });
      for (std::size_t i = 0; i < n; ++i) out.rank[nodes[i]] = static_cast<NodeId>(i);
      break;
    }
    case OrderKind::Tag::ByRandom: {
      std::vector<NodeId> nodes(n);
      std::iota(nodes.begin(), nodes.end(), NodeId{0});
      std::mt19937_64 rng(kind.seed);
      for (std::size_t i = n; i > 1; --i)
        std::swap(nodes[i - 1], nodes[rng() % i]);
      for (std::size_t i = 0; i < n; ++i) out.rank[nodes[i]] = static_cast<NodeId>(i);
      break;
    }
    case OrderKind::Tag::ByCoreness: {
      auto core = coreness(g);
      std::vector<NodeId> nodes(n);
      std::iota(nodes.begin(), nodes.end(), NodeId{0});
      std::sort(nodes.begin(), nodes.end(), [&](NodeId a, NodeId b) {
        if (core[a] != core[b]) return core[a] < core[b];
        if (g.degree(a) != g.degree(b)) return g.degree(a) < g.degree(b);
        return a < b;
      });
      for (std::size_t i = 0; i < n; ++i) out.rank[nodes[i]] = static_cast<NodeId>(i);
      break;
    }
  }
  return out;
}

}  // namespace trigraph

#endif  // TRIGRAPH_ORDER_HPP
