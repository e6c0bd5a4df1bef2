#ifndef TRIGRAPH_GRAPH_HPP
#define TRIGRAPH_GRAPH_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace trigraph {

using NodeId = std::uint32_t;

/// Immutable undirected simple graph in CSR form. Neighbor lists are
/// sorted ascending by node ID; self-loops and duplicate edges are not
/// representable.
class Graph {
 public:
  Graph() = default;
  Graph(std::size_t n, std::vector<std::size_t> offsets, std::vector<NodeId> adj)
      : n_(n), offsets_(std::move(offsets)), adj_(std::move(adj)) {}

  std::size_t num_nodes() const { return n_; }
  std::size_t num_edges() const { return adj_.size() / 2; }

  std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }

  std::span<const NodeId> neighbors(NodeId v) const {
    return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
  }

  bool has_edge(NodeId u, NodeId v) const {
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
  }

  /// Undirected edges, one per pair, with u < v.
  std::vector<std::pair<NodeId, NodeId>> edges() const {
    std::vector<std::pair<NodeId, NodeId>> out;
    out.reserve(num_edges());
    for (NodeId u = 0; u < n_; ++u)
      for (NodeId v : neighbors(u))
        if (u < v) out.emplace_back(u, v);
    return out;
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::size_t> offsets_{0};
  std::vector<NodeId> adj_;
};

/// Builds a Graph from a raw edge list. Self-loops are dropped and
/// duplicate edges (in either direction) are merged. n defaults to
/// 1 + max node ID; pass n_override to keep trailing isolated nodes.
inline Graph build_graph(const std::vector<std::pair<NodeId, NodeId>>& edge_pairs,
                         std::size_t n_override = 0) {
  std::size_t n = n_override;
  for (auto [u, v] : edge_pairs) {
    n = std::max<std::size_t>(n, std::size_t{u} + 1);
    n = std::max<std::size_t>(n, std::size_t{v} + 1);
  }

  std::vector<std::pair<NodeId, NodeId>> dir;
  dir.reserve(edge_pairs.size() * 2);
  for (auto [u, v] : edge_pairs) {
    if (u == v) continue;
    dir.emplace_back(u, v);
    dir.emplace_back(v, u);
  }
  std::sort(dir.begin(), dir.end());
  dir.erase(std::unique(dir.begin(), dir.end()), dir.end());

  std::vector<std::size_t> offsets(n + 1, 0);
  for (auto [u, v] : dir) ++offsets[u + 1];
  for (std::size_t i = 0; i < n; ++i) offsets[i + 1] += offsets[i];

  std::vector<NodeId> adj;
  adj.reserve(dir.size());
  for (auto [u, v] : dir) adj.push_back(v);

  return Graph(n, std::move(offsets), std::move(adj));
}

}  // namespace trigraph

#endif  // TRIGRAPH_GRAPH_HPP
