#ifndef TRIGRAPH_EFFECTIVE_HPP
#define TRIGRAPH_EFFECTIVE_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "trigraph/graph.hpp"
#include "trigraph/order.hpp"

namespace trigraph {

/// Per-node effective adjacency N_v: the neighbors u of v with v
/// preceding u in the total order. Each list is kept sorted by node ID,
/// not by the order, so that a contiguous ID range of a partition's
/// core set occupies consecutive positions in any N_v.
class EffectiveAdjacency {
 public:
  EffectiveAdjacency() = default;
  EffectiveAdjacency(std::vector<std::size_t> offsets, std::vector<NodeId> eff)
      : offsets_(std::move(offsets)), eff_(std::move(eff)) {}

  std::size_t num_nodes() const { return offsets_.size() - 1; }
  std::size_t total_entries() const { return eff_.size(); }

  std::span<const NodeId> eff(NodeId v) const {
    return {eff_.data() + offsets_[v], eff_.data() + offsets_[v + 1]};
  }

  std::size_t effdeg(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }

 private:
  std::vector<std::size_t> offsets_{0};
  std::vector<NodeId> eff_;
};

inline EffectiveAdjacency effective_adjacency(const Graph& g, const OrderRank& order) {
  const std::size_t n = g.num_nodes();
  std::vector<std::size_t> offsets(n + 1, 0);
  for (NodeId v = 0; v < n; ++v)
    for (NodeId u : g.neighbors(v))
      if (order.precedes(v, u)) ++offsets[v + 1];
  for (std::size_t i = 0; i < n; ++i) offsets[i + 1] += offsets[i];

  std::vector<NodeId> eff;
  eff.reserve(offsets[n]);
  for (NodeId v = 0; v < n; ++v)
    for (NodeId u : g.neighbors(v))  // already ID-sorted
      if (order.precedes(v, u)) eff.push_back(u);

  return EffectiveAdjacency(std::move(offsets), std::move(eff));
}

}  // namespace trigraph

#endif  // TRIGRAPH_EFFECTIVE_HPP
