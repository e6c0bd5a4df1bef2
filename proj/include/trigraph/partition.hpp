#ifndef TRIGRAPH_PARTITION_HPP
#define TRIGRAPH_PARTITION_HPP

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "trigraph/effective.hpp"
#include "trigraph/graph.hpp"

namespace trigraph {

/// Per-node cost functions for load balancing. Nov is the cost model for
/// the non-overlapping engine with surrogate communication.
enum class CostKind { N, D, Dh, Ddh, Dh2, Dpd, Nov };

/// Dpd is defined over N_v by default; AllNeighbors switches the sum to
/// the full neighborhood.
enum class DpdVariant { EffectiveOnly, AllNeighbors };

inline const char* to_string(CostKind k) {
  switch (k) {
    case CostKind::N: return "N";
    case CostKind::D: return "D";
    case CostKind::Dh: return "DH";
    case CostKind::Ddh: return "DDH";
    case CostKind::Dh2: return "DH2";
    case CostKind::Dpd: return "DPD";
    case CostKind::Nov: return "NOV";
  }
  return "?";
}

/// Per-node costs f(v) plus inclusive prefix sums F(t).
struct CostVector {
  std::vector<std::uint64_t> f;
  std::vector<std::uint64_t> prefix;  // prefix[t] = sum of f[0..t]

  std::uint64_t total() const { return prefix.empty() ? 0 : prefix.back(); }
};

inline CostVector node_costs(const Graph& g, const EffectiveAdjacency& eff,
                             CostKind kind,
                             DpdVariant variant = DpdVariant::EffectiveOnly) {
  const std::size_t n = g.num_nodes();
  CostVector out;
  out.f.resize(n, 0);
  for (NodeId v = 0; v < n; ++v) {
    const std::uint64_t dv = g.degree(v);
    const std::uint64_t hv = eff.effdeg(v);
    switch (kind) {
      case CostKind::N: out.f[v] = 1; break;
      case CostKind::D: out.f[v] = dv; break;
      case CostKind::Dh: out.f[v] = hv; break;
      case CostKind::Ddh: out.f[v] = dv * hv; break;
      case CostKind::Dh2: out.f[v] = hv * hv; break;
      case CostKind::Dpd: {
        std::uint64_t s = 0;
        if (variant == DpdVariant::EffectiveOnly) {
          for (NodeId u : eff.eff(v)) s += hv + eff.effdeg(u);
        } else {
          for (NodeId u : g.neighbors(v)) s += hv + eff.effdeg(u);
        }
        out.f[v] = s;
        break;
      }
      case CostKind::Nov: {
        // Sum over predecessors u (neighbors with u before v in the order,
        // i.e. v in N_u) of effdeg(v) + effdeg(u).
        std::uint64_t s = 0;
        auto ev = eff.eff(v);
        for (NodeId u : g.neighbors(v)) {
          bool in_eff = std::binary_search(ev.begin(), ev.end(), u);
          if (!in_eff) s += hv + eff.effdeg(u);
        }
        out.f[v] = s;
        break;
      }
    }
  }
  out.prefix.resize(n);
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += out.f[i];
    out.prefix[i] = acc;
  }
  return out;
}

/// p + 1 boundary node IDs; core set i is the half-open range
/// [boundaries[i], boundaries[i+1]).
struct PartitionPlan {
  std::vector<NodeId> boundaries;

  std::size_t ranks() const { return boundaries.size() - 1; }
  NodeId core_begin(std::size_t i) const { return boundaries[i]; }
  NodeId core_end(std::size_t i) const { return boundaries[i + 1]; }
  bool in_core(std::size_t i, NodeId v) const {
    return v >= core_begin(i) && v < core_end(i);
  }

  /// Rank whose core set contains v.
  std::size_t owner(NodeId v) const {
    auto it = std::upper_bound(boundaries.begin() + 1, boundaries.end() - 1, v);
    return static_cast<std::size_t>(it - (boundaries.begin() + 1));
  }
};

/// Prefix-sum partitioning: boundary x_j is the smallest node such that
/// the cost of nodes before it reaches j/p of the total. Comparisons are
/// exact integer arithmetic (p * cost vs j * total), so boundary ties are
/// unambiguous. Empty core sets are legal.
inline PartitionPlan compute_boundaries(const CostVector& costs, std::size_t p) {
  if (p == 0) throw std::invalid_argument("compute_boundaries: p must be >= 1");
  const std::size_t n = costs.f.size();
  const std::uint64_t total = costs.total();

  auto cost_before = [&](NodeId x) -> std::uint64_t {
    return x == 0 ? 0 : costs.prefix[x - 1];
  };

  PartitionPlan plan;
  plan.boundaries.resize(p + 1);
  plan.boundaries[0] = 0;
  for (std::size_t j = 1; j < p; ++j) {
    // Smallest x in [0, n] with p * cost_before(x) >= j * total.
    const unsigned __int128 target = static_cast<unsigned __int128>(j) * total;
    NodeId lo = plan.boundaries[j - 1], hi = static_cast<NodeId>(n);
    while (lo < hi) {
      NodeId mid = lo + (hi - lo) / 2;
      unsigned __int128 lhs = static_cast<unsigned __int128>(p) * cost_before(mid);
      if (lhs >= target) hi = mid; else lo = mid + 1;
    }
    plan.boundaries[j] = lo;
  }
  plan.boundaries[p] = static_cast<NodeId>(n);
  return plan;
}

/// Rank-local state for the overlapping (communication-free) engine:
/// the effective lists of the core nodes plus, for each off-core node
/// reachable from the core, its effective list trimmed to partition
/// members.
struct OverlapPartition {
  std::size_t rank = 0;
  NodeId core_begin = 0, core_end = 0;
  std::vector<std::vector<NodeId>> core_lists;     // N_v for v in core
  std::vector<NodeId> halo_nodes;                  // sorted, outside core
  std::vector<std::vector<NodeId>> halo_lists;     // trimmed N_w

  bool in_core(NodeId v) const { return v >= core_begin && v < core_end; }

  std::span<const NodeId> list(NodeId v) const {
    if (in_core(v)) return core_lists[v - core_begin];
    auto it = std::lower_bound(halo_nodes.begin(), halo_nodes.end(), v);
    if (it == halo_nodes.end() || *it != v) return {};
    return halo_lists[static_cast<std::size_t>(it - halo_nodes.begin())];
  }

  std::size_t stored_entries() const {
    std::size_t s = 0;
    for (const auto& l : core_lists) s += l.size();
    for (const auto& l : halo_lists) s += l.size();
    return s;
  }
};

inline OverlapPartition build_overlap_partition(const Graph& g,
                                                const EffectiveAdjacency& eff,
                                                const PartitionPlan& plan,
                                                std::size_t i) {
  (void)g;
  OverlapPartition part;
  part.rank = i;
  part.core_begin = plan.core_begin(i);
  part.core_end = plan.core_end(i);

  std::vector<NodeId> halo;
  for (NodeId v = part.core_begin; v < part.core_end; ++v) {
    auto ev = eff.eff(v);
    part.core_lists.emplace_back(ev.begin(), ev.end());
    for (NodeId u : ev)
      if (!part.in_core(u)) halo.push_back(u);
  }
  std::sort(halo.begin(), halo.end());
  halo.erase(std::unique(halo.begin(), halo.end()), halo.end());

  // Partition membership: core plus halo.
  auto in_partition = [&](NodeId x) {
    if (part.in_core(x)) return true;
    return std::binary_search(halo.begin(), halo.end(), x);
  };

  part.halo_nodes = halo;
  part.halo_lists.reserve(halo.size());
  for (NodeId w : halo) {
    std::vector<NodeId> trimmed;
    for (NodeId x : eff.eff(w))
      if (in_partition(x)) trimmed.push_back(x);
    part.halo_lists.push_back(std::move(trimmed));
  }
  return part;
}

/// Rank-local state for the non-overlapping engines: effective lists of
/// core nodes only. Every stored entry appears in exactly one partition.
struct NonOverlapPartition {
  std::size_t rank = 0;
  NodeId core_begin = 0, core_end = 0;
  std::vector<std::vector<NodeId>> core_lists;

  bool in_core(NodeId v) const { return v >= core_begin && v < core_end; }
  std::span<const NodeId> list(NodeId v) const { return core_lists[v - core_begin]; }

  std::size_t stored_entries() const {
    std::size_t s = 0;
    for (const auto& l : core_lists) s += l.size();
    return s;
  }
};

inline NonOverlapPartition build_nonoverlap_partition(const Graph& g,
                                                      const EffectiveAdjacency& eff,
                                                      const PartitionPlan& plan,
                                                      std::size_t i) {
  (void)g;
  NonOverlapPartition part;
  part.rank = i;
  part.core_begin = plan.core_begin(i);
  part.core_end = plan.core_end(i);
  for (NodeId v = part.core_begin; v < part.core_end; ++v) {
    auto ev = eff.eff(v);
    part.core_lists.emplace_back(ev.begin(), ev.end());
  }
  return part;
}

}  // namespace trigraph

#endif  // TRIGRAPH_PARTITION_HPP
