#ifndef TRIGRAPH_SPARSIFY_HPP
#define TRIGRAPH_SPARSIFY_HPP

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "trigraph/effective.hpp"
#include "trigraph/graph.hpp"
#include "trigraph/partition.hpp"
#include "trigraph/sequential.hpp"

namespace trigraph {

/// Edge-retention configuration. PerPartition draws independently per
/// rank, so an edge overlapped in two partitions can survive in one and
/// not the other; Global uses one draw per stored edge regardless of
/// rank, which reproduces the sequential sparsify-then-count behavior.
struct SparsifyConfig {
  enum class Mode { PerPartition, Global };

  double q = 1.0;
  std::uint64_t seed = 0;
  Mode mode = Mode::Global;

  void validate() const {
    if (!(q > 0.0 && q <= 1.0))
      throw std::invalid_argument("sparsify: q must be in (0, 1]");
  }
};

namespace detail {

inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

// Deterministic per-(seed, rank, v, u) uniform draw in [0, 1).
inline double entry_unit(std::uint64_t seed, std::uint64_t rank_key, NodeId v, NodeId u) {
  std::uint64_t h = mix64(seed);
  h = mix64(h ^ rank_key);
  h = mix64(h ^ (std::uint64_t{v} + 0x51ed270b684a1571ULL));
  h = mix64(h ^ std::uint64_t{u});
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

}  // namespace detail

/// Whether the stored entry u of N_v survives at the given rank.
inline bool keep_entry(const SparsifyConfig& cfg, std::size_t rank, NodeId v, NodeId u) {
  std::uint64_t rank_key =
      cfg.mode == SparsifyConfig::Mode::PerPartition ? rank + 1 : 0;
  return detail::entry_unit(cfg.seed, rank_key, v, u) < cfg.q;
}

namespace detail {

inline void sparsify_list(const SparsifyConfig& cfg, std::size_t rank, NodeId v,
                          std::vector<NodeId>& list) {
  std::size_t out = 0;
  for (NodeId u : list)
    if (keep_entry(cfg, rank, v, u)) list[out++] = u;
  list.resize(out);
}

}  // namespace detail

inline void sparsify_partition(OverlapPartition& part, const SparsifyConfig& cfg) {
  cfg.validate();
  for (NodeId v = part.core_begin; v < part.core_end; ++v)
    detail::sparsify_list(cfg, part.rank, v, part.core_lists[v - part.core_begin]);
  for (std::size_t i = 0; i < part.halo_nodes.size(); ++i)
    detail::sparsify_list(cfg, part.rank, part.halo_nodes[i], part.halo_lists[i]);
}

inline void sparsify_partition(NonOverlapPartition& part, const SparsifyConfig& cfg) {
  cfg.validate();
  for (NodeId v = part.core_begin; v < part.core_end; ++v)
    detail::sparsify_list(cfg, part.rank, v, part.core_lists[v - part.core_begin]);
}

/// Sparsified copy of a full effective adjacency (sequential semantics;
/// rank 0, so Global mode matches the per-partition draws of a
/// non-overlapping run with the same seed).
inline EffectiveAdjacency sparsify_effective(const EffectiveAdjacency& eff,
                                             const SparsifyConfig& cfg) {
  cfg.validate();
  const std::size_t n = eff.num_nodes();
  std::vector<std::size_t> offsets(n + 1, 0);
  std::vector<NodeId> kept;
  kept.reserve(eff.total_entries());
  for (NodeId v = 0; v < n; ++v) {
    for (NodeId u : eff.eff(v))
      if (keep_entry(cfg, 0, v, u)) kept.push_back(u);
    offsets[v + 1] = kept.size();
  }
  return EffectiveAdjacency(std::move(offsets), std::move(kept));
}

/// Exact variance analytics for the 1/q^3-scaled estimator: k counts
/// pairs of triangles sharing an edge; k' restricts to pairs whose two
/// apex nodes (the order-smallest corner of each triangle) are core
/// nodes of the same partition.
struct VarianceReport {
  std::uint64_t triangles = 0;
  std::uint64_t k = 0;
  std::uint64_t k_prime = 0;
  double q = 1.0;
  double var = 0.0;        // (1/q^3 - 1) T + 2k (1/q - 1)
  double var_prime = 0.0;  // same with k'
};

inline VarianceReport variance_report(const Graph& g, const PartitionPlan& plan,
                                      double q) {
  auto order = compute_order(g, OrderKind::by_degree());
  auto eff = effective_adjacency(g, order);

  // Raw triples (v, u, w): v is the order-smallest corner (the apex).
  std::map<std::pair<NodeId, NodeId>, std::vector<NodeId>> apexes_by_edge;
  auto note = [&](NodeId a, NodeId b, NodeId apex) {
    if (a > b) std::swap(a, b);
    apexes_by_edge[{a, b}].push_back(apex);
  };
  std::uint64_t total = count_node_iterator_n(eff, [&](NodeId v, NodeId u, NodeId w) {
    note(v, u, v);
    note(v, w, v);
    note(u, w, v);
  });

  VarianceReport rep;
  rep.triangles = total;
  rep.q = q;
  for (const auto& [edge, apexes] : apexes_by_edge) {
    const std::size_t c = apexes.size();
    rep.k += c * (c - 1) / 2;
    for (std::size_t i = 0; i < c; ++i)
      for (std::size_t j = i + 1; j < c; ++j)
        if (plan.owner(apexes[i]) == plan.owner(apexes[j])) ++rep.k_prime;
  }
  const double q3 = q * q * q;
  rep.var = (1.0 / q3 - 1.0) * static_cast<double>(total) +
            2.0 * static_cast<double>(rep.k) * (1.0 / q - 1.0);
  rep.var_prime = (1.0 / q3 - 1.0) * static_cast<double>(total) +
                  2.0 * static_cast<double>(rep.k_prime) * (1.0 / q - 1.0);
  return rep;
}

}  // namespace trigraph

#endif  // TRIGRAPH_SPARSIFY_HPP
