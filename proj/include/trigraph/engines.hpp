#ifndef TRIGRAPH_ENGINES_HPP
#define TRIGRAPH_ENGINES_HPP

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "trigraph/effective.hpp"
#include "trigraph/graph.hpp"
#include "trigraph/intersect.hpp"
#include "trigraph/order.hpp"
#include "trigraph/partition.hpp"
#include "trigraph/runtime.hpp"
#include "trigraph/sequential.hpp"
#include "trigraph/sparsify.hpp"

namespace trigraph {

enum class EngineKind { Sequential, Aop, AnopDirect, AnopSurrogate };

inline const char* to_string(EngineKind e) {
  switch (e) {
    case EngineKind::Sequential: return "seq";
    case EngineKind::Aop: return "aop";
    case EngineKind::AnopDirect: return "anop-direct";
    case EngineKind::AnopSurrogate: return "anop-surrogate";
  }
  return "?";
}

/// Overlapping-partition counting: every triangle whose apex is a core
/// node is decidable inside the partition, so no messages are sent.
template <class Sink>
std::uint64_t aop_count(const OverlapPartition& part, Sink&& sink,
                        std::uint64_t* realized_cost = nullptr) {
  std::uint64_t total = 0;
  std::uint64_t cost = 0;
  for (NodeId v = part.core_begin; v < part.core_end; ++v) {
    auto nv = part.list(v);
    for (NodeId u : nv) {
      cost += intersect_visit(nv, part.list(u), [&](NodeId w) {
        ++total;
        sink(v, u, w);
      });
    }
  }
  if (realized_cost) *realized_cost += cost;
  return total;
}

/// Delegated counting at the rank that owns u: for every in-core u in
/// the shipped list X = N_v, add |N_u cap X|. The scan locating in-core
/// members touches only X (core sets are contiguous ID ranges and X is
/// ID-sorted).
template <class Sink>
std::uint64_t surrogate_handle(NodeId v, std::span<const NodeId> x,
                               const NonOverlapPartition& part, Sink&& sink,
                               std::uint64_t* realized_cost = nullptr) {
  std::uint64_t total = 0;
  std::uint64_t cost = 0;
  auto lo = std::lower_bound(x.begin(), x.end(), part.core_begin);
  for (auto it = lo; it != x.end() && *it < part.core_end; ++it) {
    NodeId u = *it;
    cost += intersect_visit(part.list(u), x, [&](NodeId w) {
      ++total;
      sink(v, u, w);
    });
  }
  if (realized_cost) *realized_cost += cost;
  return total;
}

/// Non-overlapping engine, direct communication: off-core neighbor lists
/// are fetched with a request/reply per (v, u) pair and never cached.
template <class Sink>
[[gnu::noinline]] runtime::RankTask anop_direct_body(const NonOverlapPartition& part,
                                   const PartitionPlan& plan,
                                   runtime::RankContext& ctx, Sink& sink,
                                   std::uint64_t& triangles, std::uint64_t& cost) {
  using runtime::DataTag;
  using runtime::Message;
  using runtime::MsgKind;
  using runtime::ProtocolError;

  const std::size_t p = plan.ranks();
  std::size_t controls = 0;

  auto serve_request = [&](const Message& m) {
    if (!part.in_core(m.node))
      throw ProtocolError("request for node outside responder's core");
    auto nu = part.list(m.node);
    ctx.send(m.src, Message::neighbor_list(ctx.rank(), m.node,
                                           std::vector<NodeId>(nu.begin(), nu.end())));
  };

  for (NodeId v = part.core_begin; v < part.core_end; ++v) {
    auto nv = part.list(v);
    for (NodeId u : nv) {
      if (part.in_core(u)) {
        cost += intersect_visit(nv, part.list(u), [&](NodeId w) {
          ++triangles;
          sink(v, u, w);
        });
        continue;
      }
      ctx.send(static_cast<int>(plan.owner(u)), Message::request(ctx.rank(), u));
      // Serve traffic until our reply arrives; blocking here without
      // serving would deadlock two ranks awaiting each other's replies.
      for (;;) {
        Message m = co_await ctx.recv();
        if (m.kind == MsgKind::Control) {
          ++controls;
        } else if (m.tag == DataTag::Request) {
          serve_request(m);
        } else {
          if (m.node != u) throw ProtocolError("response for unrequested node");
          cost += intersect_visit(nv, std::span<const NodeId>(m.nodes),
                                  [&](NodeId w) {
                                    ++triangles;
                                    sink(v, u, w);
                                  });
          break;
        }
      }
    }
    co_await ctx.yield();
  }

  ctx.broadcast_control();
  while (controls < p - 1) {
    Message m = co_await ctx.recv();
    if (m.kind == MsgKind::Control) ++controls;
    else if (m.tag == DataTag::Request) serve_request(m);
    else throw ProtocolError("response for unrequested node");
  }
}

/// Non-overlapping engine, surrogate communication: instead of fetching
/// N_u, ship N_v to the rank owning u, at most once per destination
/// (LastProc dedup over the ID-sorted list).
template <class Sink>
[[gnu::noinline]] runtime::RankTask anop_surrogate_body(const NonOverlapPartition& part,
                                      const PartitionPlan& plan,
                                      runtime::RankContext& ctx, Sink& sink,
                                      std::uint64_t& triangles, std::uint64_t& cost) {
  using runtime::DataTag;
  using runtime::Message;
  using runtime::MsgKind;
  using runtime::ProtocolError;

  const std::size_t p = plan.ranks();
  std::size_t controls = 0;

  auto handle = [&](const Message& m) {
    if (m.kind == MsgKind::Control) {
      ++controls;
      return;
    }
    if (m.tag != DataTag::NeighborList)
      throw ProtocolError("unexpected message in surrogate protocol");
    // Data arriving after a sender's control is still valid work.
    triangles += surrogate_handle(m.node, std::span<const NodeId>(m.nodes), part,
                                  sink, &cost);
  };

  for (NodeId v = part.core_begin; v < part.core_end; ++v) {
    auto nv = part.list(v);
    int last_proc = -1;
    for (NodeId u : nv) {
      if (part.in_core(u)) {
        cost += intersect_visit(nv, part.list(u), [&](NodeId w) {
          ++triangles;
          sink(v, u, w);
        });
        continue;
      }
      int j = static_cast<int>(plan.owner(u));
      if (j != last_proc) {
        ctx.send(j, Message::neighbor_list(ctx.rank(), v,
                                           std::vector<NodeId>(nv.begin(), nv.end())));
        last_proc = j;
      }
    }
    for (Message& m : ctx.drain()) handle(m);
    co_await ctx.yield();
  }

  ctx.broadcast_control();
  while (controls < p - 1) {
    Message m = co_await ctx.recv();
    handle(m);
  }
}

/// Per-node triangle tallies observed at one rank.
using LocalCounts = std::map<NodeId, std::uint64_t>;

struct ClusteringResult {
  std::vector<std::uint64_t> triangles_per_node;  // T_v
  std::vector<double> coefficient;                // C_v, 0 when d_v < 2
};

/// Cross-rank aggregation of local counts: each rank ships, per
/// destination, only the nonzero tallies of that destination's core
/// nodes; the owner folds them and computes C_v.
inline ClusteringResult aggregate_clustering(const Graph& g, const PartitionPlan& plan,
                                             const std::vector<LocalCounts>& local,
                                             runtime::ExecMode mode) {
  using runtime::DataTag;
  using runtime::Message;
  using runtime::MsgKind;
  using runtime::ProtocolError;

  const std::size_t p = plan.ranks();
  const std::size_t n = g.num_nodes();
  std::vector<std::uint64_t> tv(n, 0);

  auto body = [&](runtime::RankContext& ctx) -> runtime::RankTask {
    const std::size_t i = static_cast<std::size_t>(ctx.rank());
    // Own core tallies first.
    for (const auto& [node, count] : local[i])
      if (plan.in_core(i, node)) tv[node] += count;

    // One tally message per destination holding nonzero off-core counts.
    std::vector<Message> outgoing(p);
    for (std::size_t j = 0; j < p; ++j) {
      outgoing[j].kind = MsgKind::Data;
      outgoing[j].tag = DataTag::Tally;
    }
    for (const auto& [node, count] : local[i]) {
      std::size_t j = plan.owner(node);
      if (j == i || count == 0) continue;
      outgoing[j].nodes.push_back(node);
      outgoing[j].counts.push_back(count);
    }
    for (std::size_t j = 0; j < p; ++j)
      if (j != i && !outgoing[j].nodes.empty())
        ctx.send(static_cast<int>(j), std::move(outgoing[j]));

    co_await ctx.barrier();
    for (const Message& m : ctx.drain()) {
      if (m.kind != MsgKind::Data || m.tag != DataTag::Tally)
        throw ProtocolError("unexpected message during tally aggregation");
      for (std::size_t k = 0; k < m.nodes.size(); ++k) {
        if (!plan.in_core(i, m.nodes[k]))
          throw ProtocolError("tally for node outside receiver's core");
        tv[m.nodes[k]] += m.counts[k];
      }
    }
  };
  runtime::run_ranks(p, mode, body);

  ClusteringResult out;
  out.triangles_per_node = std::move(tv);
  out.coefficient.resize(n, 0.0);
  for (NodeId v = 0; v < n; ++v) {
    std::size_t d = g.degree(v);
    if (d >= 2)
      out.coefficient[v] = 2.0 * static_cast<double>(out.triangles_per_node[v]) /
                           (static_cast<double>(d) * static_cast<double>(d - 1));
  }
  return out;
}

struct EngineConfig {
  EngineKind engine = EngineKind::Aop;
  std::size_t ranks = 1;
  CostKind cost = CostKind::Dpd;
  OrderKind order = OrderKind::by_degree();
  runtime::ExecMode mode = runtime::ExecMode::Interleaved;
  bool track_nodes = false;
  bool collect_triangles = false;
  std::optional<SparsifyConfig> sparsify;
  std::optional<std::vector<NodeId>> boundaries;  // overrides the cost-based plan
};

struct RankStats {
  std::uint64_t triangles = 0;
  std::uint64_t data_sent = 0;
  std::uint64_t data_recv = 0;
  std::uint64_t realized_cost = 0;
};

struct RunReport {
  EngineKind engine = EngineKind::Sequential;
  std::size_t ranks = 1;
  CostKind cost = CostKind::Dpd;
  std::uint64_t total = 0;
  std::vector<RankStats> per_rank;
  std::vector<NodeId> boundaries;
  std::vector<std::uint64_t> node_counts;              // filled when track_nodes
  std::vector<std::array<NodeId, 3>> triangles_list;   // filled when collect_triangles
};

namespace detail {

// Branches on two optional outputs; engines stay header-only templates.
struct RankSink {
  LocalCounts* tallies = nullptr;
  std::vector<std::array<NodeId, 3>>* triples = nullptr;

  void operator()(NodeId v, NodeId u, NodeId w) const {
    if (tallies) {
      ++(*tallies)[v];
      ++(*tallies)[u];
      ++(*tallies)[w];
    }
    if (triples) {
      std::array<NodeId, 3> t{v, u, w};
      if (t[0] > t[1]) std::swap(t[0], t[1]);
      if (t[1] > t[2]) std::swap(t[1], t[2]);
      if (t[0] > t[1]) std::swap(t[0], t[1]);
      triples->push_back(t);
    }
  }
};

[[gnu::noinline]] inline runtime::RankTask aop_body(const OverlapPartition& part,
                                                    RankSink& sink,
                                  RankStats& stats) {
  stats.triangles = aop_count(part, sink, &stats.realized_cost);
  co_return;
}

}  // namespace detail

/// Full pipeline: order -> effective adjacency -> costs -> plan ->
/// partitions -> rank programs -> reduce. Sequential runs the plain
/// kernel under the same report shape.
inline RunReport run_engine(const Graph& g, const EngineConfig& cfg) {
  if (cfg.sparsify) cfg.sparsify->validate();
  const std::size_t p = cfg.engine == EngineKind::Sequential ? 1 : cfg.ranks;
  if (p == 0) throw std::invalid_argument("run_engine: ranks must be >= 1");

  auto order = compute_order(g, cfg.order);
  auto eff = effective_adjacency(g, order);
  auto costs = node_costs(g, eff, cfg.cost);
  PartitionPlan plan = cfg.boundaries ? PartitionPlan{*cfg.boundaries}
                                      : compute_boundaries(costs, p);

  RunReport report;
  report.engine = cfg.engine;
  report.ranks = p;
  report.cost = cfg.cost;
  report.boundaries = plan.boundaries;
  report.per_rank.resize(p);

  std::vector<LocalCounts> tallies(p);
  std::vector<std::vector<std::array<NodeId, 3>>> triples(p);
  auto sink_for = [&](std::size_t i) {
    detail::RankSink s;
    if (cfg.track_nodes) s.tallies = &tallies[i];
    if (cfg.collect_triangles) s.triples = &triples[i];
    return s;
  };

  if (cfg.engine == EngineKind::Sequential) {
    if (cfg.sparsify) eff = sparsify_effective(eff, *cfg.sparsify);
    auto sink = sink_for(0);
    report.per_rank[0].triangles = count_node_iterator_n(eff, sink);
  } else if (cfg.engine == EngineKind::Aop) {
    std::vector<OverlapPartition> parts;
    parts.reserve(p);
    for (std::size_t i = 0; i < p; ++i) {
      parts.push_back(build_overlap_partition(g, eff, plan, i));
      if (cfg.sparsify) sparsify_partition(parts.back(), *cfg.sparsify);
    }
    std::vector<detail::RankSink> sinks(p);
    for (std::size_t i = 0; i < p; ++i) sinks[i] = sink_for(i);
    auto counters = runtime::run_ranks(p, cfg.mode, [&](runtime::RankContext& ctx) {
      std::size_t i = static_cast<std::size_t>(ctx.rank());
      return detail::aop_body(parts[i], sinks[i], report.per_rank[i]);
    });
    for (std::size_t i = 0; i < p; ++i) {
      report.per_rank[i].data_sent = counters[i].data_sent;
      report.per_rank[i].data_recv = counters[i].data_recv;
    }
  } else {
    std::vector<NonOverlapPartition> parts;
    parts.reserve(p);
    for (std::size_t i = 0; i < p; ++i) {
      parts.push_back(build_nonoverlap_partition(g, eff, plan, i));
      if (cfg.sparsify) sparsify_partition(parts.back(), *cfg.sparsify);
    }
    std::vector<detail::RankSink> sinks(p);
    for (std::size_t i = 0; i < p; ++i) sinks[i] = sink_for(i);
    auto counters = runtime::run_ranks(p, cfg.mode, [&](runtime::RankContext& ctx) {
      std::size_t i = static_cast<std::size_t>(ctx.rank());
      auto& stats = report.per_rank[i];
      if (cfg.engine == EngineKind::AnopDirect)
        return anop_direct_body(parts[i], plan, ctx, sinks[i], stats.triangles,
                                stats.realized_cost);
      return anop_surrogate_body(parts[i], plan, ctx, sinks[i], stats.triangles,
                                 stats.realized_cost);
    });
    for (std::size_t i = 0; i < p; ++i) {
      report.per_rank[i].data_sent = counters[i].data_sent;
      report.per_rank[i].data_recv = counters[i].data_recv;
    }
  }

  for (const auto& rs : report.per_rank) report.total += rs.triangles;

  if (cfg.track_nodes) {
    auto cc = aggregate_clustering(g, plan, tallies, cfg.mode);
    report.node_counts = std::move(cc.triangles_per_node);
  }
  if (cfg.collect_triangles) {
    for (auto& t : triples)
      report.triangles_list.insert(report.triangles_list.end(), t.begin(), t.end());
  }
  return report;
}

/// Clustering coefficients through any engine: count with per-node
/// tracking, aggregate, divide by the pair count of each node's degree.
inline ClusteringResult clustering_coefficients(const Graph& g, EngineConfig cfg) {
  cfg.track_nodes = true;
  auto report = run_engine(g, cfg);
  ClusteringResult out;
  out.triangles_per_node = std::move(report.node_counts);
  out.coefficient.resize(g.num_nodes(), 0.0);
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    std::size_t d = g.degree(v);
    if (d >= 2)
      out.coefficient[v] = 2.0 * static_cast<double>(out.triangles_per_node[v]) /
                           (static_cast<double>(d) * static_cast<double>(d - 1));
  }
  return out;
}

/// Sparsify-then-count estimate T' / q^3. AOP sparsifies per partition
/// (independent draws across ranks); the others use one draw per edge,
/// matching the sequential estimator run-for-run under a shared seed.
inline double approx_count(const Graph& g, std::size_t p, EngineKind engine, double q,
                           std::uint64_t seed,
                           runtime::ExecMode mode = runtime::ExecMode::Interleaved,
                           const std::optional<std::vector<NodeId>>& boundaries = {},
                           CostKind cost = CostKind::Dpd) {
  EngineConfig cfg;
  cfg.engine = engine;
  cfg.ranks = p;
  cfg.cost = cost;
  cfg.mode = mode;
  cfg.boundaries = boundaries;
  cfg.sparsify = SparsifyConfig{q, seed,
                                engine == EngineKind::Aop
                                    ? SparsifyConfig::Mode::PerPartition
                                    : SparsifyConfig::Mode::Global};
  auto report = run_engine(g, cfg);
  return static_cast<double>(report.total) / (q * q * q);
}

}  // namespace trigraph

#endif  // TRIGRAPH_ENGINES_HPP
