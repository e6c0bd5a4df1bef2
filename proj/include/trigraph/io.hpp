#ifndef TRIGRAPH_IO_HPP
#define TRIGRAPH_IO_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "trigraph/graph.hpp"

namespace trigraph {

struct ParseError : std::runtime_error {
  std::size_t line;
  ParseError(std::size_t line_, const std::string& what_)
      : std::runtime_error("line " + std::to_string(line_) + ": " + what_), line(line_) {}
};

/// Parses edge-list text: one edge per line as two whitespace-separated
/// decimal node IDs. Lines beginning with '#' and blank lines are skipped.
inline std::vector<std::pair<NodeId, NodeId>> parse_edge_list(std::string_view text) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++lineno;

    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) continue;
    if (line[first] == '#') continue;

    std::istringstream iss{std::string(line)};
    unsigned long long u, v;
    if (!(iss >> u >> v)) throw ParseError(lineno, "expected two integer tokens");
    std::string rest;
    if (iss >> rest) throw ParseError(lineno, "trailing token '" + rest + "'");
    edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
  }
  return edges;
}

/// Emits each undirected edge once as "u v\n" with u < v.
inline std::string write_edge_list(const Graph& g) {
  std::string out;
  for (NodeId u = 0; u < g.num_nodes(); ++u)
    for (NodeId v : g.neighbors(u))
      if (u < v) {
        out += std::to_string(u);
        out += ' ';
        out += std::to_string(v);
        out += '\n';
      }
  return out;
}

namespace detail {

// Streams edge pairs straight into the CSR builder.
class EdgeStream {
 public:
  void add(NodeId u, NodeId v) { edges_.emplace_back(u, v); }
  Graph finish(std::size_t n) { return build_graph(edges_, n); }

 private:
  std::vector<std::pair<NodeId, NodeId>> edges_;
};

inline double unit_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace detail

/// Erdos-Renyi G(n, q) with q = d / (n - 1), so the expected average
/// degree is d. Uses geometric skipping over the C(n,2) pair sequence.
inline Graph gen_gnp(std::size_t n, double d, std::uint64_t seed) {
  if (n == 0) return build_graph({}, 0);
  if (d < 0 || (n > 1 && d > static_cast<double>(n - 1)) || (n == 1 && d > 0))
    throw std::invalid_argument("gen_gnp: need 0 <= d <= n-1");

  const double q = (n > 1) ? d / static_cast<double>(n - 1) : 0.0;
  detail::EdgeStream es;
  if (q >= 1.0) {
    for (NodeId u = 0; u < n; ++u)
      for (NodeId v = u + 1; v < n; ++v) es.add(u, v);
    return es.finish(n);
  }
  if (q > 0.0) {
    std::mt19937_64 rng(seed);
    const double log1q = std::log1p(-q);
    // Pairs (u,v), u<v, enumerated in lexicographic order as one stream.
    std::uint64_t total = static_cast<std::uint64_t>(n) * (n - 1) / 2;
    std::uint64_t idx = 0;
    while (true) {
      double r = detail::unit_double(rng);
      double skip = std::floor(std::log1p(-r) / log1q);
      idx += static_cast<std::uint64_t>(skip);
      if (idx >= total) break;
      // Invert idx -> (u, v).
      std::uint64_t lo = 0, hi = n - 1;
      while (lo < hi) {  // smallest u with cum(u+1) > idx
        std::uint64_t mid = (lo + hi) / 2;
        std::uint64_t cum = (mid + 1) * (2 * n - mid - 2) / 2;
        if (cum > idx) hi = mid; else lo = mid + 1;
      }
      std::uint64_t u = lo;
      std::uint64_t before = u * (2 * n - u - 1) / 2;
      std::uint64_t v = u + 1 + (idx - before);
      es.add(static_cast<NodeId>(u), static_cast<NodeId>(v));
      ++idx;
    }
  }
  return es.finish(n);
}

/// Preferential attachment with target average degree d (d even, >= 2):
/// a seed clique on d/2 + 1 nodes, then each arriving node attaches
/// d/2 distinct edges to existing nodes chosen proportionally to current
/// degree (repeat-until-distinct sampling from the edge-endpoint list).
inline Graph gen_pa(std::size_t n, std::size_t d, std::uint64_t seed) {
  if (d < 2 || d % 2 != 0 || n <= d / 2)
    throw std::invalid_argument("gen_pa: need d even, d >= 2, n > d/2");

  const std::size_t half = d / 2;
  const std::size_t clique = half + 1;
  std::mt19937_64 rng(seed);

  detail::EdgeStream es;
  std::vector<NodeId> endpoints;  // each edge contributes both endpoints
  endpoints.reserve(n * d);
  for (NodeId u = 0; u < clique; ++u)
    for (NodeId v = u + 1; v < clique; ++v) {
      es.add(u, v);
      endpoints.push_back(u);
      endpoints.push_back(v);
    }

  std::vector<NodeId> picked;
  for (NodeId v = static_cast<NodeId>(clique); v < n; ++v) {
    picked.clear();
    while (picked.size() < half) {
      NodeId t = endpoints[rng() % endpoints.size()];
      if (std::find(picked.begin(), picked.end(), t) == picked.end())
        picked.push_back(t);
    }
    for (NodeId t : picked) {
      es.add(v, t);
      endpoints.push_back(v);
      endpoints.push_back(t);
    }
  }
  return es.finish(n);
}

}  // namespace trigraph

#endif  // TRIGRAPH_IO_HPP
