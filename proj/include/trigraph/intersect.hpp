#ifndef TRIGRAPH_INTERSECT_HPP
#define TRIGRAPH_INTERSECT_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "trigraph/graph.hpp"

namespace trigraph {

/// Merge-style intersection of two strictly ascending ID sequences,
/// invoking visit(w) for each common element. Returns the number of
/// element comparisons performed (the machine-independent cost proxy).
template <class Visit>
std::uint64_t intersect_visit(std::span<const NodeId> a, std::span<const NodeId> b,
                              Visit&& visit) {
  std::uint64_t comparisons = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    ++comparisons;
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      visit(a[i]);
      ++i;
      ++j;
    }
  }
  return comparisons;
}

inline std::vector<NodeId> intersect_sorted(std::span<const NodeId> a,
                                            std::span<const NodeId> b) {
  std::vector<NodeId> out;
  intersect_visit(a, b, [&](NodeId w) { out.push_back(w); });
  return out;
}

}  // namespace trigraph

#endif  // TRIGRAPH_INTERSECT_HPP
