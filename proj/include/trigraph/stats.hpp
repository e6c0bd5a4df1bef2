#ifndef TRIGRAPH_STATS_HPP
#define TRIGRAPH_STATS_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace trigraph {

/// Extrapolates the optimal rank count from a calibrated base network:
/// p_opt scales linearly with average degree and with sqrt(n).
inline std::uint64_t estimate_p_opt(double n, double dbar, double base_n,
                                    double base_dbar, double base_p_opt) {
  if (n <= 0 || dbar <= 0 || base_n <= 0 || base_dbar <= 0 || base_p_opt <= 0)
    throw std::invalid_argument("estimate_p_opt: all inputs must be positive");
  double est = base_p_opt * (dbar / base_dbar) * std::sqrt(n / base_n);
  return static_cast<std::uint64_t>(std::llround(est));
}

/// Normalized triangle count: mean triangles per node.
inline double normalized_triangle_count(std::uint64_t triangles, std::size_t n) {
  return n == 0 ? 0.0 : static_cast<double>(triangles) / static_cast<double>(n);
}

}  // namespace trigraph

#endif  // TRIGRAPH_STATS_HPP
