#pragma once

#include <cstdint>
#include <optional>

#include "maxent/core.hpp"

namespace maxent::graphical {

struct GraphicalityVerdict {
  bool graphic = false;
  /// First violated inequality k (1-based, refers to the descending sort).
  /// Only filled for the finite regime.
  std::optional<std::size_t> violated_k;
  /// Degree sum is even. Always true for the continuous regime.
  bool parity_ok = true;
};

/// Weighted Erdos-Gallai test.
///
/// finite(r):  sum even, and for every k with d sorted descending
///             sum_{i<=k} d_i <= (r-1)k(k-1) + sum_{j>k} min(d_j, (r-1)k)
/// infinite:   sum even and max d_i <= sum/2
/// continuous: max d_i <= sum/2 (exact comparison, boundary is graphic)
///
/// Throws InvalidInput when a discrete regime receives a non-integer entry.
GraphicalityVerdict is_graphical(const WeightRegime& regime, const DegreeSequence& d);

/// Interior of the mean parameter space: all d_i > 0 and max d_i < sum/2.
/// This is exactly when the MLE exists. Throws UnsupportedRegime for the
/// finite regime, whose interior has no closed-form test.
bool in_mean_interior(const WeightRegime& regime, const DegreeSequence& d);

/// Upper bound on the leaves visited by brute_force_graphical.
double brute_force_search_size(const WeightRegime& regime, const DegreeSequence& d, std::int64_t weight_cap);

inline constexpr double kBruteForceLimit = 1.0e8;
inline constexpr std::size_t kBruteForceMaxVertices = 6;

/// Exhaustive realization search over integer weights in {0..cap} (capped at
/// r-1 for the finite regime). Vertices are filled in order, each choosing
/// its forward edges so that its residual degree is met exactly.
/// Requires n <= 6, a discrete regime, integral d, and a search size at most
/// 1e8; throws InvalidInput otherwise.
bool brute_force_graphical(const WeightRegime& regime, const DegreeSequence& d, std::int64_t weight_cap);

/// Like brute_force_graphical but returns a realizing graph when one exists.
std::optional<WeightedGraph> brute_force_realization(const WeightRegime& regime, const DegreeSequence& d,
                                                     std::int64_t weight_cap);

}  // namespace maxent::graphical
