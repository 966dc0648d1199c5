#pragma once

#include <cstdint>

#include "maxent/core.hpp"

namespace maxent {

/// SplitMix64 finalizer (Steele, Lea & Flood). Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based generator: the word for (seed, stream, substream, counter) is
///   mix64(mix64(mix64(mix64(seed) ^ stream) ^ substream) ^ counter)
/// so any draw can be computed independently of every other draw. Results
/// depend only on 64-bit integer arithmetic and are identical on every
/// platform and under any thread schedule.
struct SeededRng {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  std::uint64_t bits(std::uint64_t substream, std::uint64_t counter = 0) const noexcept {
    return mix64(mix64(mix64(mix64(seed) ^ stream) ^ substream) ^ counter);
  }

  /// Uniform double on the open interval (0, 1): ((b >> 11) + 0.5) / 2^53.
  double uniform_open(std::uint64_t substream, std::uint64_t counter = 0) const noexcept {
    return (static_cast<double>(bits(substream, counter) >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Derived generator for a child stream; used to give every (n, replicate)
  /// pair of an experiment its own independent stream.
  SeededRng child(std::uint64_t a, std::uint64_t b = 0) const noexcept {
    return {seed, mix64(stream ^ mix64(a ^ mix64(b)))};
  }
};

namespace sampler {

/// Inverse-CDF draw of one edge weight at pairwise potential t given a
/// uniform u in (0, 1).
///   finite(r):  linear scan of the r-atom CDF, P(a) proportional to e^{-a t}
///   continuous: -log(u) / t             (exponential, rate t)
///   infinite:   floor(-log(u) / t)      (geometric on {0,1,...}, P(0) = 1 - e^{-t})
double draw_weight(const WeightRegime& regime, double t, double u);

/// Draws G ~ P*_theta: independent edge weights, edge (i, j) using the
/// substream pair_index(n, i, j) of `rng`. Throws InvalidInput when theta is
/// outside the natural parameter space.
WeightedGraph sample_graph(const WeightRegime& regime, const Potentials& theta, const SeededRng& rng);

/// d*_i = sum_{j != i} mu(theta_i + theta_j), compensated summation.
DegreeSequence expected_degrees(const WeightRegime& regime, const Potentials& theta);

}  // namespace sampler
}  // namespace maxent
