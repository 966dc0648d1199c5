#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "maxent/core.hpp"
#include "maxent/mle.hpp"
#include "maxent/sampler.hpp"

namespace maxent::experiments {

/// theta_i ~ U[lo, hi] independently.
struct UniformBox {
  double lo = -1.0;
  double hi = 1.0;
};

/// theta_i = base + U[-jitter, jitter]; pairwise sums lie in
/// [2(base - jitter), 2(base + jitter)], so base > jitter keeps theta in Theta.
struct SymmetricShifted {
  double base = 0.75;
  double jitter = 0.25;
};

using ThetaLaw = std::variant<UniformBox, SymmetricShifted>;

/// Draws n potentials from the law, coordinate i using substream i of rng.
Potentials draw_theta(const ThetaLaw& law, std::size_t n, const SeededRng& rng);

struct ExperimentConfig {
  WeightRegime regime = WeightRegime::finite(2);
  std::vector<std::size_t> n_values{50, 100, 200, 400};
  int replicates = 20;
  ThetaLaw theta_law = UniformBox{};
  std::uint64_t seed = 1;
  mle::SolverOptions solver;
  /// Retain theta, d and the fit for every replicate.
  bool keep_outcomes = false;

  /// Throws InvalidInput for replicates < 1, an empty or too-small n list,
  /// an inverted box, or a law that cannot keep positive-regime sums > 0.
  void validate() const;
};

/// Streams of replicate `rep` at size n: theta and graph draws are disjoint.
struct ReplicateStreams {
  SeededRng theta;
  SeededRng graph;
};
ReplicateStreams replicate_streams(std::uint64_t seed, std::size_t n, int rep);

struct ReplicateOutcome {
  std::size_t n = 0;
  int replicate = 0;
  Potentials theta;
  DegreeSequence d;
  mle::FitReport fit;
  bool existed = false;
  std::string diagnosis;
};

/// theta ~ law, G ~ P*_theta, d = deg(G), theta_hat = MLE(d).
ReplicateOutcome run_replicate(const ExperimentConfig& config, std::size_t n, int rep);

struct ConsistencyRow {
  std::size_t n;
  int replicate;
  std::optional<double> err_inf;     ///< ||theta_hat - theta||_inf, when the MLE exists
  std::optional<double> err_scaled;  ///< err_inf * sqrt(n / log n)
  bool existed;
  int iterations;
  double residual_inf;
};

struct ConsistencySummary {
  std::size_t n;
  int replicates;
  int existed;
  double fraction_existed;
  /// Quantiles of err_inf over existing replicates (linear interpolation);
  /// NaN when no replicate produced an MLE.
  double q05;
  double median;
  double q95;
  double median_scaled;
};

struct ConsistencyResult {
  std::vector<ConsistencyRow> rows;  ///< ordered by (n, replicate)
  std::vector<ConsistencySummary> summary;
  std::vector<ReplicateOutcome> outcomes;  ///< filled when keep_outcomes
};

/// Replicates are distributed over `threads` workers; output never depends
/// on the thread count.
ConsistencyResult run_consistency_experiment(const ExperimentConfig& config, unsigned threads = 1);

// ---------------------------------------------------------------------------

struct TraceRow {
  int iter;
  double step_inf;
  double residual_inf;
  double log10_dist;  ///< log10 ||theta^(k) - theta_final||_inf (-inf at the end)
};

struct TraceResult {
  WeightRegime regime;
  Potentials theta_true;
  DegreeSequence d;
  mle::FitReport fit;
  bool existed = false;
  std::vector<TraceRow> rows;
  /// Finite regime only: contraction data at K = 2||theta_hat|| + ||theta^(0)||.
  std::optional<mle::ContractionInfo> contraction;
  /// Least-squares slope of log10 distance against iteration over the
  /// iterates whose distance exceeds kTraceFloor.
  double slope = 0.0;
  /// max_k dist_{k+2} / dist_k over the same iterates.
  double max_two_step_ratio = 0.0;
};

inline constexpr double kTraceFloor = 1e-8;

/// Fits d with iterate recording and derives the convergence table.
TraceResult trace_fit(const WeightRegime& regime, const Potentials& theta_true, const DegreeSequence& d,
                      const mle::SolverOptions& solver);

/// Draws theta ~ law (or uses the supplied theta), then either samples a graph
/// or, with exact_moments, fits the expected degrees directly.
TraceResult run_convergence_trace(const WeightRegime& regime, std::size_t n, const ThetaLaw& law, std::uint64_t seed,
                                  const mle::SolverOptions& solver);
TraceResult run_convergence_trace(const WeightRegime& regime, const Potentials& theta, bool exact_moments,
                                  std::uint64_t seed, const mle::SolverOptions& solver);

// ---------------------------------------------------------------------------

struct ScatterRow {
  double theta;
  double theta_hat;
};

struct ScatterResult {
  WeightRegime regime;
  bool existed = false;
  std::string diagnosis;
  std::vector<ScatterRow> rows;  ///< empty when the MLE does not exist
  std::vector<double> degrees;   ///< the fitted degree sequence
  double max_abs_err = 0.0;
  double slope = 0.0;  ///< least-squares slope of theta_hat on theta
  double intercept = 0.0;
  int iterations = 0;
};

ScatterResult run_scatter(const WeightRegime& regime, std::size_t n, const ThetaLaw& law, std::uint64_t seed,
                          const mle::SolverOptions& solver);
ScatterResult run_scatter(const WeightRegime& regime, const Potentials& theta, bool exact_moments, std::uint64_t seed,
                          const mle::SolverOptions& solver);

// ---------------------------------------------------------------------------

/// Type-7 sample quantile (linear interpolation between order statistics).
double quantile(std::vector<double> values, double p);

/// Ordinary least-squares fit y = intercept + slope * x.
struct LineFit {
  double slope;
  double intercept;
};
LineFit least_squares(std::span<const double> x, std::span<const double> y);

}  // namespace maxent::experiments
