#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "maxent/core.hpp"

namespace maxent::mle {

struct SolverOptions {
  /// Step tolerance on ||theta^(k+1) - theta^(k)||_inf (for Newton, relative
  /// to max(1, ||theta||_inf)). The degree residual
  /// must also fall below tol * max(1, ||d||_inf) before a fit is accepted.
  double tol = 1e-10;
  int max_iter = 5000;
  /// The fixed-point iteration is declared divergent once ||theta||_inf
  /// exceeds this; e^{+-50} already saturates mu to machine precision.
  double divergence_norm = 50.0;
  /// Starting point; zero for the finite regime and the symmetric moment
  /// match for the positive regimes when absent.
  std::optional<Potentials> theta0;
  bool record_trace = false;
  /// Keep every iterate (finite regime); needed for convergence studies.
  bool record_iterates = false;

  /// Throws InvalidInput when tol <= 0, max_iter < 1 or divergence_norm <= 0.
  void validate() const;
};

struct TraceEntry {
  int iter;
  double step_inf;      ///< ||theta^(k+1) - theta^(k)||_inf
  double residual_inf;  ///< ||d - E_theta^(k)[deg]||_inf
};

struct FitReport {
  std::optional<Potentials> theta_hat;  ///< set iff converged
  bool converged = false;
  bool diverged = false;
  int iterations = 0;
  /// ||d - expected_degrees(theta)||_inf at theta_hat, or at the last iterate.
  double residual_inf = 0.0;
  std::vector<TraceEntry> trace;
  /// theta^(0), theta^(1), ... when SolverOptions::record_iterates is set.
  std::vector<std::vector<double>> iterates;
  std::vector<double> last_iterate;
  std::string diagnosis;
};

/// Contraction data of the fixed-point map on the box ||theta||_inf <= K.
struct ContractionInfo {
  double K;
  double delta;
  double beta;  ///< sqrt(1 - delta^2): two-step contraction is beta^2
};

/// One application of the fixed-point map
///   phi_i(x) = x_i + (log sum_{j != i} mu(x_i + x_j) - log d_i) / (r - 1)
/// for the finite regime. Throws InvalidInput when some d_i <= 0 or r < 2.
Potentials phi_step(const DegreeSequence& d, int r, const Potentials& x);

/// Fixed-point iteration theta^(k+1) = phi(theta^(k)) for the finite regime.
/// Converges geometrically whenever the MLE exists; otherwise some
/// subsequence diverges and the report is flagged `diverged`.
FitReport fit_finite_discrete(const DegreeSequence& d, int r, const SolverOptions& opts = {});

/// delta = 1/(r-1) min{(e^{2K}-1)/(e^{2rK}-1), -mu'(2K)/mu(-2K)}, with the
/// K -> 0 limits 1/r and (r+1)/6. beta = sqrt(1 - delta^2).
ContractionInfo contraction_delta(int r, double K);

/// Damped Newton ascent on F(theta) = -theta.d - Z(theta) for the continuous
/// and infinite regimes. Throws NoMle when d is not in the interior of the
/// mean space and InvalidInput for the finite regime.
FitReport fit_positive_regime(const WeightRegime& regime, const DegreeSequence& d, const SolverOptions& opts = {});

/// Regime dispatch: fixed point for finite, Newton otherwise.
FitReport fit(const WeightRegime& regime, const DegreeSequence& d, const SolverOptions& opts = {});

/// Z(theta) = sum_{i<j} Z1(theta_i + theta_j); +infinity outside Theta.
double log_partition(const WeightRegime& regime, const Potentials& theta);

/// F(theta) = -theta.d - Z(theta); -infinity outside Theta.
double log_likelihood(const WeightRegime& regime, const DegreeSequence& d, const Potentials& theta);

/// Hessian of Z: off-diagonal -mu'(theta_i + theta_j), diagonal equal to the
/// off-diagonal row sum. Throws InvalidInput for theta outside Theta.
Eigen::MatrixXd hessian_logpartition(const WeightRegime& regime, const Potentials& theta);

/// (3n - 4) / (2 ell (n - 2)(n - 1)): bound on ||J^{-1}||_inf for symmetric
/// diagonally balanced J with off-diagonal entries >= ell > 0.
double inverse_norm_bound(std::size_t n, double ell);

/// ||A||_inf, the maximum absolute row sum.
double matrix_norm_inf(const Eigen::MatrixXd& a);

}  // namespace maxent::mle
