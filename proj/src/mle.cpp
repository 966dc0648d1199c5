#include "maxent/mle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Cholesky>

#include "maxent/graphical.hpp"
#include "maxent/meanfn.hpp"
#include "maxent/sampler.hpp"
#include "summation.hpp"

namespace maxent::mle {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double max_abs_diff(std::span<const double> a, std::span<const double> b) { return distance_inf(a, b); }

double norm_inf(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

void require_positive_degrees(const DegreeSequence& d) {
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (!(d[i] > 0.0))
      throw InvalidInput("degree d_" + std::to_string(i) + " = " + std::to_string(d[i]) +
                         " must be positive for the fixed-point map");
  }
}

// Row sums S_i = sum_{j != i} mu(x_i + x_j) with compensated summation.
std::vector<double> pair_mean_sums(const WeightRegime& regime, std::span<const double> x) {
  const std::size_t n = x.size();
  std::vector<detail::CompensatedSum> rows(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double m = meanfn::mean(regime, x[i] + x[j]);
      rows[i].add(m);
      rows[j].add(m);
    }
  }
  std::vector<double> s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = rows[i].value();
  return s;
}

// Heuristic divergence signature once the budget is spent: steps that have
// stopped shrinking, or shrink only polynomially (exponent <= 1.5) while
// ||theta|| keeps growing. A geometric sequence that looks like this would
// need far more iterations than any sane budget.
bool looks_divergent(const std::vector<double>& steps, const std::vector<double>& norms, std::string& why) {
  const std::size_t k = steps.size() - 1;
  if (k < 20) return false;
  const std::size_t w = std::max<std::size_t>(10, k / 4);
  const double s_now = steps[k];
  const double s_then = steps[k - w];
  if (s_now >= s_then) {
    why = "steps stopped decreasing";
    return true;
  }
  const double exponent = std::log(s_then / s_now) / std::log(static_cast<double>(k) / static_cast<double>(k - w));
  if (exponent <= 1.5 && norms[k] > norms[k - w]) {
    why = "steps decay sub-geometrically (exponent " + std::to_string(exponent) + ") while ||theta|| grows";
    return true;
  }
  return false;
}

}  // namespace

void SolverOptions::validate() const {
  if (!(tol > 0.0)) throw InvalidInput("solver tol must be positive");
  if (max_iter < 1) throw InvalidInput("solver max_iter must be >= 1");
  if (!(divergence_norm > 0.0)) throw InvalidInput("solver divergence_norm must be positive");
}

Potentials phi_step(const DegreeSequence& d, int r, const Potentials& x) {
  const WeightRegime regime = WeightRegime::finite(r);
  require_positive_degrees(d);
  if (x.size() != d.size()) throw InvalidInput("phi_step: size mismatch between d and x");
  const auto s = pair_mean_sums(regime, x.values());
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = x[i] + (std::log(s[i]) - std::log(d[i])) / (r - 1);
  return Potentials(std::move(out));
}

FitReport fit_finite_discrete(const DegreeSequence& d, int r, const SolverOptions& opts) {
  opts.validate();
  const WeightRegime regime = WeightRegime::finite(r);
  require_positive_degrees(d);
  const std::size_t n = d.size();

  std::vector<double> x = opts.theta0 ? std::vector<double>(opts.theta0->values().begin(), opts.theta0->values().end())
                                      : std::vector<double>(n, 0.0);
  if (x.size() != n) throw InvalidInput("theta0 has the wrong length");

  const double dscale = std::max(1.0, d.max());
  std::vector<double> logd(n);
  for (std::size_t i = 0; i < n; ++i) logd[i] = std::log(d[i]);

  FitReport rep;
  std::vector<double> steps;
  std::vector<double> norms;
  std::vector<double> next(n);

  for (int k = 0;; ++k) {
    const double xnorm = norm_inf(x);
    if (!all_finite(x) || xnorm > opts.divergence_norm) {
      rep.diverged = true;
      rep.iterations = k;
      rep.diagnosis = "||theta||_inf exceeded " + std::to_string(opts.divergence_norm) + "; no MLE (d outside the interior of conv(W))";
      break;
    }
    if (opts.record_iterates) rep.iterates.push_back(x);

    const auto s = pair_mean_sums(regime, x);
    double residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      residual = std::max(residual, std::abs(d[i] - s[i]));
      next[i] = x[i] + (std::log(s[i]) - logd[i]) / (r - 1);
    }
    const double step = all_finite(next) ? max_abs_diff(next, x) : std::numeric_limits<double>::infinity();
    rep.residual_inf = residual;
    steps.push_back(step);
    norms.push_back(xnorm);
    if (opts.record_trace) rep.trace.push_back({k, step, residual});

    if (step <= opts.tol && residual <= opts.tol * dscale) {
      rep.converged = true;
      rep.iterations = k;
      rep.theta_hat = Potentials(x);
      rep.diagnosis = "converged";
      break;
    }
    if (k == opts.max_iter) {
      rep.iterations = k;
      std::string why;
      if (looks_divergent(steps, norms, why)) {
        rep.diverged = true;
        rep.diagnosis = "iteration budget exhausted and " + why + "; no MLE (d outside the interior of conv(W))";
      } else {
        rep.diagnosis = "iteration budget exhausted before convergence";
      }
      break;
    }
    x.swap(next);
  }
  rep.last_iterate = x;
  return rep;
}

ContractionInfo contraction_delta(int r, double K) {
  if (r < 2) throw InvalidInput("contraction_delta: r must be >= 2");
  if (!(K >= 0.0) || !std::isfinite(K)) throw InvalidInput("contraction_delta: K must be finite and >= 0");
  double first;
  double second;
  if (K == 0.0) {
    first = 1.0 / r;
    second = (r + 1) / 6.0;
  } else {
    // (e^{2K}-1)/(e^{2rK}-1) = e^{-2(r-1)K} (1-e^{-2K}) / (1-e^{-2rK})
    first = std::exp(-2.0 * (r - 1) * K) * (-std::expm1(-2.0 * K)) / (-std::expm1(-2.0 * r * K));
    const WeightRegime regime = WeightRegime::finite(r);
    second = -meanfn::mean_deriv(regime, 2.0 * K) / meanfn::mean(regime, -2.0 * K);
  }
  const double delta = std::min(first, second) / (r - 1);
  return {K, delta, std::sqrt(1.0 - delta * delta)};
}

double log_partition(const WeightRegime& regime, const Potentials& theta) {
  const std::size_t n = theta.size();
  detail::CompensatedSum z;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = meanfn::z1(regime, theta[i] + theta[j]);
      if (std::isinf(v)) return v;
      z.add(v);
    }
  }
  return z.value();
}

double log_likelihood(const WeightRegime& regime, const DegreeSequence& d, const Potentials& theta) {
  if (d.size() != theta.size()) throw InvalidInput("log_likelihood: size mismatch");
  const double z = log_partition(regime, theta);
  if (std::isinf(z)) return kNegInf;
  detail::CompensatedSum f;
  for (std::size_t i = 0; i < d.size(); ++i) f.add(-theta[i] * d[i]);
  f.add(-z);
  return f.value();
}

Eigen::MatrixXd hessian_logpartition(const WeightRegime& regime, const Potentials& theta) {
  if (!validate_potentials(theta, regime))
    throw InvalidInput("hessian_logpartition: theta outside the natural parameter space of " + regime.label());
  const auto n = static_cast<Eigen::Index>(theta.size());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  std::vector<detail::CompensatedSum> diag(theta.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double v = -meanfn::mean_deriv(regime, theta[static_cast<std::size_t>(i)] + theta[static_cast<std::size_t>(j)]);
      h(i, j) = v;
      h(j, i) = v;
      diag[static_cast<std::size_t>(i)].add(v);
      diag[static_cast<std::size_t>(j)].add(v);
    }
  }
  for (Eigen::Index i = 0; i < n; ++i) h(i, i) = diag[static_cast<std::size_t>(i)].value();
  return h;
}

FitReport fit_positive_regime(const WeightRegime& regime, const DegreeSequence& d, const SolverOptions& opts) {
  if (!regime.is_positive()) throw InvalidInput("fit_positive_regime: regime must be continuous or infinite");
  opts.validate();
  if (!graphical::in_mean_interior(regime, d))
    throw NoMle("d is not in the interior of the mean parameter space (need all d_i > 0 and max d_i < sum/2)");

  const std::size_t n = d.size();
  std::vector<double> theta;
  if (opts.theta0) {
    if (opts.theta0->size() != n) throw InvalidInput("theta0 has the wrong length");
    if (!validate_potentials(*opts.theta0, regime)) throw InvalidInput("theta0 outside the natural parameter space");
    theta.assign(opts.theta0->values().begin(), opts.theta0->values().end());
  } else {
    const double per_edge = d.sum() / static_cast<double>(n) / static_cast<double>(n - 1);
    theta.assign(n, 0.5 * meanfn::mean_inverse(regime, per_edge));
  }

  const double dscale = std::max(1.0, d.max());
  const auto nn = static_cast<Eigen::Index>(n);
  FitReport rep;
  double f_cur = log_likelihood(regime, d, Potentials(theta));
  double prev_step = std::numeric_limits<double>::infinity();

  for (int k = 0;; ++k) {
    const Potentials cur(theta);
    const auto expected = sampler::expected_degrees(regime, cur);
    Eigen::VectorXd g(nn);
    double residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      g[static_cast<Eigen::Index>(i)] = expected[i] - d[i];
      residual = std::max(residual, std::abs(expected[i] - d[i]));
    }
    rep.residual_inf = residual;
    if (opts.record_iterates) rep.iterates.push_back(theta);

    Eigen::MatrixXd h = hessian_logpartition(regime, cur);
    h.diagonal().array() += 1e-12;
    const Eigen::VectorXd delta = h.ldlt().solve(g);
    const double full_step = delta.cwiseAbs().maxCoeff();

    // The residual alone under-resolves theta near the boundary of the mean
    // space, so the Newton correction must also be small. A correction that
    // stops shrinking has hit the rounding floor and is accepted as well.
    const bool step_small = full_step <= opts.tol * std::max(1.0, norm_inf(theta)) || full_step >= prev_step;
    prev_step = full_step;
    if (residual <= opts.tol * dscale && step_small) {
      if (opts.record_trace) rep.trace.push_back({k, full_step, residual});
      rep.converged = true;
      rep.iterations = k;
      rep.theta_hat = cur;
      rep.diagnosis = "converged";
      break;
    }
    if (k == opts.max_iter) {
      if (opts.record_trace) rep.trace.push_back({k, full_step, residual});
      rep.iterations = k;
      rep.diagnosis = "iteration budget exhausted before convergence";
      break;
    }

    // Step halving keeps theta in Theta and the log-likelihood non-decreasing.
    const double slack = 1e-12 * std::max(1.0, std::abs(f_cur));
    double alpha = 1.0;
    bool accepted = false;
    std::vector<double> cand(n);
    double f_cand = kNegInf;
    for (int halving = 0; halving <= 60; ++halving, alpha *= 0.5) {
      for (std::size_t i = 0; i < n; ++i) cand[i] = theta[i] + alpha * delta[static_cast<Eigen::Index>(i)];
      if (!all_finite(cand) || min_pair_sum(cand) <= 0.0) continue;
      f_cand = log_likelihood(regime, d, Potentials(cand));
      if (f_cand >= f_cur - slack) {
        accepted = true;
        break;
      }
    }
    if (opts.record_trace) rep.trace.push_back({k, accepted ? alpha * full_step : 0.0, residual});
    if (!accepted) {
      rep.iterations = k;
      rep.diagnosis = "line search failed to find an ascent step inside Theta";
      break;
    }
    theta.swap(cand);
    f_cur = f_cand;
  }
  rep.last_iterate = theta;
  return rep;
}

FitReport fit(const WeightRegime& regime, const DegreeSequence& d, const SolverOptions& opts) {
  if (regime.kind() == RegimeKind::FiniteDiscrete) return fit_finite_discrete(d, regime.r(), opts);
  return fit_positive_regime(regime, d, opts);
}

double inverse_norm_bound(std::size_t n, double ell) {
  if (n < 3) throw InvalidInput("inverse_norm_bound: n must be >= 3");
  if (!(ell > 0.0)) throw InvalidInput("inverse_norm_bound: ell must be positive");
  const double nd = static_cast<double>(n);
  return (3.0 * nd - 4.0) / (2.0 * ell * (nd - 2.0) * (nd - 1.0));
}

double matrix_norm_inf(const Eigen::MatrixXd& a) { return a.cwiseAbs().rowwise().sum().maxCoeff(); }

}  // namespace maxent::mle
