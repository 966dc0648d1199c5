#include "maxent/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "maxent/graphical.hpp"

namespace maxent::experiments {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct ThetaDraw {
  const std::size_t n;
  const SeededRng& rng;
  std::vector<double> operator()(const UniformBox& b) const {
    std::vector<double> t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = b.lo + (b.hi - b.lo) * rng.uniform_open(i);
    return t;
  }
  std::vector<double> operator()(const SymmetricShifted& s) const {
    std::vector<double> t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = s.base + s.jitter * (2.0 * rng.uniform_open(i) - 1.0);
    return t;
  }
};

// Decides whether an MLE exists for d and fits it when it does.
struct FitAttempt {
  mle::FitReport fit;
  bool existed;
  std::string diagnosis;
};

FitAttempt attempt_fit(const WeightRegime& regime, const DegreeSequence& d, const mle::SolverOptions& solver) {
  const auto vals = d.values();
  if (std::any_of(vals.begin(), vals.end(), [](double x) { return x <= 0.0; }))
    return {{}, false, "degree sequence has an isolated vertex; no MLE"};
  if (regime.is_positive() && !graphical::in_mean_interior(regime, d))
    return {{}, false, "d outside the interior of the mean space; no MLE"};
  mle::FitReport fit = mle::fit(regime, d, solver);
  const bool ok = fit.converged;
  std::string diag = fit.diagnosis;
  return {std::move(fit), ok, std::move(diag)};
}

}  // namespace

Potentials draw_theta(const ThetaLaw& law, std::size_t n, const SeededRng& rng) {
  return Potentials(std::visit(ThetaDraw{n, rng}, law));
}

void ExperimentConfig::validate() const {
  if (replicates < 1) throw InvalidInput("experiment needs replicates >= 1");
  if (n_values.empty()) throw InvalidInput("experiment needs at least one n");
  for (std::size_t n : n_values)
    if (n < kMinVertices) throw InvalidInput("experiment n values must be >= 3");
  if (const auto* box = std::get_if<UniformBox>(&theta_law)) {
    if (!(box->lo <= box->hi)) throw InvalidInput("uniform box needs lo <= hi");
    if (regime.is_positive() && !(box->lo > 0.0))
      throw InvalidInput("positive regimes need a box with lo > 0 so every pairwise sum is positive");
  } else {
    const auto& s = std::get<SymmetricShifted>(theta_law);
    if (!(s.jitter >= 0.0)) throw InvalidInput("symmetric-shifted law needs jitter >= 0");
    if (regime.is_positive() && !(s.base > s.jitter))
      throw InvalidInput("positive regimes need base > jitter so every pairwise sum is positive");
  }
  solver.validate();
}

ReplicateStreams replicate_streams(std::uint64_t seed, std::size_t n, int rep) {
  const SeededRng base = SeededRng{seed, 0}.child(n, static_cast<std::uint64_t>(rep));
  return {base.child(0), base.child(1)};
}

ReplicateOutcome run_replicate(const ExperimentConfig& config, std::size_t n, int rep) {
  const auto streams = replicate_streams(config.seed, n, rep);
  Potentials theta = draw_theta(config.theta_law, n, streams.theta);
  DegreeSequence d = degree_sequence(sampler::sample_graph(config.regime, theta, streams.graph));
  FitAttempt a = attempt_fit(config.regime, d, config.solver);
  return {n, rep, std::move(theta), std::move(d), std::move(a.fit), a.existed, std::move(a.diagnosis)};
}

ConsistencyResult run_consistency_experiment(const ExperimentConfig& config, unsigned threads) {
  config.validate();
  struct Task {
    std::size_t n;
    int rep;
  };
  std::vector<Task> tasks;
  for (std::size_t n : config.n_values)
    for (int rep = 0; rep < config.replicates; ++rep) tasks.push_back({n, rep});

  std::vector<std::optional<ReplicateOutcome>> outcomes(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) outcomes[i] = run_replicate(config, tasks[i].n, tasks[i].rep);
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(tasks.size())));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
  }

  ConsistencyResult result;
  for (const auto& o : outcomes) {
    ConsistencyRow row{o->n, o->replicate, std::nullopt, std::nullopt, o->existed, o->fit.iterations, o->fit.residual_inf};
    if (o->existed) {
      const double err = distance_inf(o->fit.theta_hat->values(), o->theta.values());
      const double nd = static_cast<double>(o->n);
      row.err_inf = err;
      row.err_scaled = err * std::sqrt(nd / std::log(nd));
    }
    result.rows.push_back(row);
  }

  for (std::size_t n : config.n_values) {
    std::vector<double> errs;
    std::vector<double> scaled;
    for (const auto& row : result.rows) {
      if (row.n != n || !row.existed) continue;
      errs.push_back(*row.err_inf);
      scaled.push_back(*row.err_scaled);
    }
    ConsistencySummary s{n, config.replicates, static_cast<int>(errs.size()),
                         static_cast<double>(errs.size()) / config.replicates, kNaN, kNaN, kNaN, kNaN};
    if (!errs.empty()) {
      s.q05 = quantile(errs, 0.05);
      s.median = quantile(errs, 0.5);
      s.q95 = quantile(errs, 0.95);
      s.median_scaled = quantile(scaled, 0.5);
    }
    result.summary.push_back(s);
  }

  if (config.keep_outcomes)
    for (auto& o : outcomes) result.outcomes.push_back(std::move(*o));
  return result;
}

// ---------------------------------------------------------------------------

TraceResult trace_fit(const WeightRegime& regime, const Potentials& theta_true, const DegreeSequence& d,
                      const mle::SolverOptions& solver) {
  mle::SolverOptions opts = solver;
  opts.record_trace = true;
  opts.record_iterates = true;
  FitAttempt a = attempt_fit(regime, d, opts);
  TraceResult tr{regime, theta_true, d, std::move(a.fit), a.existed, {}, std::nullopt, 0.0, 0.0};
  if (!tr.existed) {
    tr.fit.diagnosis = a.diagnosis;
    return tr;
  }

  const auto& final_theta = tr.fit.theta_hat->values();
  std::vector<double> dist;
  for (const auto& it : tr.fit.iterates) dist.push_back(distance_inf(it, final_theta));
  for (std::size_t k = 0; k < tr.fit.trace.size(); ++k) {
    const auto& e = tr.fit.trace[k];
    const double ld = k < dist.size() ? std::log10(dist[k]) : -std::numeric_limits<double>::infinity();
    tr.rows.push_back({e.iter, e.step_inf, e.residual_inf, ld});
  }

  if (regime.kind() == RegimeKind::FiniteDiscrete) {
    const double theta0_norm = solver.theta0 ? solver.theta0->norm_inf() : 0.0;
    tr.contraction = mle::contraction_delta(regime.r(), 2.0 * tr.fit.theta_hat->norm_inf() + theta0_norm);
  }

  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t k = 1; k < dist.size(); ++k) {
    if (dist[k] < kTraceFloor) break;
    xs.push_back(static_cast<double>(k));
    ys.push_back(std::log10(dist[k]));
  }
  if (xs.size() >= 2) tr.slope = least_squares(xs, ys).slope;
  for (std::size_t k = 0; k + 2 < dist.size(); ++k) {
    if (dist[k] < kTraceFloor) break;
    tr.max_two_step_ratio = std::max(tr.max_two_step_ratio, dist[k + 2] / dist[k]);
  }
  return tr;
}

TraceResult run_convergence_trace(const WeightRegime& regime, const Potentials& theta, bool exact_moments,
                                  std::uint64_t seed, const mle::SolverOptions& solver) {
  const auto streams = replicate_streams(seed, theta.size(), 0);
  DegreeSequence d = exact_moments ? sampler::expected_degrees(regime, theta)
                                   : degree_sequence(sampler::sample_graph(regime, theta, streams.graph));
  return trace_fit(regime, theta, d, solver);
}

TraceResult run_convergence_trace(const WeightRegime& regime, std::size_t n, const ThetaLaw& law, std::uint64_t seed,
                                  const mle::SolverOptions& solver) {
  const auto streams = replicate_streams(seed, n, 0);
  return run_convergence_trace(regime, draw_theta(law, n, streams.theta), false, seed, solver);
}

// ---------------------------------------------------------------------------

ScatterResult run_scatter(const WeightRegime& regime, const Potentials& theta, bool exact_moments, std::uint64_t seed,
                          const mle::SolverOptions& solver) {
  const auto streams = replicate_streams(seed, theta.size(), 0);
  const DegreeSequence d = exact_moments ? sampler::expected_degrees(regime, theta)
                                         : degree_sequence(sampler::sample_graph(regime, theta, streams.graph));
  FitAttempt a = attempt_fit(regime, d, solver);
  ScatterResult sr{regime, a.existed, a.diagnosis, {}, {d.values().begin(), d.values().end()}, 0.0, 0.0, 0.0,
                   a.fit.iterations};
  if (!a.existed) return sr;
  const auto& est = a.fit.theta_hat->values();
  std::vector<double> x(theta.values().begin(), theta.values().end());
  std::vector<double> y(est.begin(), est.end());
  for (std::size_t i = 0; i < x.size(); ++i) sr.rows.push_back({x[i], y[i]});
  sr.max_abs_err = distance_inf(x, y);
  const LineFit lf = least_squares(x, y);
  sr.slope = lf.slope;
  sr.intercept = lf.intercept;
  return sr;
}

ScatterResult run_scatter(const WeightRegime& regime, std::size_t n, const ThetaLaw& law, std::uint64_t seed,
                          const mle::SolverOptions& solver) {
  const auto streams = replicate_streams(seed, n, 0);
  return run_scatter(regime, draw_theta(law, n, streams.theta), false, seed, solver);
}

// ---------------------------------------------------------------------------

double quantile(std::vector<double> values, double p) {
  if (values.empty()) throw InvalidInput("quantile of an empty sample");
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("quantile level must lie in [0, 1]");
  std::sort(values.begin(), values.end());
  const double h = (static_cast<double>(values.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

LineFit least_squares(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw InvalidInput("least_squares needs two equal-length samples of size >= 2");
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (sxx == 0.0) return {0.0, my};
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

}  // namespace maxent::experiments
