#include "maxent/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "maxent/meanfn.hpp"
#include "summation.hpp"

namespace maxent::sampler {

namespace {

double draw_finite(int r, double t, double u) {
  // Weights proportional to e^{-a t}, shifted so the largest is 1.
  const int peak = t >= 0.0 ? 0 : r - 1;
  std::vector<double> w(static_cast<std::size_t>(r));
  double total = 0.0;
  for (int a = 0; a < r; ++a) {
    w[static_cast<std::size_t>(a)] = std::exp(-(a - peak) * t);
    total += w[static_cast<std::size_t>(a)];
  }
  const double target = u * total;
  double cum = 0.0;
  for (int a = 0; a < r; ++a) {
    cum += w[static_cast<std::size_t>(a)];
    if (target < cum) return a;
  }
  return r - 1;
}

}  // namespace

double draw_weight(const WeightRegime& regime, double t, double u) {
  if (!meanfn::in_domain(regime, t)) throw InvalidInput("draw_weight: pairwise potential outside the domain");
  switch (regime.kind()) {
    case RegimeKind::FiniteDiscrete:
      return draw_finite(regime.r(), t, u);
    case RegimeKind::Continuous:
      return -std::log(u) / t;
    case RegimeKind::InfiniteDiscrete: {
      // P(A >= a) = e^{-t a}, so A = floor(-log(u)/t). Clamped to the range
      // where doubles still represent every integer.
      const double a = std::floor(-std::log(u) / t);
      return std::min(a, 9.0e15);
    }
  }
  return 0.0;
}

WeightedGraph sample_graph(const WeightRegime& regime, const Potentials& theta, const SeededRng& rng) {
  if (!validate_potentials(theta, regime))
    throw InvalidInput("sample_graph: theta outside the natural parameter space of " + regime.label());
  const std::size_t n = theta.size();
  std::vector<double> packed(pair_count(n));
  std::size_t e = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++e) {
      packed[e] = draw_weight(regime, theta[i] + theta[j], rng.uniform_open(e));
    }
  }
  return WeightedGraph(n, regime, std::move(packed));
}

DegreeSequence expected_degrees(const WeightRegime& regime, const Potentials& theta) {
  if (!validate_potentials(theta, regime))
    throw InvalidInput("expected_degrees: theta outside the natural parameter space of " + regime.label());
  const std::size_t n = theta.size();
  std::vector<detail::CompensatedSum> rows(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double m = meanfn::mean(regime, theta[i] + theta[j]);
      rows[i].add(m);
      rows[j].add(m);
    }
  }
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = rows[i].value();
  return DegreeSequence(std::move(d));
}

}  // namespace maxent::sampler
