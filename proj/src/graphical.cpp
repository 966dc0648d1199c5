#include "maxent/graphical.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace maxent::graphical {

namespace {

GraphicalityVerdict finite_verdict(std::int64_t rm1, std::vector<std::int64_t> d) {
  std::sort(d.begin(), d.end(), std::greater<>());
  const std::size_t n = d.size();

  // suffix[p] = sum_{j >= p} d_j (0-based).
  std::vector<std::int64_t> suffix(n + 1, 0);
  for (std::size_t p = n; p-- > 0;) suffix[p] = suffix[p + 1] + d[p];

  GraphicalityVerdict v;
  v.parity_ok = suffix[0] % 2 == 0;

  std::int64_t lhs = 0;
  for (std::size_t k = 1; k <= n; ++k) {
    lhs += d[k - 1];
    const auto kk = static_cast<std::int64_t>(k);
    const std::int64_t cap = rm1 * kk;
    // Tail is d[k..n-1], descending. Entries above cap come first.
    const auto first_small = std::partition_point(d.begin() + static_cast<std::ptrdiff_t>(k), d.end(),
                                                  [cap](std::int64_t x) { return x > cap; });
    const auto p = static_cast<std::size_t>(first_small - d.begin());
    const std::int64_t rhs = rm1 * kk * (kk - 1) + cap * static_cast<std::int64_t>(p - k) + suffix[p];
    if (lhs > rhs) {
      v.violated_k = k;
      break;
    }
  }
  v.graphic = v.parity_ok && !v.violated_k;
  return v;
}

}  // namespace

GraphicalityVerdict is_graphical(const WeightRegime& regime, const DegreeSequence& d) {
  switch (regime.kind()) {
    case RegimeKind::FiniteDiscrete:
      return finite_verdict(regime.r() - 1, d.as_integers());
    case RegimeKind::InfiniteDiscrete: {
      const auto ints = d.as_integers();
      const std::int64_t sum = std::accumulate(ints.begin(), ints.end(), std::int64_t{0});
      const std::int64_t mx = *std::max_element(ints.begin(), ints.end());
      GraphicalityVerdict v;
      v.parity_ok = sum % 2 == 0;
      v.graphic = v.parity_ok && 2 * mx <= sum;
      return v;
    }
    case RegimeKind::Continuous: {
      GraphicalityVerdict v;
      v.graphic = d.max() <= 0.5 * d.sum();
      return v;
    }
  }
  return {};
}

bool in_mean_interior(const WeightRegime& regime, const DegreeSequence& d) {
  if (!regime.is_positive())
    throw UnsupportedRegime("in_mean_interior: no closed-form interior test for " + regime.label() +
                            "; use the fixed-point solver's divergence diagnosis");
  const auto vals = d.values();
  if (std::any_of(vals.begin(), vals.end(), [](double x) { return x <= 0.0; })) return false;
  return d.max() < 0.5 * d.sum();
}

// ---------------------------------------------------------------------------

namespace {

std::int64_t effective_cap(const WeightRegime& regime, std::int64_t weight_cap) {
  if (weight_cap < 0) throw InvalidInput("brute force: weight_cap must be nonnegative");
  if (regime.kind() == RegimeKind::FiniteDiscrete) return std::min<std::int64_t>(weight_cap, regime.r() - 1);
  return weight_cap;
}

void check_brute_force_input(const WeightRegime& regime, const DegreeSequence& d) {
  if (!regime.is_discrete()) throw InvalidInput("brute force search requires a discrete regime");
  if (d.size() > kBruteForceMaxVertices) throw InvalidInput("brute force search limited to n <= 6");
}

// Number of compositions of m into k nonnegative parts, C(m+k-1, k-1).
double compositions(std::int64_t m, std::size_t k) {
  double c = 1.0;
  for (std::size_t i = 1; i < k; ++i) c = c * static_cast<double>(m + static_cast<std::int64_t>(i)) / static_cast<double>(i);
  return c;
}

class RealizationSearch {
 public:
  RealizationSearch(std::vector<std::int64_t> residual, std::int64_t cap)
      : n_(residual.size()), cap_(cap), residual_(std::move(residual)), weights_(pair_count(n_), 0) {}

  bool run() { return fill_vertex(0); }
  const std::vector<std::int64_t>& weights() const { return weights_; }

 private:
  bool fill_vertex(std::size_t i) {
    if (i + 1 == n_) return residual_[i] == 0;
    return fill_edge(i, i + 1, residual_[i]);
  }

  // Assigns a_{i,j}, a_{i,j+1}, ... so that they sum to `need`.
  bool fill_edge(std::size_t i, std::size_t j, std::int64_t need) {
    if (j == n_) {
      if (need != 0) return false;
      return fill_vertex(i + 1);
    }
    std::int64_t room = 0;
    for (std::size_t k = j; k < n_; ++k) room += std::min(cap_, residual_[k]);
    if (need > room) return false;

    const std::int64_t hi = std::min({cap_, residual_[j], need});
    for (std::int64_t w = hi; w >= 0; --w) {
      residual_[j] -= w;
      weights_[pair_index(n_, i, j)] = w;
      const bool ok = fill_edge(i, j + 1, need - w);
      residual_[j] += w;
      if (ok) return true;
    }
    weights_[pair_index(n_, i, j)] = 0;
    return false;
  }

  std::size_t n_;
  std::int64_t cap_;
  std::vector<std::int64_t> residual_;
  std::vector<std::int64_t> weights_;
};

}  // namespace

double brute_force_search_size(const WeightRegime& regime, const DegreeSequence& d, std::int64_t weight_cap) {
  check_brute_force_input(regime, d);
  const std::int64_t cap = effective_cap(regime, weight_cap);
  const auto ints = d.as_integers();
  const std::size_t n = ints.size();
  double size = 1.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const std::size_t forward = n - 1 - i;
    const double by_cap = std::pow(static_cast<double>(cap + 1), static_cast<double>(forward));
    size *= std::min(by_cap, compositions(ints[i], forward));
  }
  return size;
}

std::optional<WeightedGraph> brute_force_realization(const WeightRegime& regime, const DegreeSequence& d,
                                                     std::int64_t weight_cap) {
  const double size = brute_force_search_size(regime, d, weight_cap);
  if (size > kBruteForceLimit)
    throw InvalidInput("brute force search space " + std::to_string(size) + " exceeds the 1e8 limit");
  RealizationSearch search(d.as_integers(), effective_cap(regime, weight_cap));
  if (!search.run()) return std::nullopt;
  const auto& w = search.weights();
  std::vector<double> packed(w.begin(), w.end());
  return WeightedGraph(d.size(), regime, std::move(packed));
}

bool brute_force_graphical(const WeightRegime& regime, const DegreeSequence& d, std::int64_t weight_cap) {
  return brute_force_realization(regime, d, weight_cap).has_value();
}

}  // namespace maxent::graphical
