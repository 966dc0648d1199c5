#include "maxent/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace maxent {

WeightRegime WeightRegime::finite(int r) {
  if (r < 2) throw InvalidInput("finite regime requires r >= 2, got " + std::to_string(r));
  return WeightRegime(RegimeKind::FiniteDiscrete, r);
}

WeightRegime WeightRegime::parse(std::string_view kind, int r) {
  if (kind == "finite") return finite(r);
  if (kind == "infinite") return infinite();
  if (kind == "continuous") return continuous();
  throw InvalidInput("unknown regime '" + std::string(kind) + "' (expected finite, infinite or continuous)");
}

std::string_view WeightRegime::name() const noexcept {
  switch (kind_) {
    case RegimeKind::FiniteDiscrete: return "finite";
    case RegimeKind::InfiniteDiscrete: return "infinite";
    case RegimeKind::Continuous: return "continuous";
  }
  return "unknown";
}

std::string WeightRegime::label() const {
  if (kind_ == RegimeKind::FiniteDiscrete) return "finite(r=" + std::to_string(r_) + ")";
  return std::string(name());
}

bool WeightRegime::admits_weight(double w) const noexcept {
  if (!std::isfinite(w) || w < 0.0) return false;
  switch (kind_) {
    case RegimeKind::FiniteDiscrete: return w == std::floor(w) && w <= r_ - 1;
    case RegimeKind::InfiniteDiscrete: return w == std::floor(w);
    case RegimeKind::Continuous: return true;
  }
  return false;
}

// ---------------------------------------------------------------------------

DegreeSequence::DegreeSequence(std::vector<double> values) : d_(std::move(values)) {
  if (d_.size() < kMinVertices)
    throw InvalidInput("degree sequence needs at least 3 entries, got " + std::to_string(d_.size()));
  for (std::size_t i = 0; i < d_.size(); ++i) {
    if (!std::isfinite(d_[i]) || d_[i] < 0.0)
      throw InvalidInput("degree entry " + std::to_string(i) + " is negative or not finite");
  }
}

double DegreeSequence::sum() const { return std::accumulate(d_.begin(), d_.end(), 0.0); }

double DegreeSequence::max() const { return *std::max_element(d_.begin(), d_.end()); }

bool DegreeSequence::is_integral() const noexcept {
  return std::all_of(d_.begin(), d_.end(), [](double v) {
    return v == std::floor(v) && v < 9.0e15;
  });
}

std::vector<std::int64_t> DegreeSequence::as_integers() const {
  if (!is_integral()) throw InvalidInput("degree sequence has non-integer entries");
  std::vector<std::int64_t> out(d_.size());
  std::transform(d_.begin(), d_.end(), out.begin(), [](double v) { return static_cast<std::int64_t>(v); });
  return out;
}

// ---------------------------------------------------------------------------

Potentials::Potentials(std::vector<double> theta) : theta_(std::move(theta)) {
  if (theta_.size() < kMinVertices)
    throw InvalidInput("potentials need at least 3 entries, got " + std::to_string(theta_.size()));
  for (std::size_t i = 0; i < theta_.size(); ++i) {
    if (!std::isfinite(theta_[i]))
      throw InvalidInput("potential entry " + std::to_string(i) + " is not finite");
  }
}

double Potentials::norm_inf() const noexcept {
  double m = 0.0;
  for (double v : theta_) m = std::max(m, std::abs(v));
  return m;
}

double distance_inf(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw InvalidInput("distance_inf: size mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double min_pair_sum(std::span<const double> theta) {
  if (theta.size() < 2) return std::numeric_limits<double>::infinity();
  // The two smallest entries give the smallest pairwise sum.
  double lo1 = std::numeric_limits<double>::infinity();
  double lo2 = lo1;
  for (double v : theta) {
    if (v < lo1) {
      lo2 = lo1;
      lo1 = v;
    } else if (v < lo2) {
      lo2 = v;
    }
  }
  return lo1 + lo2;
}

bool validate_potentials(const Potentials& theta, const WeightRegime& regime) {
  if (!regime.is_positive()) return true;
  return min_pair_sum(theta.values()) > 0.0;
}

// ---------------------------------------------------------------------------

WeightedGraph::WeightedGraph(std::size_t n, WeightRegime regime)
    : WeightedGraph(n, regime, std::vector<double>(n < kMinVertices ? 0 : pair_count(n), 0.0)) {}

WeightedGraph::WeightedGraph(std::size_t n, WeightRegime regime, std::vector<double> packed)
    : n_(n), regime_(regime), w_(std::move(packed)) {
  if (n_ < kMinVertices) throw InvalidInput("graph needs at least 3 vertices, got " + std::to_string(n_));
  if (w_.size() != pair_count(n_)) throw InvalidInput("packed weight array has wrong length");
  for (double w : w_) {
    if (!regime_.admits_weight(w))
      throw InvalidInput("edge weight " + std::to_string(w) + " not admissible under " + regime_.label());
  }
}

double WeightedGraph::weight(std::size_t i, std::size_t j) const {
  if (i >= n_ || j >= n_) throw InvalidInput("vertex index out of range");
  if (i == j) return 0.0;
  if (i > j) std::swap(i, j);
  return w_[pair_index(n_, i, j)];
}

void WeightedGraph::set_weight(std::size_t i, std::size_t j, double w) {
  if (i >= n_ || j >= n_ || i == j) throw InvalidInput("invalid edge (" + std::to_string(i) + "," + std::to_string(j) + ")");
  if (!regime_.admits_weight(w))
    throw InvalidInput("edge weight " + std::to_string(w) + " not admissible under " + regime_.label());
  if (i > j) std::swap(i, j);
  w_[pair_index(n_, i, j)] = w;
}

DegreeSequence degree_sequence(const WeightedGraph& g) {
  const std::size_t n = g.n();
  const auto w = g.packed();
  std::vector<double> d(n, 0.0);
  if (g.regime().is_discrete()) {
    std::vector<std::int64_t> acc(n, 0);
    std::size_t e = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j, ++e) {
        const auto a = static_cast<std::int64_t>(w[e]);
        acc[i] += a;
        acc[j] += a;
      }
    }
    std::transform(acc.begin(), acc.end(), d.begin(), [](std::int64_t v) { return static_cast<double>(v); });
  } else {
    std::size_t e = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j, ++e) {
        d[i] += w[e];
        d[j] += w[e];
      }
    }
  }
  return DegreeSequence(std::move(d));
}

}  // namespace maxent
