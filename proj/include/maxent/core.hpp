#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace maxent {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

/// Malformed or out-of-contract input (bad n, negative degree, wrong regime...).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside the domain of a mean / log-partition function.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The operation has no closed-form characterization for this regime.
class UnsupportedRegime : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The observed degree sequence is not in the interior of the mean space, so
/// the maximum-likelihood estimate does not exist.
class NoMle : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Weight regime
// ---------------------------------------------------------------------------

enum class RegimeKind { FiniteDiscrete, InfiniteDiscrete, Continuous };

/// Selects the edge-weight set S and its base measure:
///   FiniteDiscrete(r)  S = {0, ..., r-1}, counting measure
///   InfiniteDiscrete   S = {0, 1, 2, ...}, counting measure
///   Continuous         S = [0, inf),       Lebesgue measure
class WeightRegime {
 public:
  static WeightRegime finite(int r);
  static WeightRegime infinite() { return WeightRegime(RegimeKind::InfiniteDiscrete, 0); }
  static WeightRegime continuous() { return WeightRegime(RegimeKind::Continuous, 0); }

  /// Parses "finite" / "infinite" / "continuous"; `r` is only read for finite.
  static WeightRegime parse(std::string_view kind, int r = 0);

  RegimeKind kind() const noexcept { return kind_; }
  /// Number of atoms for FiniteDiscrete; 0 otherwise.
  int r() const noexcept { return r_; }

  bool is_discrete() const noexcept { return kind_ != RegimeKind::Continuous; }
  /// Regimes whose natural parameter space requires theta_i + theta_j > 0.
  bool is_positive() const noexcept { return kind_ != RegimeKind::FiniteDiscrete; }

  /// "finite", "infinite" or "continuous".
  std::string_view name() const noexcept;
  /// Human-readable label, e.g. "finite(r=5)".
  std::string label() const;

  /// True iff w is an admissible edge weight.
  bool admits_weight(double w) const noexcept;

  friend bool operator==(const WeightRegime&, const WeightRegime&) = default;

 private:
  WeightRegime(RegimeKind kind, int r) : kind_(kind), r_(r) {}

  RegimeKind kind_;
  int r_;
};

// ---------------------------------------------------------------------------
// Degree sequences and potentials
// ---------------------------------------------------------------------------

inline constexpr std::size_t kMinVertices = 3;

/// Vector of per-vertex degree sums. Entries are finite and nonnegative,
/// length >= 3.
class DegreeSequence {
 public:
  explicit DegreeSequence(std::vector<double> values);

  std::size_t size() const noexcept { return d_.size(); }
  double operator[](std::size_t i) const { return d_[i]; }
  std::span<const double> values() const noexcept { return d_; }

  double sum() const;
  double max() const;

  /// True iff every entry is an exact integer.
  bool is_integral() const noexcept;
  /// Exact integer copy; throws InvalidInput when an entry is not integral.
  std::vector<std::int64_t> as_integers() const;

  friend bool operator==(const DegreeSequence&, const DegreeSequence&) = default;

 private:
  std::vector<double> d_;
};

/// Vertex potentials theta. Finite values, length >= 3. Membership in the
/// natural parameter space depends on the regime (see validate_potentials).
class Potentials {
 public:
  explicit Potentials(std::vector<double> theta);
  static Potentials zeros(std::size_t n) { return Potentials(std::vector<double>(n, 0.0)); }
  static Potentials constant(std::size_t n, double v) { return Potentials(std::vector<double>(n, v)); }

  std::size_t size() const noexcept { return theta_.size(); }
  double operator[](std::size_t i) const { return theta_[i]; }
  std::span<const double> values() const noexcept { return theta_; }

  double norm_inf() const noexcept;

  friend bool operator==(const Potentials&, const Potentials&) = default;

 private:
  std::vector<double> theta_;
};

/// max_i |a_i - b_i|; sizes must match.
double distance_inf(std::span<const double> a, std::span<const double> b);

/// True iff theta lies in the natural parameter space of the regime: always
/// for FiniteDiscrete, pairwise sums strictly positive otherwise.
bool validate_potentials(const Potentials& theta, const WeightRegime& regime);

/// Smallest pairwise sum theta_i + theta_j over i != j.
double min_pair_sum(std::span<const double> theta);

// ---------------------------------------------------------------------------
// Weighted graph
// ---------------------------------------------------------------------------

/// Number of unordered pairs i < j.
constexpr std::size_t pair_count(std::size_t n) noexcept { return n * (n - 1) / 2; }

/// Row-major index of pair (i, j), i < j, in the packed upper triangle.
constexpr std::size_t pair_index(std::size_t n, std::size_t i, std::size_t j) noexcept {
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

/// Undirected weighted graph without self-loops. Only the strict upper
/// triangle is stored, so symmetry holds by construction.
class WeightedGraph {
 public:
  /// All-zero graph.
  WeightedGraph(std::size_t n, WeightRegime regime);
  /// Takes a packed upper triangle of length n(n-1)/2; every entry must be
  /// admissible under the regime.
  WeightedGraph(std::size_t n, WeightRegime regime, std::vector<double> packed);

  std::size_t n() const noexcept { return n_; }
  const WeightRegime& regime() const noexcept { return regime_; }

  /// a_ij for any i, j; a_ii = 0.
  double weight(std::size_t i, std::size_t j) const;
  void set_weight(std::size_t i, std::size_t j, double w);

  std::span<const double> packed() const noexcept { return w_; }

 private:
  std::size_t n_;
  WeightRegime regime_;
  std::vector<double> w_;
};

/// d_i = sum_{j != i} a_ij. Exact integer accumulation for discrete regimes.
DegreeSequence degree_sequence(const WeightedGraph& g);

}  // namespace maxent
