#include "maxent/meanfn.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace maxent::meanfn {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Below this |t| the finite-regime closed forms suffer cancellation, so the
// r-term sums are used instead. The sums are exact enough everywhere on
// [0, 1) and cost O(r).
constexpr double kDirectSumBelow = 1.0;

struct FiniteMoments {
  double log_partition;
  double mean;
  double deriv;
};

// Moments of the finite regime for s >= 0 via q^a sums, q = e^{-s} <= 1.
FiniteMoments finite_direct(int r, double s) {
  const double q = std::exp(-s);
  double s0 = 0.0;
  double s1 = 0.0;
  double qa = 1.0;
  for (int a = 0; a < r; ++a) {
    s0 += qa;
    s1 += a * qa;
    qa *= q;
  }
  const double mu = s1 / s0;
  double s2 = 0.0;
  qa = 1.0;
  for (int a = 0; a < r; ++a) {
    const double dev = a - mu;
    s2 += dev * dev * qa;
    qa *= q;
  }
  return {std::log(s0), mu, -s2 / s0};
}

// Closed forms for s >= kDirectSumBelow.
FiniteMoments finite_closed(int r, double s) {
  const double q = std::exp(-s);
  const double qr = std::exp(-static_cast<double>(r) * s);
  const double one_minus_q = -std::expm1(-s);
  const double one_minus_qr = -std::expm1(-static_cast<double>(r) * s);
  const double mu = q / one_minus_q - r * qr / one_minus_qr;
  const double rr = static_cast<double>(r) * r;
  const double deriv = -q / (one_minus_q * one_minus_q) + rr * qr / (one_minus_qr * one_minus_qr);
  const double logz = std::log1p(-qr) - std::log(one_minus_q);
  return {logz, mu, deriv};
}

FiniteMoments finite_nonneg(int r, double s) {
  return s < kDirectSumBelow ? finite_direct(r, s) : finite_closed(r, s);
}

// Uses mu(-t) = (r-1) - mu(t), mu'(-t) = mu'(t) and
// Z1(-s) = (r-1) s + Z1(s) for t < 0.
FiniteMoments finite_moments(int r, double t) {
  if (t >= 0.0) return finite_nonneg(r, t);
  const double s = -t;
  FiniteMoments m = finite_nonneg(r, s);
  return {(r - 1) * s + m.log_partition, (r - 1) - m.mean, m.deriv};
}

void require_domain(const WeightRegime& regime, double t, const char* what) {
  if (!in_domain(regime, t))
    throw DomainError(std::string(what) + ": t = " + std::to_string(t) + " outside the domain of " + regime.label());
}

// Infinite regime: mu = 1/(e^t - 1), mu' = -e^t/(e^t - 1)^2, written in
// e^{-t} for large t so nothing overflows.
double infinite_mean(double t) {
  if (t <= 1.0) return 1.0 / std::expm1(t);
  return std::exp(-t) / -std::expm1(-t);
}

double infinite_deriv(double t) {
  const double em = std::expm1(-t);
  return -std::exp(-t) / (em * em);
}

}  // namespace

bool in_domain(const WeightRegime& regime, double t) noexcept {
  if (std::isnan(t)) return false;
  if (regime.kind() == RegimeKind::FiniteDiscrete) return std::isfinite(t);
  return t > 0.0 && t < kInf;
}

double z1(const WeightRegime& regime, double t) noexcept {
  switch (regime.kind()) {
    case RegimeKind::FiniteDiscrete:
      if (!std::isfinite(t)) return kInf;
      return finite_moments(regime.r(), t).log_partition;
    case RegimeKind::Continuous:
      if (!(t > 0.0)) return kInf;
      return -std::log(t);
    case RegimeKind::InfiniteDiscrete:
      if (!(t > 0.0)) return kInf;
      if (t > std::log(2.0)) return -std::log1p(-std::exp(-t));
      return -std::log(-std::expm1(-t));
  }
  return kInf;
}

double mean(const WeightRegime& regime, double t) {
  require_domain(regime, t, "mean");
  switch (regime.kind()) {
    case RegimeKind::FiniteDiscrete: return finite_moments(regime.r(), t).mean;
    case RegimeKind::Continuous: return 1.0 / t;
    case RegimeKind::InfiniteDiscrete: return infinite_mean(t);
  }
  return 0.0;
}

double mean_deriv(const WeightRegime& regime, double t) {
  require_domain(regime, t, "mean_deriv");
  switch (regime.kind()) {
    case RegimeKind::FiniteDiscrete: return finite_moments(regime.r(), t).deriv;
    case RegimeKind::Continuous: return -1.0 / (t * t);
    case RegimeKind::InfiniteDiscrete: return infinite_deriv(t);
  }
  return 0.0;
}

MarginalEval evaluate(const WeightRegime& regime, double t) {
  require_domain(regime, t, "evaluate");
  if (regime.kind() == RegimeKind::FiniteDiscrete) {
    const FiniteMoments m = finite_moments(regime.r(), t);
    return {t, m.log_partition, m.mean, m.deriv};
  }
  return {t, z1(regime, t), mean(regime, t), mean_deriv(regime, t)};
}

namespace {

// Solves mean(t) = m for t >= 0 when 0 < m <= (r-1)/2. Bracket grown
// geometrically from t = 1, then safeguarded Newton (bisection fallback).
double finite_inverse_upper(const WeightRegime& regime, double m) {
  double lo = 0.0;
  double hi = 1.0;
  while (mean(regime, hi) > m) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1.0e4) throw DomainError("mean_inverse: target mean too small to bracket");
  }
  double t = 0.5 * (lo + hi);
  for (int iter = 0; iter < 400; ++iter) {
    const double f = mean(regime, t) - m;
    if (f == 0.0) return t;
    if (f > 0.0)
      lo = t;
    else
      hi = t;
    const double fp = mean_deriv(regime, t);
    double next = t - f / fp;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - t) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t))) return next;
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, hi)) return next;
    t = next;
  }
  return t;
}

}  // namespace

double mean_inverse(const WeightRegime& regime, double m) {
  if (!std::isfinite(m) || m <= 0.0)
    throw DomainError("mean_inverse: m = " + std::to_string(m) + " outside the range of the mean function");
  switch (regime.kind()) {
    case RegimeKind::Continuous: return 1.0 / m;
    case RegimeKind::InfiniteDiscrete: return std::log1p(1.0 / m);
    case RegimeKind::FiniteDiscrete: {
      const double top = regime.r() - 1;
      if (m >= top)
        throw DomainError("mean_inverse: m = " + std::to_string(m) + " outside (0, r-1) for " + regime.label());
      const double mid = 0.5 * top;
      if (m == mid) return 0.0;
      if (m < mid) return finite_inverse_upper(regime, m);
      return -finite_inverse_upper(regime, top - m);
    }
  }
  return 0.0;
}

}  // namespace maxent::meanfn
