#pragma once

#include "maxent/core.hpp"

namespace maxent::meanfn {

/// Single-edge quantities at pairwise potential t = theta_i + theta_j.
struct MarginalEval {
  double t;
  double z1;        ///< marginal log-partition Z1(t)
  double mu;        ///< expected edge weight
  double mu_prime;  ///< d mu / dt, always negative
};

/// True iff t is in the interior of Dom(Z1): every real t for the finite
/// regime, t > 0 for the others.
bool in_domain(const WeightRegime& regime, double t) noexcept;

/// Marginal log-partition Z1(t) = log integral exp(-t a) nu(da).
/// Returns +infinity outside Dom(Z1); never throws.
///   finite:     log sum_{a<r} exp(-a t)      (log r at t = 0)
///   continuous: -log t
///   infinite:   -log(1 - exp(-t))
double z1(const WeightRegime& regime, double t) noexcept;

/// Mean function mu(t) = -Z1'(t). Throws DomainError outside the domain.
///   finite:     1/(e^t - 1) - r/(e^{rt} - 1)   ((r-1)/2 at t = 0)
///   continuous: 1/t
///   infinite:   1/(e^t - 1)
double mean(const WeightRegime& regime, double t);

/// mu'(t); throws DomainError outside the domain.
double mean_deriv(const WeightRegime& regime, double t);

/// t with mean(t) = m. The finite regime requires 0 < m < r-1, the others
/// m > 0. Throws DomainError otherwise.
double mean_inverse(const WeightRegime& regime, double m);

MarginalEval evaluate(const WeightRegime& regime, double t);

}  // namespace maxent::meanfn
