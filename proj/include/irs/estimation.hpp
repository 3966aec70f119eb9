#pragma once

#include <cstddef>

#include "irs/linalg.hpp"
#include "irs/random.hpp"
#include "irs/training.hpp"

namespace irs {

/// Received pilots of one training phase. Pilots are constant sqrt(pt).
struct TrainingObservation {
  ComplexVector y_p;
  ComplexVector pilots;
  ReflectionPattern pattern;
};

struct EstimationResult {
  ComplexVector h_est;
  /// (sigma2 / pt) (Theta^H Theta)^{-1}
  ComplexMatrix cov;
  double mse_analytic;
};

/// y_p[m] = x_p[m] (row m of Theta) h_ext + z_p[m], z_p ~ CN(0, sigma2).
TrainingObservation simulate_training(std::span<const complex> h_ext, const ReflectionPattern& pattern, double pt,
                                      double sigma2, Rng& rng);

/// h_est = Theta^{-1} X_p^{-1} y_p. Throws SingularMatrix for rank-deficient patterns.
EstimationResult ls_estimate(const TrainingObservation& obs, double pt, double sigma2);

/// Monte-Carlo mean of ||h_est - h_ext||^2 over independent noise draws.
double empirical_mse(std::span<const complex> h_ext, const ReflectionPattern& pattern, double pt, double sigma2,
                     std::size_t trials, Rng& rng);

}  // namespace irs
