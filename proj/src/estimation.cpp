#include "irs/estimation.hpp"

#include <cmath>

#include "irs/errors.hpp"

namespace irs {

TrainingObservation simulate_training(std::span<const complex> h_ext, const ReflectionPattern& pattern, double pt,
                                      double sigma2, Rng& rng) {
  if (h_ext.size() != pattern.size()) throw ValidationError("simulate_training: channel/pattern size mismatch");
  if (!(pt > 0.0) || !(sigma2 >= 0.0)) throw ValidationError("simulate_training: need pt > 0 and sigma2 >= 0");
  const std::size_t n = pattern.size();
  ComplexVector pilots(n, complex{std::sqrt(pt), 0.0});
  ComplexVector y = pattern.matrix() * h_ext;
  for (std::size_t m = 0; m < n; ++m) {
    y[m] *= pilots[m];
    if (sigma2 > 0.0) y[m] += complex_gaussian(rng, sigma2);
  }
  return {std::move(y), std::move(pilots), pattern};
}

EstimationResult ls_estimate(const TrainingObservation& obs, double pt, double sigma2) {
  const std::size_t n = obs.pattern.size();
  if (obs.y_p.size() != n || obs.pilots.size() != n)
    throw ValidationError("ls_estimate: observation size mismatch");
  if (!(pt > 0.0)) throw ValidationError("ls_estimate: transmit power must be positive");
  ComplexVector g(n);
  for (std::size_t m = 0; m < n; ++m) {
    if (obs.pilots[m] == complex{}) throw ValidationError("ls_estimate: zero pilot");
    g[m] = obs.y_p[m] / obs.pilots[m];
  }
  EstimationResult out;
  out.h_est = solve(obs.pattern.matrix(), g);
  out.cov = hermitian_part(invert(obs.pattern.gram()) * complex{sigma2 / pt, 0.0});
  out.mse_analytic = trace(out.cov).real();
  return out;
}

double empirical_mse(std::span<const complex> h_ext, const ReflectionPattern& pattern, double pt, double sigma2,
                     std::size_t trials, Rng& rng) {
  if (trials < 1) throw ValidationError("empirical_mse: need at least one trial");
  // The pattern factorization does not depend on the noise draw.
  const auto lu = lu_factor(pattern.matrix());
  if (!(lu.min_relative_pivot > kSingularTolerance)) throw SingularMatrix("empirical_mse: singular pattern");
  double total = 0.0;
  ComplexVector g(pattern.size());
  for (std::size_t t = 0; t < trials; ++t) {
    const auto obs = simulate_training(h_ext, pattern, pt, sigma2, rng);
    for (std::size_t m = 0; m < g.size(); ++m) g[m] = obs.y_p[m] / obs.pilots[m];
    const auto h_est = lu_solve(lu, g);
    for (std::size_t m = 0; m < g.size(); ++m) total += std::norm(h_est[m] - h_ext[m]);
  }
  return total / static_cast<double>(trials);
}

}  // namespace irs
