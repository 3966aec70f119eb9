#include "irs/beamforming.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "irs/errors.hpp"

namespace irs {

ReflectionVector ReflectionVector::all_ones(std::size_t n, std::optional<PhaseShiftSet> phase_set) {
  return {ComplexVector(n, complex{1.0, 0.0}), phase_set};
}

bool is_feasible(const ReflectionVector& v) {
  if (v.theta.empty() || v.theta[0] != complex{1.0, 0.0}) return false;
  for (const complex z : v.theta) {
    if (std::abs(std::abs(z) - 1.0) > 1e-9) return false;
    if (v.phase_set && !v.phase_set->contains(z)) return false;
  }
  return true;
}

void BeamformingProblem::validate() const {
  const std::size_t n = h_tilde.size();
  if (n == 0) throw ValidationError("beamforming problem: empty channel");
  if (r_p.rows() != n || r_p.cols() != n) throw ValidationError("beamforming problem: r_p dimension mismatch");
  if (!r_p.all_finite()) throw ValidationError("beamforming problem: r_p not finite");
  for (const complex z : h_tilde)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw ValidationError("beamforming problem: channel not finite");
  if (!is_hermitian(r_p, 1e-9 * std::max(1.0, max_abs(r_p))))
    throw ValidationError("beamforming problem: r_p not Hermitian");
  if (!(pt > 0.0) || !(sigma2 > 0.0)) throw ValidationError("beamforming problem: pt and sigma2 must be positive");
}

double sinr(std::span<const complex> theta, const BeamformingProblem& prob) {
  const double signal = std::norm(inner(theta, prob.h_tilde));
  const double interference = std::max(quadratic_form(prob.r_p, theta), 0.0);
  return prob.pt * signal / (prob.sigma2 * (interference + 1.0));
}

double achievable_rate(double gamma, std::size_t m_groups, double t0, double gap_db) {
  const double training = static_cast<double>(m_groups + 1);
  if (!(t0 > training))
    throw InvalidFrame("frame of " + std::to_string(t0) + " symbols leaves no room after " +
                       std::to_string(m_groups + 1) + " training symbols");
  if (gamma < 0.0) throw ValidationError("achievable_rate: negative SINR");
  const double gap = std::pow(10.0, gap_db / 10.0);
  return (t0 - training) / t0 * std::log2(1.0 + gamma / gap);
}

namespace {

// Enumerates every discrete theta with theta[0] = 1, last entry fastest.
template <class Visit>
void for_each_discrete(std::size_t n, const PhaseShiftSet& phase_set, Visit&& visit) {
  ComplexVector theta(n, complex{1.0, 0.0});
  std::vector<std::size_t> digits(n, 0);
  while (true) {
    visit(theta);
    std::size_t pos = n;
    while (pos > 1) {
      --pos;
      if (++digits[pos] < phase_set.levels()) {
        theta[pos] = phase_set.unit(digits[pos]);
        break;
      }
      digits[pos] = 0;
      theta[pos] = complex{1.0, 0.0};
      if (pos == 1) return;
    }
    if (n <= 1) return;
  }
}

complex unit_phase(complex z) {
  const double r = std::abs(z);
  return r > 0.0 ? z / r : complex{1.0, 0.0};
}

template <class Objective>
RefinementResult refine(ComplexVector theta, const PhaseShiftSet& phase_set, double eps, Objective&& objective) {
  if (!(eps > 0.0)) throw ValidationError("successive_refinement: eps must be positive");
  RefinementResult out;
  double value = objective(theta);
  out.sweep_objective.push_back(value);
  while (out.sweeps < kMaxRefinementSweeps) {
    const double before = value;
    for (std::size_t m = 1; m < theta.size(); ++m) {
      const complex kept = theta[m];
      complex best = kept;
      for (std::size_t k = 0; k < phase_set.levels(); ++k) {
        theta[m] = phase_set.unit(k);
        const double v = objective(theta);
        if (v > value) {
          value = v;
          best = theta[m];
        }
      }
      theta[m] = best;
    }
    ++out.sweeps;
    out.sweep_objective.push_back(value);
    if (!(value - before > eps * std::abs(before))) break;
  }
  out.theta = {std::move(theta), phase_set};
  return out;
}

void check_discrete_start(const ReflectionVector& theta0, const PhaseShiftSet& phase_set) {
  ReflectionVector probe{theta0.theta, phase_set};
  if (!is_feasible(probe)) throw ValidationError("successive_refinement: starting vector is not feasible");
}

}  // namespace

ReflectionVector exhaustive_beam_search(const BeamformingProblem& prob, const PhaseShiftSet& phase_set) {
  prob.validate();
  const std::size_t m = prob.groups();
  if (static_cast<std::size_t>(phase_set.bits()) * m > static_cast<std::size_t>(kMaxBeamSearchBits))
    throw Intractable("exhaustive_beam_search: b*M exceeds " + std::to_string(kMaxBeamSearchBits));
  ComplexVector best;
  double best_value = -1.0;
  for_each_discrete(prob.size(), phase_set, [&](const ComplexVector& theta) {
    const double v = sinr(theta, prob);
    if (v > best_value) {
      best_value = v;
      best = theta;
    }
  });
  return {std::move(best), phase_set};
}

double SdpProblemData::max_residual(const ComplexMatrix& psi, double t) const {
  double worst = std::abs(trace_product_real(r_p, psi) + t - 1.0);
  for (std::size_t m = 0; m < psi.rows(); ++m) worst = std::max(worst, std::abs(psi(m, m).real() - t));
  return worst;
}

SdpProblemData charnes_cooper(const BeamformingProblem& prob) {
  prob.validate();
  const std::size_t n = prob.size();
  SdpProblemData data{prob.gain(), prob.r_p, {}};
  data.problem.objective = data.gain;

  sdp::Constraint normalization;
  normalization.dense = prob.r_p;
  normalization.entries.push_back({0, 0, 1.0});
  normalization.rhs = 1.0;
  data.problem.constraints.push_back(std::move(normalization));

  for (std::size_t m = 1; m < n; ++m) {
    sdp::Constraint equal_diagonal;
    equal_diagonal.entries = {{m, m, 1.0}, {0, 0, -1.0}};
    equal_diagonal.rhs = 0.0;
    data.problem.constraints.push_back(std::move(equal_diagonal));
  }
  return data;
}

ComplexMatrix recover_phi(const ComplexMatrix& psi, double t) {
  if (!(t > 0.0)) throw NumericalError("recover_phi: t must be positive");
  return psi * complex{1.0 / t, 0.0};
}

SdpSolution solve_sdp(const SdpProblemData& data, double tol) {
  if (!(tol >= 1e-10 && tol <= 1e-4)) throw ValidationError("solve_sdp: tol must lie in [1e-10, 1e-4]");
  const std::size_t n = data.size();
  const double scale = max_abs(data.gain);

  SdpSolution s;
  if (scale == 0.0) {
    s.t = 1.0 / (1.0 + trace(data.r_p).real());
    s.psi = ComplexMatrix::identity(n) * complex{s.t, 0.0};
    s.phi = ComplexMatrix::identity(n);
    return s;
  }

  sdp::Problem scaled = data.problem;
  scaled.objective = data.gain * complex{1.0 / scale, 0.0};
  const sdp::Result r = sdp::solve(scaled, {tol, 200});

  s.psi = r.x;
  s.t = s.psi(0, 0).real();
  s.phi = hermitian_part(recover_phi(s.psi, s.t));
  s.objective = trace_product_real(data.gain, s.psi);
  s.iterations = r.iterations;
  return s;
}

ReflectionVector rotate_and_quantize(std::span<const complex> theta, const std::optional<PhaseShiftSet>& phase_set) {
  if (theta.empty()) throw ValidationError("rotate_and_quantize: empty vector");
  const complex rotation = std::conj(unit_phase(theta[0]));
  ComplexVector out(theta.size());
  out[0] = complex{1.0, 0.0};
  for (std::size_t m = 1; m < theta.size(); ++m) {
    const complex z = theta[m] * rotation;
    out[m] = phase_set ? phase_set->unit(phase_set->nearest(z)) : unit_phase(z);
  }
  return {std::move(out), phase_set};
}

ReflectionVector gaussian_randomization(const ComplexMatrix& phi, const BeamformingProblem& prob,
                                        std::size_t samples, Rng& rng) {
  if (samples < 1) throw ValidationError("gaussian_randomization: need at least one sample");
  const std::size_t n = phi.rows();
  if (n != prob.size()) throw ValidationError("gaussian_randomization: dimension mismatch");
  if (n == 1) return ReflectionVector::all_ones(1, std::nullopt);

  const HermitianEigen eig = hermitian_eig(phi);
  const double top = eig.values.back();
  ComplexVector principal(n);
  for (std::size_t i = 0; i < n; ++i) principal[i] = eig.vectors(i, n - 1);
  ReflectionVector best = rotate_and_quantize(principal, std::nullopt);
  if (eig.values[n - 2] <= 1e-8 * top) return best;

  // phi = L L^H with L = V diag(sqrt(lambda)).
  ComplexMatrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const double s = std::sqrt(std::max(eig.values[j], 0.0));
    for (std::size_t i = 0; i < n; ++i) l(i, j) = eig.vectors(i, j) * s;
  }

  double best_value = sinr(best, prob);
  ComplexVector g(n);
  for (std::size_t k = 0; k < samples; ++k) {
    for (auto& z : g) z = complex_gaussian(rng, 1.0);
    const ComplexVector r = l * std::span<const complex>(g);
    ReflectionVector candidate = rotate_and_quantize(r, std::nullopt);
    const double v = sinr(candidate, prob);
    if (v > best_value) {
      best_value = v;
      best = std::move(candidate);
    }
  }
  return best;
}

RefinementResult successive_refinement(const ReflectionVector& theta0, const BeamformingProblem& prob,
                                       const PhaseShiftSet& phase_set, double eps) {
  prob.validate();
  if (theta0.size() != prob.size()) throw ValidationError("successive_refinement: dimension mismatch");
  check_discrete_start(theta0, phase_set);
  return refine(theta0.theta, phase_set, eps, [&](std::span<const complex> t) { return sinr(t, prob); });
}

double sinr_upper_bound(const BeamformingProblem& prob) {
  prob.validate();
  const std::size_t n = prob.size();
  const double dn = static_cast<double>(n);
  // H is rank one, so lambda_max(A^{-1} h h^H) = h^H A^{-1} h = ||L^{-1} h||^2.
  const ComplexMatrix a = prob.r_p + ComplexMatrix::identity(n) * complex{1.0 / dn, 0.0};
  ComplexMatrix h(n, 1);
  for (std::size_t i = 0; i < n; ++i) h(i, 0) = prob.h_tilde[i];
  const ComplexMatrix w = lower_solve(cholesky(hermitian_part(a)), h);
  double lambda = 0.0;
  for (std::size_t i = 0; i < n; ++i) lambda += std::norm(w(i, 0));
  return dn * lambda * prob.snr();
}

ComplexVector matched_filter(std::span<const complex> h_tilde) {
  ComplexVector theta(h_tilde.size());
  for (std::size_t i = 0; i < h_tilde.size(); ++i) theta[i] = unit_phase(h_tilde[i]);
  return theta;
}

RefinementResult channel_gain_beam(const BeamformingProblem& prob, const PhaseShiftSet& phase_set, double eps) {
  prob.validate();
  const ReflectionVector start = rotate_and_quantize(matched_filter(prob.h_tilde), phase_set);
  return refine(start.theta, phase_set, eps,
                [&](std::span<const complex> t) { return std::norm(inner(t, prob.h_tilde)); });
}

SdrBeamforming sdr_beamforming(const BeamformingProblem& prob, const PhaseShiftSet& phase_set,
                               const SdrOptions& options, Rng& rng) {
  SdrBeamforming out;
  try {
    SdpSolution solution = solve_sdp(charnes_cooper(prob), options.sdp_tol);
    out.continuous = gaussian_randomization(solution.phi, prob, options.samples, rng);
    out.relaxation = std::move(solution);
  } catch (const NumericalError&) {
    out.relaxation.reset();
    out.continuous = rotate_and_quantize(matched_filter(prob.h_tilde), std::nullopt);
  }
  out.quantized = rotate_and_quantize(out.continuous.theta, phase_set);
  out.refined = successive_refinement(out.quantized, prob, phase_set, options.eps);
  return out;
}

}  // namespace irs
