#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "irs/linalg.hpp"
#include "irs/random.hpp"
#include "irs/sdp.hpp"
#include "irs/training.hpp"

namespace irs {

/// Extended reflection vector [1, e^{jw_1}, ..., e^{jw_M}]. An empty
/// phase_set marks a continuous-phase vector.
struct ReflectionVector {
  ComplexVector theta;
  std::optional<PhaseShiftSet> phase_set;

  bool continuous() const { return !phase_set.has_value(); }
  std::size_t size() const { return theta.size(); }

  static ReflectionVector all_ones(std::size_t n, std::optional<PhaseShiftSet> phase_set);
};

/// Unit modulus everywhere, theta[0] == 1, and (if discrete) every phase in the alphabet.
bool is_feasible(const ReflectionVector& v);

/// SINR maximization data: estimated channel and the normalized error
/// covariance r_p, so that the interference-plus-noise power is
/// sigma2 (theta^H r_p theta + 1).
struct BeamformingProblem {
  ComplexVector h_tilde;
  ComplexMatrix r_p;
  double pt = 1.0;
  double sigma2 = 1.0;

  std::size_t size() const { return h_tilde.size(); }
  std::size_t groups() const { return h_tilde.size() - 1; }
  /// h_tilde h_tilde^H
  ComplexMatrix gain() const { return ComplexMatrix::outer(h_tilde); }
  double snr() const { return pt / sigma2; }
  void validate() const;
};

/// pt |theta^H h_tilde|^2 / (sigma2 (theta^H r_p theta + 1))
double sinr(std::span<const complex> theta, const BeamformingProblem& prob);
inline double sinr(const ReflectionVector& v, const BeamformingProblem& prob) { return sinr(v.theta, prob); }

/// ((t0 - (M+1)) / t0) log2(1 + gamma / Gamma). Throws InvalidFrame if t0 <= M+1.
double achievable_rate(double gamma, std::size_t m_groups, double t0, double gap_db);

inline constexpr int kMaxBeamSearchBits = 20;

/// Optimal discrete vector by enumeration; the first maximizer in
/// lexicographic phase order wins. Throws Intractable if b M > 20.
ReflectionVector exhaustive_beam_search(const BeamformingProblem& prob, const PhaseShiftSet& phase_set);

/// Linear SDP obtained from the fractional relaxation by the Charnes-Cooper
/// change of variables Psi = Phi / (tr(R_p Phi) + 1), t = 1 / (tr(R_p Phi) + 1):
///
///   maximize tr(H Psi)  s.t.  tr(R_p Psi) + t = 1,  Psi >= 0,  [Psi]_mm = t.
///
/// t is eliminated as [Psi]_00, leaving M+1 equality constraints.
struct SdpProblemData {
  ComplexMatrix gain;
  ComplexMatrix r_p;
  sdp::Problem problem;

  std::size_t size() const { return gain.rows(); }
  /// Largest violation of the equality constraints at (psi, t).
  double max_residual(const ComplexMatrix& psi, double t) const;
};

SdpProblemData charnes_cooper(const BeamformingProblem& prob);

/// Phi = Psi / t
ComplexMatrix recover_phi(const ComplexMatrix& psi, double t);

struct SdpSolution {
  ComplexMatrix psi;
  double t = 0.0;
  ComplexMatrix phi;
  /// tr(H Psi), the optimum of the fractional relaxation.
  double objective = 0.0;
  int iterations = 0;
};

/// Throws NoConvergence when the interior-point iteration cap is reached.
SdpSolution solve_sdp(const SdpProblemData& data, double tol = 1e-8);

/// Relaxation optimum in SINR units (pt / sigma2 times the objective).
inline double relaxation_sinr(const SdpSolution& s, const BeamformingProblem& prob) {
  return prob.snr() * s.objective;
}

/// Draws r ~ CN(0, phi), keeps the phases, returns the best of `samples`
/// candidates plus the principal-eigenvector candidate, rotated so theta[0] = 1.
/// A rank-one phi returns its principal eigenvector without sampling.
ReflectionVector gaussian_randomization(const ComplexMatrix& phi, const BeamformingProblem& prob,
                                        std::size_t samples, Rng& rng);

/// Rotates so theta[0] = 1, then snaps entries 1..M to the nearest level.
/// With no phase set only the rotation is applied.
ReflectionVector rotate_and_quantize(std::span<const complex> theta, const std::optional<PhaseShiftSet>& phase_set);

struct RefinementResult {
  ReflectionVector theta;
  /// Objective before the first sweep and after every sweep.
  std::vector<double> sweep_objective;
  int sweeps = 0;
};

inline constexpr int kMaxRefinementSweeps = 1000;

/// Cyclic coordinate ascent over sub-surfaces 1..M with a one-dimensional
/// search over the alphabet; stops when a full sweep improves the SINR by
/// less than eps relative.
RefinementResult successive_refinement(const ReflectionVector& theta0, const BeamformingProblem& prob,
                                       const PhaseShiftSet& phase_set, double eps = 1e-4);

/// (M+1) lambda_max((R_p + I/(M+1))^{-1} H) pt / sigma2.
double sinr_upper_bound(const BeamformingProblem& prob);

/// Refinement on theta^H H theta alone (estimation error ignored), started
/// from the quantized matched filter.
RefinementResult channel_gain_beam(const BeamformingProblem& prob, const PhaseShiftSet& phase_set,
                                   double eps = 1e-4);

/// theta_m = e^{j arg h_tilde_m}
ComplexVector matched_filter(std::span<const complex> h_tilde);

struct SdrOptions {
  std::size_t samples = 1000;
  double sdp_tol = 1e-8;
  double eps = 1e-4;
};

/// Continuous SDR solution and its discrete descendants.
struct SdrBeamforming {
  std::optional<SdpSolution> relaxation;  // empty when the SDP failed
  ReflectionVector continuous;            // randomization output (or matched filter)
  ReflectionVector quantized;             // rotate_and_quantize(continuous)
  RefinementResult refined;               // successive_refinement(quantized)
};

/// Charnes-Cooper SDP, Gaussian randomization, rotate-and-quantize, then
/// successive refinement. Falls back to the matched filter if the SDP fails.
SdrBeamforming sdr_beamforming(const BeamformingProblem& prob, const PhaseShiftSet& phase_set,
                               const SdrOptions& options, Rng& rng);

}  // namespace irs
