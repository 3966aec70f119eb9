#pragma once

// Seeded Monte-Carlo runner for the three experiments: MSE versus group
// count, rate versus group count, and rate versus element count.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "irs/channel.hpp"
#include "irs/linalg.hpp"
#include "irs/random.hpp"

namespace irs {

enum class Scheme {
  proposed,      // designed pattern + SDR + successive refinement
  naive,         // naive pattern + SDR + successive refinement
  random_phase,  // best of M+1 random discrete vectors, no estimation
  upper_bound,   // continuous SDR solution (randomized)
  exhaustive,    // optimal discrete vector for the estimated channel
  quantization,  // SDR solution snapped to the alphabet, no refinement
  channel_gain,  // refinement on |theta^H h|^2, estimation error ignored
  lower_bound,   // sigma2 / pt, MSE sweep only
};

std::string_view to_string(Scheme scheme);
/// Throws ConfigError on an unknown identifier.
Scheme parse_scheme(std::string_view name);

enum class ExperimentKind { mse_sweep, rate_vs_groups, rate_vs_elements };

std::string_view to_string(ExperimentKind kind);
/// Throws ConfigError on an unknown identifier.
ExperimentKind parse_experiment(std::string_view name);

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::rate_vs_groups;
  Geometry geometry;
  std::vector<std::size_t> n_elements;
  std::vector<std::size_t> m_groups;
  std::vector<int> bits;
  double pt_dbm = 20.0;
  double sigma2_dbm = -79.0;
  double gap_db = 8.2;
  double t0 = 40.0;
  std::size_t trials = 500;
  std::uint64_t seed = 1;
  std::vector<Scheme> schemes;
  std::size_t randomization_samples = 1000;
  double sdp_tol = 1e-8;
  double refine_eps = 1e-4;
  /// Training noise power relative to sigma2; 0 gives noiseless training.
  double training_noise_scale = 1.0;

  double pt() const;
  double sigma2() const;
  double training_sigma2() const { return training_noise_scale * sigma2(); }

  /// Throws ValidationError (ConfigError for inconsistent settings,
  /// IndivisibleGrouping when a swept M does not divide a swept N).
  void validate() const;
};

/// Reference setup of each experiment.
ExperimentConfig default_config(ExperimentKind kind);

/// Overlays a JSON document on default_config(kind). Unknown keys, wrong
/// types and invalid values throw ConfigError.
ExperimentConfig parse_config(ExperimentKind kind, std::string_view json_text);
/// Throws ConfigError if the file cannot be read.
ExperimentConfig load_config(ExperimentKind kind, const std::string& path);

/// One scheme's result in one trial; NaN marks a failed scheme.
struct SchemeOutcome {
  Scheme scheme;
  int b;
  double rate;
  /// ||h_est - h||^2 for estimation-based schemes, NaN otherwise.
  double squared_error;
};

/// One fading realization at (N, M): every configured scheme at every
/// configured b, all sharing the channel and training noise. Generators are
/// derived from (seed, N, trial[, M, ...]), so the result does not depend on
/// evaluation order.
std::vector<SchemeOutcome> run_trial(const ExperimentConfig& config, std::size_t n_elements, std::size_t m_groups,
                                     std::uint64_t trial);

/// Rate of the best of M+1 random discrete vectors (theta[0] = 1, other
/// phases uniform over the alphabet), each judged by its realized rate on
/// the true channel. The selected vector's effective channel is known only
/// through its single training symbol, so the interference term is the
/// training noise power.
double random_phase_scheme(std::span<const complex> h_true, const ExperimentConfig& config, std::size_t m_groups,
                           int b, Rng& rng);

struct SchemeResult {
  Scheme scheme;
  int b;  // 0 where the alphabet does not apply
  std::string sweep_param;
  double sweep_value;
  double mean_rate;
  double mean_mse;
  double stderr_rate;
  std::size_t trials;  // successful trials; 0 for analytic rows
};

struct ExperimentTable {
  ExperimentKind kind;
  std::uint64_t seed;
  std::vector<SchemeResult> rows;
};

enum class Execution { serial, parallel };

ExperimentTable mse_sweep(const ExperimentConfig& config);
ExperimentTable rate_vs_groups(const ExperimentConfig& config, Execution execution = Execution::parallel);
ExperimentTable rate_vs_elements(const ExperimentConfig& config, Execution execution = Execution::parallel);
/// Dispatches on config.kind.
ExperimentTable run_experiment(const ExperimentConfig& config, Execution execution = Execution::parallel);

inline constexpr std::string_view kCsvHeader =
    "experiment,scheme,b,sweep_param,sweep_value,mean_rate_bps_hz,mean_mse,stderr,trials,seed";

void write_csv(std::ostream& out, const ExperimentTable& table);
std::string to_csv(const ExperimentTable& table);
/// %.12g, with "nan" for every NaN.
std::string format_number(double x);

}  // namespace irs
