#include "irs/experiment.hpp"

#include <cmath>
#include <cstddef>
#include <exception>
#include <limits>
#include <optional>
#include <random>
#include <utility>

#include "irs/beamforming.hpp"
#include "irs/errors.hpp"
#include "irs/estimation.hpp"
#include "irs/training.hpp"

namespace irs {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Stream tags so that different consumers of one trial never share a generator.
enum Stream : std::uint64_t { kTrainingNoise = 1, kProposedSdr = 2, kRandomPhase = 3, kNaiveSdr = 4 };

struct Estimated {
  BeamformingProblem problem;  // estimated channel, normalized error covariance
  double squared_error;
};

class TrialContext {
 public:
  TrialContext(const ExperimentConfig& config, std::size_t n_elements, std::size_t m_groups, std::uint64_t trial)
      : config_(config), n_(n_elements), m_(m_groups), trial_(trial) {
    Rng channel_rng = make_rng(config.seed, {n_elements, trial});
    h_ = group_channels(sample_channels(config.geometry, n_elements, channel_rng), m_groups).h_ext;
    noise_ = make_rng(config.seed, {n_elements, trial, m_groups, kTrainingNoise});
  }

  const ComplexVector& h() const { return h_; }

  Rng stream(Stream tag, int b) const {
    return make_rng(config_.seed, {n_, trial_, m_, tag, static_cast<std::uint64_t>(b)});
  }

  // Every pattern sees the same noise samples.
  Estimated estimate(const ReflectionPattern& pattern) const {
    Rng rng = noise_;
    const double st2 = config_.training_sigma2();
    const auto est = ls_estimate(simulate_training(h_, pattern, config_.pt(), st2, rng), config_.pt(), st2);
    double err = 0.0;
    for (std::size_t i = 0; i < h_.size(); ++i) err += std::norm(est.h_est[i] - h_[i]);
    ComplexMatrix r_p = hermitian_part(invert(pattern.gram()) * complex{st2 / config_.sigma2(), 0.0});
    return {{est.h_est, std::move(r_p), config_.pt(), config_.sigma2()}, err};
  }

  // Rate on the true channel, with the analytic estimation-error term.
  double rate(const Estimated& e, std::span<const complex> theta) const {
    const BeamformingProblem truth{h_, e.problem.r_p, config_.pt(), config_.sigma2()};
    return achievable_rate(sinr(theta, truth), m_, config_.t0, config_.gap_db);
  }

 private:
  const ExperimentConfig& config_;
  std::size_t n_;
  std::size_t m_;
  std::uint64_t trial_;
  ComplexVector h_;
  Rng noise_;
};

bool uses_estimate(Scheme s) { return s != Scheme::random_phase; }

}  // namespace

double random_phase_scheme(std::span<const complex> h_true, const ExperimentConfig& config, std::size_t m_groups,
                           int b, Rng& rng) {
  if (h_true.size() != m_groups + 1) throw ValidationError("random_phase_scheme: channel size mismatch");
  const PhaseShiftSet f(b);
  std::uniform_int_distribution<std::size_t> level(0, f.levels() - 1);
  double best = -1.0;
  ComplexVector theta(m_groups + 1, complex{1.0, 0.0});
  for (std::size_t c = 0; c <= m_groups; ++c) {
    for (std::size_t m = 1; m <= m_groups; ++m) theta[m] = f.unit(level(rng));
    // The effective scalar channel is estimated from one pilot, error variance training_sigma2 / pt.
    const double gamma = config.pt() * std::norm(inner(theta, h_true)) / (config.sigma2() + config.training_sigma2());
    best = std::max(best, achievable_rate(gamma, m_groups, config.t0, config.gap_db));
  }
  return best;
}

std::vector<SchemeOutcome> run_trial(const ExperimentConfig& config, std::size_t n_elements, std::size_t m_groups,
                                     std::uint64_t trial) {
  const TrialContext ctx(config, n_elements, m_groups, trial);
  const SdrOptions options{config.randomization_samples, config.sdp_tol, config.refine_eps};

  std::vector<SchemeOutcome> out;
  for (const int b : config.bits) {
    const PhaseShiftSet f(b);
    std::optional<Estimated> designed;
    std::optional<SdrBeamforming> sdr;
    auto designed_estimate = [&]() -> const Estimated& {
      if (!designed) designed = ctx.estimate(design_pattern(m_groups, f));
      return *designed;
    };
    auto designed_sdr = [&]() -> const SdrBeamforming& {
      if (!sdr) {
        Rng rng = ctx.stream(kProposedSdr, b);
        sdr = sdr_beamforming(designed_estimate().problem, f, options, rng);
      }
      return *sdr;
    };

    for (const Scheme scheme : config.schemes) {
      SchemeOutcome o{scheme, b, kNaN, kNaN};
      try {
        switch (scheme) {
          case Scheme::proposed:
            o.rate = ctx.rate(designed_estimate(), designed_sdr().refined.theta.theta);
            break;
          case Scheme::upper_bound:
            o.rate = ctx.rate(designed_estimate(), designed_sdr().continuous.theta);
            break;
          case Scheme::quantization:
            o.rate = ctx.rate(designed_estimate(), designed_sdr().quantized.theta);
            break;
          case Scheme::exhaustive:
            o.rate = ctx.rate(designed_estimate(), exhaustive_beam_search(designed_estimate().problem, f).theta);
            break;
          case Scheme::channel_gain:
            o.rate = ctx.rate(designed_estimate(), channel_gain_beam(designed_estimate().problem, f,
                                                                      config.refine_eps).theta.theta);
            break;
          case Scheme::naive: {
            const Estimated e = ctx.estimate(naive_pattern(m_groups));
            Rng rng = ctx.stream(kNaiveSdr, b);
            o.rate = ctx.rate(e, sdr_beamforming(e.problem, f, options, rng).refined.theta.theta);
            o.squared_error = e.squared_error;
            break;
          }
          case Scheme::random_phase: {
            Rng rng = ctx.stream(kRandomPhase, b);
            o.rate = random_phase_scheme(ctx.h(), config, m_groups, b, rng);
            break;
          }
          case Scheme::lower_bound:
            break;
        }
        if (uses_estimate(scheme) && scheme != Scheme::naive && designed) o.squared_error = designed->squared_error;
      } catch (const Error&) {
        o.rate = kNaN;
      }
      out.push_back(o);
    }
  }
  return out;
}

namespace {

struct SweepPoint {
  std::size_t n;
  std::size_t m;
  double value;
};

struct Summary {
  double mean = kNaN;
  double stderr_mean = 0.0;
  std::size_t count = 0;
};

Summary summarize(const std::vector<double>& xs) {
  Summary s;
  double sum = 0.0;
  for (const double x : xs)
    if (!std::isnan(x)) {
      sum += x;
      ++s.count;
    }
  if (s.count == 0) return s;
  s.mean = sum / static_cast<double>(s.count);
  if (s.count >= 2) {
    double ss = 0.0;
    for (const double x : xs)
      if (!std::isnan(x)) ss += (x - s.mean) * (x - s.mean);
    s.stderr_mean = std::sqrt(ss / static_cast<double>(s.count - 1) / static_cast<double>(s.count));
  }
  return s;
}

ExperimentTable run_rate_sweep(const ExperimentConfig& config, const std::vector<SweepPoint>& points,
                               const std::string& sweep_param, Execution execution) {
  const std::size_t trials = config.trials;
  const std::size_t total = points.size() * trials;
  std::vector<std::vector<SchemeOutcome>> results(total);
  std::vector<std::exception_ptr> errors(total);

  auto unit = [&](std::size_t u) {
    try {
      const SweepPoint& p = points[u / trials];
      results[u] = run_trial(config, p.n, p.m, u % trials);
    } catch (...) {
      errors[u] = std::current_exception();
    }
  };

  if (execution == Execution::parallel) {
    const auto count = static_cast<std::ptrdiff_t>(total);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t u = 0; u < count; ++u) unit(static_cast<std::size_t>(u));
  } else {
    for (std::size_t u = 0; u < total; ++u) unit(u);
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  ExperimentTable table{config.kind, config.seed, {}};
  for (std::size_t p = 0; p < points.size(); ++p) {
    const std::size_t slots = results[p * trials].size();
    for (std::size_t s = 0; s < slots; ++s) {
      std::vector<double> rates(trials);
      std::vector<double> errs(trials);
      for (std::size_t t = 0; t < trials; ++t) {
        rates[t] = results[p * trials + t][s].rate;
        errs[t] = results[p * trials + t][s].squared_error;
      }
      const Summary rate = summarize(rates);
      const Summary mse = summarize(errs);
      const SchemeOutcome& head = results[p * trials][s];
      table.rows.push_back(
          {head.scheme, head.b, sweep_param, points[p].value, rate.mean, mse.mean, rate.stderr_mean, rate.count});
    }
  }
  return table;
}

}  // namespace

ExperimentTable mse_sweep(const ExperimentConfig& config) {
  config.validate();
  if (config.kind != ExperimentKind::mse_sweep) throw ConfigError("mse_sweep: config is for another experiment");
  const double pt = config.pt();
  const double s2 = config.training_sigma2();
  ExperimentTable table{config.kind, config.seed, {}};
  auto analytic = [&](Scheme scheme, int b, std::size_t m, auto&& mse) {
    double value = kNaN;
    try {
      value = mse();
    } catch (const Error&) {
    }
    table.rows.push_back({scheme, b, "M", static_cast<double>(m), kNaN, value, 0.0, 0});
  };
  for (const std::size_t m : config.m_groups) {
    for (const Scheme scheme : config.schemes) {
      switch (scheme) {
        case Scheme::proposed:
          for (const int b : config.bits)
            analytic(scheme, b, m, [&] { return pattern_mse(design_pattern(m, PhaseShiftSet(b)), pt, s2); });
          break;
        case Scheme::naive:
          analytic(scheme, 0, m, [&] { return pattern_mse(naive_pattern(m), pt, s2); });
          break;
        case Scheme::lower_bound:
          analytic(scheme, 0, m, [&] { return s2 / pt; });
          break;
        default:
          break;
      }
    }
  }
  return table;
}

ExperimentTable rate_vs_groups(const ExperimentConfig& config, Execution execution) {
  config.validate();
  if (config.kind != ExperimentKind::rate_vs_groups) throw ConfigError("rate_vs_groups: config is for another experiment");
  std::vector<SweepPoint> points;
  for (const std::size_t m : config.m_groups) points.push_back({config.n_elements.front(), m, static_cast<double>(m)});
  return run_rate_sweep(config, points, "M", execution);
}

ExperimentTable rate_vs_elements(const ExperimentConfig& config, Execution execution) {
  config.validate();
  if (config.kind != ExperimentKind::rate_vs_elements)
    throw ConfigError("rate_vs_elements: config is for another experiment");
  std::vector<SweepPoint> points;
  for (const std::size_t n : config.n_elements) points.push_back({n, config.m_groups.front(), static_cast<double>(n)});
  return run_rate_sweep(config, points, "N", execution);
}

ExperimentTable run_experiment(const ExperimentConfig& config, Execution execution) {
  switch (config.kind) {
    case ExperimentKind::mse_sweep: return mse_sweep(config);
    case ExperimentKind::rate_vs_groups: return rate_vs_groups(config, execution);
    case ExperimentKind::rate_vs_elements: return rate_vs_elements(config, execution);
  }
  throw ConfigError("unknown experiment");
}

}  // namespace irs
