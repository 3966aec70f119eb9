#include <algorithm>
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "irs/beamforming.hpp"
#include "irs/errors.hpp"
#include "irs/experiment.hpp"

using irs::ExperimentKind;
using irs::Scheme;

namespace {

const irs::SchemeResult& find(const irs::ExperimentTable& t, Scheme s, int b, double x) {
  for (const auto& r : t.rows)
    if (r.scheme == s && r.b == b && r.sweep_value == x) return r;
  FAIL("row not found");
  throw std::logic_error("unreachable");
}

irs::ExperimentConfig small_groups(std::size_t trials) {
  auto c = irs::default_config(ExperimentKind::rate_vs_groups);
  c.m_groups = {2, 8};
  c.trials = trials;
  c.randomization_samples = 100;
  return c;
}

}  // namespace

TEST_CASE("scheme and experiment identifiers round-trip") {
  for (const Scheme s : {Scheme::proposed, Scheme::naive, Scheme::random_phase, Scheme::upper_bound,
                         Scheme::exhaustive, Scheme::quantization, Scheme::channel_gain, Scheme::lower_bound})
    CHECK(irs::parse_scheme(irs::to_string(s)) == s);
  for (const auto k : {ExperimentKind::mse_sweep, ExperimentKind::rate_vs_groups, ExperimentKind::rate_vs_elements})
    CHECK(irs::parse_experiment(irs::to_string(k)) == k);
  CHECK_THROWS_AS(irs::parse_scheme("best"), irs::ConfigError);
  CHECK_THROWS_AS(irs::parse_experiment("mse"), irs::ConfigError);
}

TEST_CASE("defaults validate") {
  for (const auto k : {ExperimentKind::mse_sweep, ExperimentKind::rate_vs_groups, ExperimentKind::rate_vs_elements})
    CHECK_NOTHROW(irs::default_config(k).validate());
  const auto g = irs::default_config(ExperimentKind::rate_vs_groups);
  CHECK(g.pt() == doctest::Approx(0.1));
  CHECK(g.sigma2() == doctest::Approx(std::pow(10.0, -10.9)));
  for (const auto m : g.m_groups) CHECK(g.t0 > static_cast<double>(m + 1));
}

TEST_CASE("config parsing") {
  SUBCASE("overlay") {
    const auto c = irs::parse_config(ExperimentKind::rate_vs_groups,
                                     R"({"experiment": "rate-vs-groups", "m_groups": [4, 8], "bits": 2,
                                         "seed": 9, "trials": 3, "geometry": {"ref_gain_db": -20}})");
    CHECK(c.m_groups == std::vector<std::size_t>{4, 8});
    CHECK(c.bits == std::vector<int>{2});
    CHECK(c.seed == 9);
    CHECK(c.trials == 3);
    CHECK(c.geometry.ref_gain_db == -20.0);
    CHECK(c.n_elements == std::vector<std::size_t>{80});
  }
  SUBCASE("group sweep follows t0") {
    const auto c = irs::parse_config(ExperimentKind::rate_vs_groups, R"({"t0": 12})");
    CHECK(c.m_groups == std::vector<std::size_t>{1, 2, 4, 5, 8, 10});
  }
  SUBCASE("errors") {
    const auto k = ExperimentKind::rate_vs_groups;
    CHECK_THROWS_AS(irs::parse_config(k, R"({"trails": 3})"), irs::ConfigError);
    CHECK_THROWS_AS(irs::parse_config(k, R"({"trials": 0})"), irs::ConfigError);
    CHECK_THROWS_AS(irs::parse_config(k, R"({"trials": -1})"), irs::ConfigError);
    CHECK_THROWS_AS(irs::parse_config(k, R"({"pt_dbm": "high"})"), irs::ConfigError);
    CHECK_THROWS_AS(irs::parse_config(k, R"({"experiment": "mse-sweep"})"), irs::ConfigError);
    CHECK_THROWS_AS(irs::parse_config(k, R"({"m_groups": [40]})"), irs::ConfigError);
    CHECK_THROWS_AS(irs::parse_config(k, R"({"m_groups": [3]})"), irs::IndivisibleGrouping);
    CHECK_THROWS_AS(irs::parse_config(k, R"({"schemes": ["lower-bound"]})"), irs::ConfigError);
    CHECK_THROWS_AS(irs::parse_config(k, R"({"schemes": ["proposed", "proposed"]})"), irs::ConfigError);
    CHECK_THROWS_AS(irs::parse_config(k, R"({"geometry": {"height": 3}})"), irs::ConfigError);
    CHECK_THROWS_AS(irs::parse_config(k, R"({"bits": [0]})"), irs::ConfigError);
    CHECK_THROWS_AS(irs::parse_config(k, R"([1, 2])"), irs::ConfigError);
    CHECK_THROWS_AS(irs::parse_config(k, R"({"trials": )"), irs::ConfigError);
    CHECK_THROWS_AS(irs::parse_config(ExperimentKind::mse_sweep, R"({"schemes": ["exhaustive"]})"),
                    irs::ConfigError);
    CHECK_THROWS_AS(irs::parse_config(ExperimentKind::rate_vs_elements, R"({"m_groups": [2, 4]})"),
                    irs::ConfigError);
    CHECK_THROWS_AS(irs::load_config(k, "/nonexistent/config.json"), irs::ConfigError);
  }
}

TEST_CASE("MSE sweep") {
  const auto t = irs::mse_sweep(irs::default_config(ExperimentKind::mse_sweep));
  // proposed at two b levels, naive, lower bound
  CHECK(t.rows.size() == 33 * 4);
  double prev = 0.0;
  for (std::size_t m = 1; m <= 33; ++m) {
    const double x = static_cast<double>(m);
    CHECK(find(t, Scheme::lower_bound, 0, x).mean_mse == doctest::Approx(1e-3));
    const double naive = find(t, Scheme::naive, 0, x).mean_mse;
    CHECK(naive > prev);
    prev = naive;
    for (int b : {1, 2}) {
      const auto& r = find(t, Scheme::proposed, b, x);
      CHECK(r.mean_mse <= naive * (1.0 + 1e-12));
      CHECK(r.mean_mse >= 1e-3 * (1.0 - 1e-12));
      CHECK(std::isnan(r.mean_rate));
      CHECK(r.trials == 0);
    }
  }
  for (std::size_t n : {4, 8, 12, 16, 20, 24, 28, 32})
    CHECK(find(t, Scheme::proposed, 1, static_cast<double>(n - 1)).mean_mse == doctest::Approx(1e-3).epsilon(1e-10));
  CHECK(find(t, Scheme::proposed, 2, 15.0).mean_mse == doctest::Approx(1e-3).epsilon(1e-10));
}

TEST_CASE("trial structure") {
  auto c = small_groups(1);
  c.schemes = {Scheme::proposed, Scheme::naive, Scheme::random_phase};
  const auto out = irs::run_trial(c, 80, 8, 0);
  CHECK(out.size() == 6);
  for (const auto& o : out) {
    CHECK(std::isfinite(o.rate));
    CHECK(o.rate >= 0.0);
    if (o.scheme == Scheme::random_phase) CHECK(std::isnan(o.squared_error));
    else CHECK(std::isfinite(o.squared_error));
  }
  const auto again = irs::run_trial(c, 80, 8, 0);
  for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i].rate == again[i].rate);
  CHECK(irs::run_trial(c, 80, 8, 1)[0].rate != out[0].rate);
}

TEST_CASE("noiseless training") {
  auto c = irs::default_config(ExperimentKind::rate_vs_elements);
  c.training_noise_scale = 0.0;
  c.randomization_samples = 100;
  c.bits = {2};
  c.schemes = {Scheme::proposed, Scheme::exhaustive};
  for (std::uint64_t trial = 0; trial < 5; ++trial) {
    const auto out = irs::run_trial(c, 16, 4, trial);
    for (const auto& o : out) {
      CHECK(std::isfinite(o.rate));
      CHECK(o.squared_error <= 1e-24);
    }
  }
}

TEST_CASE("random-phase benchmark") {
  auto c = irs::default_config(ExperimentKind::rate_vs_groups);
  irs::Rng rng = irs::make_rng(61);
  const irs::ComplexVector h{irs::complex{1e-5, 0.0}};
  // M + 1 = 1: the single candidate is all-ones.
  const double gamma = c.pt() * 1e-10 / (c.sigma2() + c.training_sigma2());
  CHECK(irs::random_phase_scheme(h, c, 0, 1, rng) == doctest::Approx(irs::achievable_rate(gamma, 0, c.t0, c.gap_db)));
  CHECK_THROWS_AS(irs::random_phase_scheme(h, c, 2, 1, rng), irs::ValidationError);
}

TEST_CASE("serial and parallel runs give identical CSV") {
  const auto c = small_groups(6);
  const auto serial = irs::to_csv(irs::rate_vs_groups(c, irs::Execution::serial));
  const auto parallel = irs::to_csv(irs::rate_vs_groups(c, irs::Execution::parallel));
  CHECK(serial == parallel);
  CHECK(irs::to_csv(irs::rate_vs_groups(c)) == parallel);
  auto other = c;
  other.seed = 2;
  CHECK(irs::to_csv(irs::rate_vs_groups(other)) != parallel);
}

TEST_CASE("CSV layout") {
  auto c = small_groups(4);
  c.m_groups = {4};
  c.bits = {2};
  const auto table = irs::rate_vs_groups(c);
  std::istringstream in(irs::to_csv(table));
  std::string line;
  std::getline(in, line);
  CHECK(line == irs::kCsvHeader);
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    CHECK(line.rfind("rate-vs-groups,", 0) == 0);
    CHECK(std::count(line.begin(), line.end(), ',') == 9);
    CHECK(line.substr(line.size() - 2) == ",1");
  }
  CHECK(rows == 3);
  CHECK(irs::format_number(std::nan("")) == "nan");
  CHECK(irs::format_number(0.0) == "0");
  CHECK(irs::format_number(-0.0) == "0");
  CHECK(irs::format_number(0.875) == "0.875");
  CHECK(irs::format_number(1e-3) == "0.001");
}

TEST_CASE("rate sweep rows carry standard errors and counts") {
  const auto c = small_groups(10);
  const auto t = irs::rate_vs_groups(c);
  CHECK(t.rows.size() == 2 * 2 * 3);
  for (const auto& r : t.rows) {
    CHECK(r.trials == 10);
    CHECK(r.sweep_param == "M");
    CHECK(r.stderr_rate > 0.0);
    CHECK(r.mean_rate >= 0.0);
  }
}

TEST_CASE("rates respect the upper-bound chain") {
  auto c = irs::default_config(ExperimentKind::rate_vs_groups);
  c.bits = {2};
  c.randomization_samples = 100;
  c.schemes = {Scheme::proposed, Scheme::naive};
  for (std::uint64_t trial = 0; trial < 5; ++trial) {
    const auto out = irs::run_trial(c, 80, 4, trial);
    irs::Rng rng = irs::make_rng(c.seed, {80, trial});
    const auto h = irs::group_channels(irs::sample_channels(c.geometry, 80, rng), 4).h_ext;
    double l1 = 0.0;
    for (const auto z : h) l1 += std::abs(z);
    // |theta^H h| <= ||h||_1 and the interference term is non-negative.
    const double cap = irs::achievable_rate(c.pt() * l1 * l1 / c.sigma2(), 4, c.t0, c.gap_db);
    for (const auto& o : out) CHECK(o.rate <= cap * (1.0 + 1e-12));
  }
}

TEST_CASE("proposed beats naive at N=80, M=8, b=2") {
  auto c = irs::default_config(ExperimentKind::rate_vs_groups);
  c.m_groups = {8};
  c.bits = {2};
  c.trials = 200;
  c.randomization_samples = 200;
  c.schemes = {Scheme::proposed, Scheme::naive};
  const auto t = irs::rate_vs_groups(c);
  CHECK(find(t, Scheme::proposed, 2, 8.0).mean_rate >= find(t, Scheme::naive, 2, 8.0).mean_rate);
}

TEST_CASE("random phase: b = 1 and b = 2 are statistically close") {
  auto c = irs::default_config(ExperimentKind::rate_vs_groups);
  c.m_groups = {8};
  c.trials = 500;
  c.schemes = {Scheme::random_phase};
  const auto t = irs::rate_vs_groups(c);
  const auto& one = find(t, Scheme::random_phase, 1, 8.0);
  const auto& two = find(t, Scheme::random_phase, 2, 8.0);
  const double se = std::hypot(one.stderr_rate, two.stderr_rate);
  CHECK(std::abs(one.mean_rate - two.mean_rate) <= 3.0 * se);
}
