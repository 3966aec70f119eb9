// irs_sim: experiment runner and single-shot pattern / beamforming utilities.
//
//   irs_sim mse-sweep        [--config F] [--out F] [--seed S] [--trials T]
//   irs_sim rate-vs-groups   [--config F] [--out F] [--seed S] [--trials T] [--serial]
//   irs_sim rate-vs-elements [--config F] [--out F] [--seed S] [--trials T] [--serial]
//   irs_sim pattern --m M --b B [--out F]
//   irs_sim solve --config F [--out F] [--seed S]
//
// Exit status: 0 success, 1 invalid input or configuration, 2 numerical failure.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "irs/beamforming.hpp"
#include "irs/errors.hpp"
#include "irs/experiment.hpp"
#include "irs/training.hpp"
#include "json.hpp"

namespace {

using irs::complex;
using nlohmann::json;

std::string cell(complex z) {
  const double re = z.real() == 0.0 ? 0.0 : z.real();
  const double im = z.imag() == 0.0 ? 0.0 : z.imag();
  std::string s = irs::format_number(re);
  s += im < 0.0 ? "-" : "+";
  s += irs::format_number(std::abs(im));
  s += "j";
  return s;
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw irs::ConfigError("cannot write '" + out_path + "'");
  out << text;
  if (!out) throw irs::ConfigError("failed writing '" + out_path + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw irs::ConfigError("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

complex parse_complex(const json& v) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  throw irs::ConfigError("complex entries must be numbers or [re, im] pairs");
}

struct SolveInput {
  irs::BeamformingProblem problem;
  int bits = 2;
  irs::SdrOptions options;
  std::uint64_t seed = 1;
};

SolveInput parse_solve_input(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw irs::ConfigError(std::string("malformed input: ") + e.what());
  }
  if (!doc.is_object()) throw irs::ConfigError("solve input must be a JSON object");
  SolveInput in;
  bool have_h = false;
  std::optional<json> r_p;
  try {
    for (const auto& [key, v] : doc.items()) {
      if (key == "h_tilde") {
        for (const auto& z : v) in.problem.h_tilde.push_back(parse_complex(z));
        have_h = true;
      } else if (key == "r_p") {
        r_p = v;
      } else if (key == "pt") {
        in.problem.pt = v.get<double>();
      } else if (key == "sigma2") {
        in.problem.sigma2 = v.get<double>();
      } else if (key == "bits") {
        in.bits = v.get<int>();
      } else if (key == "samples") {
        in.options.samples = v.get<std::size_t>();
      } else if (key == "refine_eps") {
        in.options.eps = v.get<double>();
      } else if (key == "sdp_tol") {
        in.options.sdp_tol = v.get<double>();
      } else if (key == "seed") {
        in.seed = v.get<std::uint64_t>();
      } else {
        throw irs::ConfigError("solve input: unknown key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw irs::ConfigError(std::string("solve input: ") + e.what());
  }
  if (!have_h || in.problem.h_tilde.empty()) throw irs::ConfigError("solve input: h_tilde is required");
  const std::size_t n = in.problem.h_tilde.size();
  in.problem.r_p = irs::ComplexMatrix(n, n);
  if (r_p) {
    if (!r_p->is_array() || r_p->size() != n) throw irs::ConfigError("solve input: r_p must be square of size |h_tilde|");
    for (std::size_t i = 0; i < n; ++i) {
      const json& row = (*r_p)[i];
      if (!row.is_array() || row.size() != n) throw irs::ConfigError("solve input: r_p must be square");
      for (std::size_t j = 0; j < n; ++j) in.problem.r_p(i, j) = parse_complex(row[j]);
    }
  }
  in.problem.validate();
  return in;
}

std::string solve_report(const SolveInput& in) {
  const irs::PhaseShiftSet f(in.bits);
  irs::Rng rng = irs::make_rng(in.seed);
  const auto sdr = irs::sdr_beamforming(in.problem, f, in.options, rng);
  const auto gain = irs::channel_gain_beam(in.problem, f, in.options.eps);

  std::ostringstream out;
  out << "method,sinr";
  for (std::size_t i = 0; i < in.problem.size(); ++i) out << ",theta_" << i;
  out << '\n';
  auto row = [&](const std::string& name, double value, const irs::ComplexVector* theta) {
    out << name << ',' << irs::format_number(value);
    for (std::size_t i = 0; i < in.problem.size(); ++i) out << ',' << (theta ? cell((*theta)[i]) : std::string());
    out << '\n';
  };
  row("upper-bound", irs::sinr_upper_bound(in.problem), nullptr);
  if (sdr.relaxation) row("relaxation", irs::relaxation_sinr(*sdr.relaxation, in.problem), nullptr);
  row("continuous", irs::sinr(sdr.continuous, in.problem), &sdr.continuous.theta);
  row("quantization", irs::sinr(sdr.quantized, in.problem), &sdr.quantized.theta);
  row("refined", irs::sinr(sdr.refined.theta, in.problem), &sdr.refined.theta.theta);
  row("channel-gain", irs::sinr(gain.theta, in.problem), &gain.theta.theta);
  if (static_cast<std::size_t>(in.bits) * in.problem.groups() <= irs::kMaxBeamSearchBits) {
    const auto best = irs::exhaustive_beam_search(in.problem, f);
    row("exhaustive", irs::sinr(best, in.problem), &best.theta);
  }
  return out.str();
}

std::string pattern_report(std::size_t m, int b) {
  const auto pattern = irs::design_pattern(m, irs::PhaseShiftSet(b));
  std::ostringstream out;
  const auto& x = pattern.matrix();
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t j = 0; j < x.cols(); ++j) out << (j ? "," : "") << cell(x(i, j));
    out << '\n';
  }
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"IRS channel estimation and discrete passive beamforming simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path = "-";
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  bool serial = false;
  std::size_t m = 0;
  int b = 0;

  for (const char* name : {"mse-sweep", "rate-vs-groups", "rate-vs-elements"}) {
    auto* sub = app.add_subcommand(name, std::string("run the ") + name + " experiment");
    sub->add_option("--config", config_path, "JSON config; defaults apply to missing keys");
    sub->add_option("--out", out_path, "output CSV ('-' for stdout)");
    sub->add_option("--seed", seed, "override the config seed");
    sub->add_option("--trials", trials, "override the trial count");
    sub->add_flag("--serial", serial, "run trials on one thread");
  }
  auto* pattern = app.add_subcommand("pattern", "print the designed training pattern");
  pattern->add_option("--m", m, "number of groups M")->required();
  pattern->add_option("--b", b, "phase-shifter bits")->required();
  pattern->add_option("--out", out_path, "output CSV ('-' for stdout)");

  auto* solve = app.add_subcommand("solve", "beamform one instance read from JSON");
  solve->add_option("--config", config_path, "instance: h_tilde, r_p, pt, sigma2, bits")->required();
  solve->add_option("--out", out_path, "output CSV ('-' for stdout)");
  solve->add_option("--seed", seed, "randomization seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    const auto* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    if (name == "pattern") {
      emit(out_path, pattern_report(m, b));
    } else if (name == "solve") {
      SolveInput in = parse_solve_input(read_file(config_path));
      if (seed) in.seed = *seed;
      emit(out_path, solve_report(in));
    } else {
      const auto kind = irs::parse_experiment(name);
      auto config = config_path.empty() ? irs::default_config(kind) : irs::load_config(kind, config_path);
      if (seed) config.seed = *seed;
      if (trials) config.trials = *trials;
      const auto table =
          irs::run_experiment(config, serial ? irs::Execution::serial : irs::Execution::parallel);
      emit(out_path, irs::to_csv(table));
    }
  } catch (const irs::ValidationError& e) {
    std::cerr << "irs_sim: " << e.what() << '\n';
    return 1;
  } catch (const irs::NumericalError& e) {
    std::cerr << "irs_sim: numerical failure: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "irs_sim: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
