#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "irs/errors.hpp"
#include "irs/experiment.hpp"
#include "json.hpp"

namespace irs {

namespace {

using nlohmann::json;

struct SchemeName {
  Scheme scheme;
  std::string_view name;
};

constexpr SchemeName kSchemeNames[] = {
    {Scheme::proposed, "proposed"},         {Scheme::naive, "naive"},
    {Scheme::random_phase, "random-phase"}, {Scheme::upper_bound, "upper-bound"},
    {Scheme::exhaustive, "exhaustive"},     {Scheme::quantization, "quantization"},
    {Scheme::channel_gain, "channel-gain"}, {Scheme::lower_bound, "lower-bound"},
};

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

[[noreturn]] void bad(const std::string& key, const std::string& what) {
  throw ConfigError("config key '" + key + "': " + what);
}

double number(const json& v, const std::string& key) {
  if (!v.is_number()) bad(key, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) bad(key, "must be finite");
  return x;
}

std::uint64_t count(const json& v, const std::string& key) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer()) {
    if (v.get<std::int64_t>() < 0) bad(key, "must be non-negative");
    return static_cast<std::uint64_t>(v.get<std::int64_t>());
  }
  bad(key, "expected a non-negative integer");
}

template <class T>
std::vector<T> count_list(const json& v, const std::string& key) {
  std::vector<T> out;
  if (v.is_array()) {
    for (const auto& x : v) out.push_back(static_cast<T>(count(x, key)));
  } else {
    out.push_back(static_cast<T>(count(v, key)));
  }
  if (out.empty()) bad(key, "must not be empty");
  return out;
}

Point3 point(const json& v, const std::string& key) {
  if (!v.is_array() || v.size() != 3) bad(key, "expected [x, y, z]");
  return {number(v[0], key), number(v[1], key), number(v[2], key)};
}

void parse_geometry(const json& g, Geometry& geo) {
  if (!g.is_object()) bad("geometry", "expected an object");
  for (const auto& [key, v] : g.items()) {
    const std::string path = "geometry." + key;
    if (key == "user") geo.user_pos = point(v, path);
    else if (key == "ap") geo.ap_pos = point(v, path);
    else if (key == "irs") geo.irs_center = point(v, path);
    else if (key == "pathloss_exp_ua") geo.pathloss_exp_ua = number(v, path);
    else if (key == "pathloss_exp_ui") geo.pathloss_exp_ui = number(v, path);
    else if (key == "pathloss_exp_ia") geo.pathloss_exp_ia = number(v, path);
    else if (key == "ref_gain_db") geo.ref_gain_db = number(v, path);
    else bad(path, "unknown key");
  }
}

std::vector<std::size_t> default_group_sweep(double t0) {
  std::vector<std::size_t> out;
  for (const std::size_t m : {1, 2, 4, 5, 8, 10, 16, 20, 40})
    if (t0 > static_cast<double>(m + 1)) out.push_back(m);
  return out;
}

}  // namespace

std::string_view to_string(Scheme scheme) {
  for (const auto& s : kSchemeNames)
    if (s.scheme == scheme) return s.name;
  return "unknown";
}

Scheme parse_scheme(std::string_view name) {
  for (const auto& s : kSchemeNames)
    if (s.name == name) return s.scheme;
  throw ConfigError("unknown scheme '" + std::string(name) + "'");
}

std::string_view to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::mse_sweep: return "mse-sweep";
    case ExperimentKind::rate_vs_groups: return "rate-vs-groups";
    case ExperimentKind::rate_vs_elements: return "rate-vs-elements";
  }
  return "unknown";
}

ExperimentKind parse_experiment(std::string_view name) {
  for (const auto k : {ExperimentKind::mse_sweep, ExperimentKind::rate_vs_groups, ExperimentKind::rate_vs_elements})
    if (to_string(k) == name) return k;
  throw ConfigError("unknown experiment '" + std::string(name) + "'");
}

double ExperimentConfig::pt() const { return dbm_to_watts(pt_dbm); }
double ExperimentConfig::sigma2() const { return dbm_to_watts(sigma2_dbm); }

void ExperimentConfig::validate() const {
  geometry.validate();
  if (trials < 1) throw ConfigError("trials must be at least 1");
  if (randomization_samples < 1) throw ConfigError("randomization_samples must be at least 1");
  if (!(sdp_tol >= 1e-10 && sdp_tol <= 1e-4)) throw ConfigError("sdp_tol must lie in [1e-10, 1e-4]");
  if (!(refine_eps > 0.0)) throw ConfigError("refine_eps must be positive");
  if (!(training_noise_scale >= 0.0) || !std::isfinite(training_noise_scale))
    throw ConfigError("training_noise_scale must be a non-negative number");
  for (const double x : {pt_dbm, sigma2_dbm, gap_db, t0})
    if (!std::isfinite(x)) throw ConfigError("power, gap and frame settings must be finite");

  if (bits.empty()) throw ConfigError("bits must not be empty");
  for (const int b : bits)
    if (b < 1 || b > 16) throw ConfigError("bits must lie in [1, 16]");
  if (m_groups.empty()) throw ConfigError("m_groups must not be empty");
  for (const std::size_t m : m_groups)
    if (m < 1) throw ConfigError("m_groups entries must be at least 1");
  const std::size_t max_m = *std::max_element(m_groups.begin(), m_groups.end());
  if (!(t0 > static_cast<double>(max_m + 1)))
    throw ConfigError("t0 must exceed the largest M + 1 (" + std::to_string(max_m + 1) + ")");

  if (schemes.empty()) throw ConfigError("schemes must not be empty");
  for (std::size_t i = 0; i < schemes.size(); ++i)
    for (std::size_t j = i + 1; j < schemes.size(); ++j)
      if (schemes[i] == schemes[j]) throw ConfigError("duplicate scheme '" + std::string(to_string(schemes[i])) + "'");

  if (kind == ExperimentKind::mse_sweep) {
    for (const Scheme s : schemes)
      if (s != Scheme::proposed && s != Scheme::naive && s != Scheme::lower_bound)
        throw ConfigError("scheme '" + std::string(to_string(s)) + "' has no MSE curve");
    return;
  }
  for (const Scheme s : schemes)
    if (s == Scheme::lower_bound) throw ConfigError("scheme 'lower-bound' only applies to mse-sweep");
  if (n_elements.empty()) throw ConfigError("n_elements must not be empty");
  if (kind == ExperimentKind::rate_vs_groups && n_elements.size() != 1)
    throw ConfigError("rate-vs-groups takes a single n_elements");
  if (kind == ExperimentKind::rate_vs_elements && m_groups.size() != 1)
    throw ConfigError("rate-vs-elements takes a single m_groups");
  for (const std::size_t n : n_elements)
    for (const std::size_t m : m_groups)
      if (n == 0 || n % m != 0)
        throw IndivisibleGrouping("M = " + std::to_string(m) + " does not divide N = " + std::to_string(n));
}

ExperimentConfig default_config(ExperimentKind kind) {
  ExperimentConfig c;
  c.kind = kind;
  c.bits = {1, 2};
  switch (kind) {
    case ExperimentKind::mse_sweep:
      // P_t / sigma2 = 30 dB
      c.pt_dbm = 30.0;
      c.sigma2_dbm = 0.0;
      for (std::size_t m = 1; m <= 33; ++m) c.m_groups.push_back(m);
      c.n_elements = {};
      c.schemes = {Scheme::proposed, Scheme::naive, Scheme::lower_bound};
      break;
    case ExperimentKind::rate_vs_groups:
      c.n_elements = {80};
      c.m_groups = default_group_sweep(c.t0);
      c.schemes = {Scheme::proposed, Scheme::naive, Scheme::random_phase};
      break;
    case ExperimentKind::rate_vs_elements:
      for (std::size_t n = 8; n <= 80; n += 8) c.n_elements.push_back(n);
      c.m_groups = {4};
      c.schemes = {Scheme::upper_bound,  Scheme::exhaustive,   Scheme::proposed,
                   Scheme::quantization, Scheme::channel_gain, Scheme::random_phase};
      break;
  }
  return c;
}

ExperimentConfig parse_config(ExperimentKind kind, std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");

  ExperimentConfig c = default_config(kind);
  bool groups_given = false;
  for (const auto& [key, v] : doc.items()) {
    if (key == "experiment") {
      if (!v.is_string() || parse_experiment(v.get<std::string>()) != kind)
        bad(key, "does not match the requested experiment '" + std::string(to_string(kind)) + "'");
    } else if (key == "geometry") {
      parse_geometry(v, c.geometry);
    } else if (key == "n_elements") {
      c.n_elements = count_list<std::size_t>(v, key);
    } else if (key == "m_groups") {
      c.m_groups = count_list<std::size_t>(v, key);
      groups_given = true;
    } else if (key == "bits") {
      c.bits.clear();
      for (const auto b : count_list<std::uint64_t>(v, key)) {
        if (b < 1 || b > 16) bad(key, "must lie in [1, 16]");
        c.bits.push_back(static_cast<int>(b));
      }
    } else if (key == "pt_dbm") {
      c.pt_dbm = number(v, key);
    } else if (key == "sigma2_dbm") {
      c.sigma2_dbm = number(v, key);
    } else if (key == "gap_db") {
      c.gap_db = number(v, key);
    } else if (key == "t0") {
      c.t0 = number(v, key);
    } else if (key == "trials") {
      c.trials = count(v, key);
    } else if (key == "seed") {
      c.seed = count(v, key);
    } else if (key == "schemes") {
      if (!v.is_array()) bad(key, "expected a list of scheme names");
      c.schemes.clear();
      for (const auto& s : v) {
        if (!s.is_string()) bad(key, "expected a list of scheme names");
        c.schemes.push_back(parse_scheme(s.get<std::string>()));
      }
    } else if (key == "randomization_samples") {
      c.randomization_samples = count(v, key);
    } else if (key == "sdp_tol") {
      c.sdp_tol = number(v, key);
    } else if (key == "refine_eps") {
      c.refine_eps = number(v, key);
    } else if (key == "training_noise_scale") {
      c.training_noise_scale = number(v, key);
    } else {
      bad(key, "unknown key");
    }
  }
  if (kind == ExperimentKind::rate_vs_groups && !groups_given) c.m_groups = default_group_sweep(c.t0);
  c.validate();
  return c;
}

ExperimentConfig load_config(ExperimentKind kind, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(kind, text.str());
}

}  // namespace irs
