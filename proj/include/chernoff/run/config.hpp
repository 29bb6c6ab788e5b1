#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "chernoff/circle/drift.hpp"
#include "chernoff/circle/grid.hpp"
#include "chernoff/errors.hpp"
#include "chernoff/matrix/family.hpp"
#include "chernoff/matrix/propagator.hpp"

namespace chernoff::run {

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (trim(v.substr(used)).empty()) return x;
  } catch (...) {
  }
  throw ConfigError("config key " + key + " expects a number, got '" + v + "'");
}

inline long long to_int(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const long long x = std::stoll(v, &used);
    if (trim(v.substr(used)).empty()) return x;
  } catch (...) {
  }
  throw ConfigError("config key " + key + " expects an integer, got '" + v + "'");
}

inline bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("config key " + key + " expects a boolean, got '" + v + "'");
}

// Comma- or whitespace-separated list of numbers.
inline std::vector<double> to_double_list(const std::string& key,
                                          const std::string& v) {
  std::string s = v;
  std::replace(s.begin(), s.end(), ',', ' ');
  std::istringstream in(s);
  std::vector<double> out;
  std::string tok;
  while (in >> tok) out.push_back(to_double(key, tok));
  return out;
}

inline std::vector<int> to_int_list(const std::string& key, const std::string& v) {
  std::vector<int> out;
  for (double x : to_double_list(key, v)) out.push_back(int(x));
  return out;
}

// name(arg1, arg2, ...): returns {name, args}; a bare name has no args.
inline std::pair<std::string, std::vector<double>> parse_call(
    const std::string& spec) {
  const auto open = spec.find('(');
  if (open == std::string::npos) return {trim(spec), {}};
  const auto close = spec.rfind(')');
  if (close == std::string::npos || close < open)
    throw ConfigError("malformed preset '" + spec + "'");
  const std::string name = trim(spec.substr(0, open));
  const std::string args = spec.substr(open + 1, close - open - 1);
  return {name, to_double_list(name, args)};
}

}  // namespace detail

// Flat sectioned key=value configuration, kept in file order so a run can
// echo exactly what it consumed.
class IniConfig {
 public:
  static IniConfig parse_text(const std::string& text) {
    IniConfig cfg;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const std::string t = detail::trim(line);
      if (t.empty() || t[0] == '#' || t[0] == ';') continue;
      if (t.front() == '[') {
        if (t.back() != ']')
          throw ConfigError("line " + std::to_string(lineno) +
                            ": malformed section header '" + t + "'");
        section = detail::trim(t.substr(1, t.size() - 2));
        continue;
      }
      const auto eq = t.find('=');
      if (eq == std::string::npos)
        throw ConfigError("line " + std::to_string(lineno) +
                          ": expected key = value, got '" + t + "'");
      const std::string key = detail::trim(t.substr(0, eq));
      const std::string value = detail::trim(t.substr(eq + 1));
      if (key.empty())
        throw ConfigError("line " + std::to_string(lineno) + ": empty key");
      cfg.set(section.empty() ? key : section + "." + key, value);
    }
    return cfg;
  }

  static IniConfig parse_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_text(buf.str());
  }

  void set(const std::string& dotted_key, const std::string& value) {
    for (auto& kv : entries_)
      if (kv.first == dotted_key) {
        kv.second = value;
        return;
      }
    entries_.emplace_back(dotted_key, value);
  }

  // Applies "--section.key=value" override strings.
  void apply_overrides(const std::vector<std::string>& overrides) {
    for (const auto& o : overrides) {
      std::string s = o;
      if (s.rfind("--", 0) == 0) s = s.substr(2);
      const auto eq = s.find('=');
      if (eq == std::string::npos)
        throw ConfigError("override '" + o + "' must look like --section.key=value");
      set(detail::trim(s.substr(0, eq)), detail::trim(s.substr(eq + 1)));
    }
  }

  bool has(const std::string& key) const {
    for (const auto& kv : entries_)
      if (kv.first == key) return true;
    return false;
  }

  std::string get(const std::string& key, const std::string& fallback) const {
    for (const auto& kv : entries_)
      if (kv.first == key) return kv.second;
    return fallback;
  }

  const std::vector<std::pair<std::string, std::string>>& entries() const {
    return entries_;
  }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

inline const std::vector<std::string>& experiment_kinds() {
  static const std::vector<std::string> kinds = {
      "matrix-convergence", "matrix-commuting", "circle-convergence",
      "asymptotics",        "mc-crossval",      "assumption-probe"};
  return kinds;
}

// Observable on the circle: a named closed form plus its grid sampling.
struct Observable {
  std::string name;
  std::function<double(double)> fn;

  circle::FunctionSamples on(const circle::CircleGrid& grid) const {
    return circle::sample(grid, fn);
  }
};

inline Observable parse_observable(const std::string& spec) {
  const auto [name, args] = detail::parse_call(spec);
  if (name == "one") return {spec, [](double) { return 1.0; }};
  if (name == "cos") return {spec, [](double th) { return std::cos(th); }};
  if (name == "sin") return {spec, [](double th) { return std::sin(th); }};
  if (name == "cos2") return {spec, [](double th) { return std::cos(2.0 * th); }};
  if (name == "mix")
    return {spec, [](double th) { return std::cos(2.0 * th) + 0.3 * std::sin(th); }};
  if (name == "fourier") {
    // fourier(c0, a1, b1, a2, b2, ...)
    if (args.empty()) throw ConfigError("fourier observable needs coefficients");
    const std::vector<double> c = args;
    return {spec, [c](double th) {
              double acc = c[0];
              for (std::size_t i = 1; i + 1 < c.size(); i += 2) {
                const double k = double((i + 1) / 2);
                acc += c[i] * std::cos(k * th) + c[i + 1] * std::sin(k * th);
              }
              return acc;
            }};
  }
  throw ConfigError("unknown observable '" + spec + "'");
}

// Drift preset: constant(psi0) | linear(c) | sine(a,w) | poly(c0,c1,...).
// The domain is widened to cover the configured interval.
inline circle::DriftPath parse_drift(const std::string& spec, double s, double t) {
  const TimeInterval domain{std::min(0.0, s), std::max(1.0, t)};
  const auto [name, args] = detail::parse_call(spec);
  if (name == "constant") {
    if (args.size() != 1) throw ConfigError("constant(psi0) needs one argument");
    return circle::constant_path(args[0], domain);
  }
  if (name == "linear") {
    if (args.size() != 1) throw ConfigError("linear(c) needs one argument");
    return circle::linear_path(args[0], domain);
  }
  if (name == "sine") {
    if (args.size() != 2) throw ConfigError("sine(a,w) needs two arguments");
    return circle::sine_path(args[0], args[1], domain);
  }
  if (name == "poly") {
    if (args.empty()) throw ConfigError("poly(...) needs coefficients");
    return circle::poly_path(args, domain);
  }
  throw ConfigError("unknown drift preset '" + spec + "'");
}

inline std::function<double(double)> parse_profile(const std::string& spec) {
  const auto [name, args] = detail::parse_call(spec);
  if (name == "constant") {
    if (args.size() != 1) throw ConfigError("constant(c) profile needs one argument");
    return matrix::presets::profile_constant(args[0]);
  }
  if (name == "ramp") return matrix::presets::profile_ramp();
  if (name == "one-plus-t-sin-t")
    return matrix::presets::profile_one_plus_t_sin_t();
  throw ConfigError("unknown profile '" + spec + "'");
}

inline matrix::PropagatorVariant parse_variant(const std::string& spec) {
  if (spec == "frozen-exponential")
    return matrix::PropagatorVariant::kFrozenExponential;
  if (spec == "implicit-euler") return matrix::PropagatorVariant::kImplicitEuler;
  if (spec == "explicit-euler") return matrix::PropagatorVariant::kExplicitEuler;
  throw ConfigError("unknown propagator variant '" + spec + "'");
}

// Matrix family: the dissipative3 closed-form tag, or a constant family
// from a coefficient table "r0c0 r0c1 ...; r1c0 ...".
inline matrix::MatrixGeneratorFamily parse_family(const std::string& tag,
                                                  const std::string& table) {
  if (tag == "dissipative3") return matrix::presets::dissipative3();
  if (tag == "constant") {
    if (table.empty())
      throw ConfigError("family = constant requires a matrix table");
    std::vector<std::vector<double>> rows;
    std::istringstream in(table);
    std::string row;
    while (std::getline(in, row, ';'))
      rows.push_back(detail::to_double_list("matrix", row));
    const std::size_t n = rows.size();
    for (const auto& r : rows)
      if (r.size() != n)
        throw ConfigError("matrix table must be square");
    Eigen::MatrixXd m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(Eigen::Index(i), Eigen::Index(j)) = rows[i][j];
    return matrix::MatrixGeneratorFamily{int(n),
                                         [m](double) -> Eigen::MatrixXd { return m; }};
  }
  throw ConfigError("unknown matrix family '" + tag + "'");
}

// Typed view of one experiment configuration.
struct ExperimentConfig {
  std::string kind;
  std::filesystem::path outdir = "out";
  std::uint64_t seed = 1;

  double s = 0.2;
  double t = 1.0;
  std::vector<int> schedule = {4, 8, 16, 32, 64};
  std::string scheme = "uniform";

  int grid_n = 256;
  std::string drift = "constant(0)";
  std::string observable = "cos";
  int reference_steps = 4000;

  std::string family = "dissipative3";
  std::string family_table;
  std::string profile = "one-plus-t-sin-t";
  std::string variant = "frozen-exponential";

  long long mc_paths = 200000;
  int mc_substeps = 200;
  bool mc_antithetic = false;
  std::vector<double> mc_theta0 = {0.0, std::numbers::pi / 3.0};

  std::string probe_target = "circle-kernel";
  double probe_tau = 0.6;
  int probe_y_index = -1;  // -1: grid_n / 8
  std::vector<double> probe_taus;
  std::vector<double> probe_dtaus;
  int probe_trials = 200;
  int probe_max_factors = 6;

  std::vector<std::pair<std::string, std::string>> echo;

  static ExperimentConfig from_ini(const IniConfig& ini) {
    static const std::set<std::string> known = {
        "experiment.kind",   "experiment.outdir",  "experiment.seed",
        "interval.s",        "interval.t",         "partition.schedule",
        "partition.scheme",  "grid.n",             "drift.preset",
        "observable.g",      "reference.steps",    "matrix.family",
        "matrix.table",      "matrix.profile",     "matrix.variant",
        "mc.paths",          "mc.substeps",        "mc.antithetic",
        "mc.theta0",         "probe.target",       "probe.tau",
        "probe.y_index",     "probe.taus",         "probe.dtaus",
        "probe.trials",      "probe.max_factors"};
    for (const auto& kv : ini.entries())
      if (!known.count(kv.first))
        throw ConfigError("unknown config key '" + kv.first + "'");

    ExperimentConfig c;
    c.kind = ini.get("experiment.kind", "");
    if (c.kind.empty()) throw ConfigError("experiment.kind is required");
    if (std::find(experiment_kinds().begin(), experiment_kinds().end(), c.kind) ==
        experiment_kinds().end())
      throw ConfigError("unknown experiment kind '" + c.kind + "'");
    c.outdir = ini.get("experiment.outdir", "out/" + c.kind);
    c.seed = std::uint64_t(
        detail::to_int("experiment.seed", ini.get("experiment.seed", "1")));

    c.s = detail::to_double("interval.s", ini.get("interval.s", "0.2"));
    c.t = detail::to_double("interval.t", ini.get("interval.t", "1.0"));
    if (!(c.s < c.t)) throw ConfigError("interval requires s < t");

    if (ini.has("partition.schedule"))
      c.schedule = detail::to_int_list("partition.schedule",
                                       ini.get("partition.schedule", ""));
    c.scheme = ini.get("partition.scheme", "uniform");
    if (c.scheme != "uniform" && c.scheme != "random-refinement")
      throw ConfigError("unknown partition scheme '" + c.scheme + "'");

    c.grid_n = int(detail::to_int("grid.n", ini.get("grid.n", "256")));
    c.drift = ini.get("drift.preset", "constant(0)");
    c.observable = ini.get("observable.g", "cos");
    c.reference_steps =
        int(detail::to_int("reference.steps", ini.get("reference.steps", "4000")));

    c.family = ini.get("matrix.family", "dissipative3");
    c.family_table = ini.get("matrix.table", "");
    c.profile = ini.get("matrix.profile", "one-plus-t-sin-t");
    c.variant = ini.get("matrix.variant", "frozen-exponential");

    c.mc_paths = detail::to_int("mc.paths", ini.get("mc.paths", "200000"));
    c.mc_substeps = int(detail::to_int("mc.substeps", ini.get("mc.substeps", "200")));
    c.mc_antithetic =
        detail::to_bool("mc.antithetic", ini.get("mc.antithetic", "false"));
    if (ini.has("mc.theta0"))
      c.mc_theta0 = detail::to_double_list("mc.theta0", ini.get("mc.theta0", ""));

    c.probe_target = ini.get("probe.target", "circle-kernel");
    c.probe_tau = detail::to_double("probe.tau", ini.get("probe.tau", "0.6"));
    c.probe_y_index =
        int(detail::to_int("probe.y_index", ini.get("probe.y_index", "-1")));
    if (ini.has("probe.taus"))
      c.probe_taus = detail::to_double_list("probe.taus", ini.get("probe.taus", ""));
    if (ini.has("probe.dtaus"))
      c.probe_dtaus =
          detail::to_double_list("probe.dtaus", ini.get("probe.dtaus", ""));
    c.probe_trials =
        int(detail::to_int("probe.trials", ini.get("probe.trials", "200")));
    c.probe_max_factors = int(
        detail::to_int("probe.max_factors", ini.get("probe.max_factors", "6")));

    c.echo = ini.entries();
    return c;
  }

  static ExperimentConfig load(const std::filesystem::path& path,
                               const std::vector<std::string>& overrides = {}) {
    IniConfig ini = IniConfig::parse_file(path);
    ini.apply_overrides(overrides);
    return from_ini(ini);
  }

  PartitionScheme partition_scheme() const {
    return scheme == "uniform" ? PartitionScheme::kUniform
                               : PartitionScheme::kRandomRefinement;
  }
};

}  // namespace chernoff::run
