#include "vasclab/cli/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "vasclab/errors.hpp"

namespace vasclab::cli {
namespace {

using Setter = std::function<std::optional<std::string>(const std::string&)>;
using Getter = std::function<std::string()>;

struct Entry {
  std::string section;  // "" for top-level keys
  std::string key;
  Setter set;
  Getter get;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string format_double(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::optional<double> to_double(const std::string& s) {
  if (s == "inf") return INFINITY;
  double v = 0.0;
  const char* end = s.data() + s.size();
  auto res = std::from_chars(s.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end) return std::nullopt;
  return v;
}

template <class Int>
std::optional<Int> to_int(const std::string& s) {
  Int v = 0;
  const char* end = s.data() + s.size();
  auto res = std::from_chars(s.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end) return std::nullopt;
  return v;
}

Entry real(std::string section, std::string key, double& ref) {
  return Entry{section, key,
               [&ref](const std::string& v) -> std::optional<std::string> {
                 auto d = to_double(v);
                 if (!d) return "expected a number, got '" + v + "'";
                 ref = *d;
                 return std::nullopt;
               },
               [&ref] { return format_double(ref); }};
}

Entry integer(std::string section, std::string key, int& ref) {
  return Entry{section, key,
               [&ref](const std::string& v) -> std::optional<std::string> {
                 auto d = to_int<int>(v);
                 if (!d) return "expected an integer, got '" + v + "'";
                 ref = *d;
                 return std::nullopt;
               },
               [&ref] { return std::to_string(ref); }};
}

Entry boolean(std::string section, std::string key, bool& ref) {
  return Entry{section, key,
               [&ref](const std::string& v) -> std::optional<std::string> {
                 if (v == "true") ref = true;
                 else if (v == "false") ref = false;
                 else return "expected true or false, got '" + v + "'";
                 return std::nullopt;
               },
               [&ref] { return std::string(ref ? "true" : "false"); }};
}

Entry int_list(std::string section, std::string key, std::vector<int>& ref) {
  return Entry{section, key,
               [&ref](const std::string& v) -> std::optional<std::string> {
                 std::vector<int> out;
                 std::stringstream ss(v);
                 std::string item;
                 while (std::getline(ss, item, ',')) {
                   auto d = to_int<int>(trim(item));
                   if (!d) return "expected a comma-separated integer list, got '" + v + "'";
                   out.push_back(*d);
                 }
                 if (out.empty()) return "empty list";
                 ref = out;
                 return std::nullopt;
               },
               [&ref] {
                 std::string s;
                 for (std::size_t i = 0; i < ref.size(); ++i) s += (i ? "," : "") + std::to_string(ref[i]);
                 return s;
               }};
}

template <class E>
Entry choice(std::string section, std::string key, E& ref, std::vector<std::pair<std::string, E>> options) {
  return Entry{section, key,
               [&ref, options](const std::string& v) -> std::optional<std::string> {
                 std::string names;
                 for (const auto& [name, val] : options) {
                   if (name == v) {
                     ref = val;
                     return std::nullopt;
                   }
                   names += (names.empty() ? "" : ", ") + name;
                 }
                 return "expected one of {" + names + "}, got '" + v + "'";
               },
               [&ref, options] {
                 for (const auto& [name, val] : options)
                   if (val == ref) return name;
                 return std::string("?");
               }};
}

std::vector<Entry> registry(ExperimentConfig& c) {
  std::vector<Entry> e;
  e.push_back(choice<Experiment>("", "experiment", c.experiment,
                                 {{"sk_check", Experiment::sk_check},
                                  {"compensator", Experiment::compensator},
                                  {"linear_decay", Experiment::linear_decay},
                                  {"parabolic_verify", Experiment::parabolic_verify},
                                  {"nonlinear_decay", Experiment::nonlinear_decay}}));
  e.push_back(Entry{"", "seed",
                    [&c](const std::string& v) -> std::optional<std::string> {
                      auto d = to_int<std::uint64_t>(v);
                      if (!d) return "expected a non-negative integer, got '" + v + "'";
                      c.seed = *d;
                      return std::nullopt;
                    },
                    [&c] { return std::to_string(c.seed); }});
  e.push_back(Entry{"", "output_dir",
                    [&c](const std::string& v) -> std::optional<std::string> {
                      if (v.empty()) return "must not be empty";
                      c.output_dir = v;
                      return std::nullopt;
                    },
                    [&c] { return c.output_dir; }});

  auto& p = c.params;
  e.push_back(real("model", "alpha", p.alpha));
  e.push_back(real("model", "mu", p.mu));
  e.push_back(real("model", "D", p.D));
  e.push_back(real("model", "a", p.a));
  e.push_back(real("model", "b", p.b));
  e.push_back(real("model", "rho_bar", p.rho_bar));
  e.push_back(real("model", "kappa", p.pressure.kappa));
  e.push_back(real("model", "gamma", p.pressure.gamma_exp));
  e.push_back(real("model", "rho_floor", p.pressure.rho_floor));

  auto& g = c.grid;
  e.push_back(integer("grid", "dim", g.dim));
  e.push_back(integer("grid", "nx", g.cells[0]));
  e.push_back(integer("grid", "ny", g.cells[1]));
  e.push_back(real("grid", "lx", g.lengths[0]));
  e.push_back(real("grid", "ly", g.lengths[1]));

  auto& s = c.solver;
  e.push_back(real("solver", "cfl", s.cfl));
  e.push_back(real("solver", "t_final", s.t_final));
  e.push_back(choice<solver::Splitting>("solver", "splitting", s.splitting,
                                        {{"lie", solver::Splitting::lie}, {"strang", solver::Splitting::strang}}));
  e.push_back(integer("solver", "output_stride", s.output_stride));
  e.push_back(real("solver", "positivity_floor", s.positivity_floor));
  e.push_back(real("solver", "fixed_dt", s.fixed_dt));
  e.push_back(integer("solver", "sobolev_order", s.sobolev_order));
  e.push_back(real("solver", "smallness", s.smallness));
  e.push_back(boolean("solver", "keep_snapshots", s.keep_snapshots));
  e.push_back(boolean("solver", "track_step_entropy", s.track_step_entropy));

  auto& in = c.initial;
  e.push_back(choice<std::string>("initial", "preset", in.preset,
                                  {{"gaussian", "gaussian"}, {"band_limited", "band_limited"}, {"zero", "zero"}}));
  e.push_back(real("initial", "hs_norm", in.hs_norm));
  e.push_back(real("initial", "amplitude", in.amplitude));
  e.push_back(real("initial", "width", in.width));
  e.push_back(real("initial", "kmax_fraction", in.kmax_fraction));
  e.push_back(real("initial", "phi_scale", in.phi_scale));

  e.push_back(integer("sk", "directions", c.sk.directions));
  e.push_back(int_list("sk", "dims", c.sk.dims));
  e.push_back(real("sk", "min_margin", c.sk.min_margin));

  e.push_back(integer("compensator", "directions", c.compensator.directions));
  e.push_back(integer("compensator", "verify_directions", c.compensator.verify_directions));
  e.push_back(integer("compensator", "eta_count", c.compensator.eta_count));
  e.push_back(int_list("compensator", "dims", c.compensator.dims));

  auto& b = c.blocks;
  e.push_back(int_list("blocks", "dims", b.dims));
  e.push_back(real("blocks", "p", b.p));
  e.push_back(integer("blocks", "beta_x", b.beta_x));
  e.push_back(integer("blocks", "radial", b.radial));
  e.push_back(integer("blocks", "angular", b.angular));
  e.push_back(real("blocks", "domain_length", b.domain_length));
  e.push_back(real("blocks", "t_min", b.t_min));
  e.push_back(real("blocks", "t_max", b.t_max));
  e.push_back(integer("blocks", "samples", b.samples));
  e.push_back(real("blocks", "xi_cutoff", b.xi_cutoff));
  e.push_back(real("blocks", "gaussian_width", b.gaussian_width));
  e.push_back(real("blocks", "tolerance", b.tolerance));
  e.push_back(real("blocks", "min_r2", b.min_r2));

  e.push_back(boolean("linear", "enabled", c.linear.enabled));
  e.push_back(real("linear", "t_final", c.linear.t_final));
  e.push_back(integer("linear", "samples", c.linear.samples));

  e.push_back(real("parabolic", "t_final", c.parabolic.t_final));
  e.push_back(integer("parabolic", "steps", c.parabolic.steps));
  e.push_back(real("parabolic", "omega", c.parabolic.omega));
  e.push_back(real("parabolic", "tolerance", c.parabolic.tolerance));

  e.push_back(real("fit", "tolerance", c.fit.tolerance));
  e.push_back(real("fit", "min_r2", c.fit.min_r2));
  e.push_back(real("fit", "window_lo", c.fit.window_lo));
  e.push_back(real("fit", "window_hi", c.fit.window_hi));
  return e;
}

std::vector<std::string> required_sections(Experiment e) {
  switch (e) {
    case Experiment::sk_check:
    case Experiment::compensator: return {};
    case Experiment::linear_decay:
    case Experiment::parabolic_verify: return {"grid"};
    case Experiment::nonlinear_decay: return {"grid", "solver"};
  }
  return {};
}

void check_dims(const std::vector<int>& dims, const std::string& where, std::vector<std::string>& out) {
  for (int d : dims)
    if (d != 1 && d != 2) out.push_back(where + ".dims entries must be 1 or 2");
}

std::vector<std::string> settings_violations(const ExperimentConfig& c) {
  std::vector<std::string> out;
  if (c.sk.directions < 100) out.emplace_back("sk.directions must be >= 100");
  check_dims(c.sk.dims, "sk", out);
  if (c.compensator.directions < 500) out.emplace_back("compensator.directions must be >= 500");
  if (c.compensator.verify_directions < 1) out.emplace_back("compensator.verify_directions must be >= 1");
  if (c.compensator.eta_count < 1) out.emplace_back("compensator.eta_count must be >= 1");
  check_dims(c.compensator.dims, "compensator", out);
  const auto& b = c.blocks;
  check_dims(b.dims, "blocks", out);
  if (b.p != 2.0 && !std::isinf(b.p)) out.emplace_back("blocks.p must be 2 or inf");
  if (b.beta_x < 0) out.emplace_back("blocks.beta_x must be >= 0");
  if (b.radial < 2) out.emplace_back("blocks.radial must be >= 2");
  if (b.angular < 4 || b.angular % 2) out.emplace_back("blocks.angular must be even and >= 4");
  if (!(b.t_min > 0.0) || !(b.t_max >= b.t_min * std::pow(10.0, 1.5)))
    out.emplace_back("blocks times must satisfy t_min > 0 and t_max >= 10^1.5 t_min");
  if (b.samples < 12) out.emplace_back("blocks.samples must be >= 12");
  if (!(b.xi_cutoff >= 0.0)) out.emplace_back("blocks.xi_cutoff must be >= 0");
  if (!(b.gaussian_width > 0.0)) out.emplace_back("blocks.gaussian_width must be > 0");
  if (!(b.domain_length > 0.0)) out.emplace_back("blocks.domain_length must be > 0");
  if (!(c.linear.t_final > 0.0)) out.emplace_back("linear.t_final must be > 0");
  if (c.linear.samples < 12) out.emplace_back("linear.samples must be >= 12");
  if (!(c.parabolic.t_final > 0.0)) out.emplace_back("parabolic.t_final must be > 0");
  if (c.parabolic.steps < 2) out.emplace_back("parabolic.steps must be >= 2");
  if (!(c.parabolic.tolerance > 0.0)) out.emplace_back("parabolic.tolerance must be > 0");
  if (!(c.fit.tolerance > 0.0)) out.emplace_back("fit.tolerance must be > 0");
  if (!(c.fit.min_r2 >= 0.0 && c.fit.min_r2 <= 1.0)) out.emplace_back("fit.min_r2 must be in [0, 1]");
  if (!(c.fit.window_lo >= 0.0 && c.fit.window_lo < c.fit.window_hi && c.fit.window_hi <= 1.0))
    out.emplace_back("fit window must satisfy 0 <= window_lo < window_hi <= 1");
  const auto& in = c.initial;
  if (!(in.hs_norm >= 0.0)) out.emplace_back("initial.hs_norm must be >= 0");
  if (!(in.width > 0.0)) out.emplace_back("initial.width must be > 0");
  if (!(in.kmax_fraction > 0.0 && in.kmax_fraction <= 1.0)) out.emplace_back("initial.kmax_fraction must be in (0, 1]");
  return out;
}

}  // namespace

std::string experiment_name(Experiment e) {
  switch (e) {
    case Experiment::sk_check: return "sk_check";
    case Experiment::compensator: return "compensator";
    case Experiment::linear_decay: return "linear_decay";
    case Experiment::parabolic_verify: return "parabolic_verify";
    case Experiment::nonlinear_decay: return "nonlinear_decay";
  }
  return "unknown";
}

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;
  auto entries = registry(cfg);
  std::map<std::pair<std::string, std::string>, Entry*> index;
  std::set<std::string> sections{""};
  for (auto& en : entries) {
    index[{en.section, en.key}] = &en;
    sections.insert(en.section);
  }

  std::vector<std::string> errors;
  std::map<std::pair<std::string, std::string>, int> seen;
  std::set<std::string> present;
  std::string section;
  bool have_experiment = false;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto hash = raw.find_first_of("#;");
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const std::string at = " (line " + std::to_string(lineno) + ")";
    if (line.front() == '[') {
      if (line.back() != ']') {
        errors.push_back("malformed section header '" + line + "'" + at);
        continue;
      }
      section = trim(line.substr(1, line.size() - 2));
      if (!sections.count(section) || section.empty()) errors.push_back("unknown section [" + section + "]" + at);
      present.insert(section);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      errors.push_back("expected key = value, got '" + line + "'" + at);
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const std::string qualified = section.empty() ? key : section + "." + key;
    if (!sections.count(section)) continue;  // already reported
    auto it = index.find({section, key});
    if (it == index.end()) {
      errors.push_back("unknown key '" + qualified + "'" + at);
      continue;
    }
    auto [pos, inserted] = seen.emplace(std::make_pair(section, key), lineno);
    if (!inserted) {
      errors.push_back("duplicate key '" + qualified + "'" + at + ", first set on line " + std::to_string(pos->second));
      continue;
    }
    if (auto err = it->second->set(value)) errors.push_back("invalid value for '" + qualified + "': " + *err + at);
    if (section.empty() && key == "experiment") have_experiment = true;
  }

  if (!have_experiment) errors.emplace_back("missing required key 'experiment'");
  else
    for (const auto& req : required_sections(cfg.experiment))
      if (!present.count(req))
        errors.push_back("missing required block [" + req + "] for experiment " + experiment_name(cfg.experiment));

  auto add = [&errors](const std::vector<std::string>& v, const std::string& prefix) {
    for (const auto& s : v) errors.push_back(prefix + s);
  };
  add(cfg.params.violations(), "model: ");
  add(cfg.grid.violations(), "grid: ");
  add(cfg.solver.violations(), "solver: ");
  add(settings_violations(cfg), "");
  if (!errors.empty()) throw ValidationError(std::move(errors));
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ValidationError({"cannot read config file '" + path + "'"});
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

std::string ExperimentConfig::to_text() const {
  ExperimentConfig copy = *this;
  auto entries = registry(copy);
  std::ostringstream out;
  std::string section = "<none>";
  for (const auto& e : entries) {
    if (e.section != section) {
      section = e.section;
      if (!section.empty()) out << "\n[" << section << "]\n";
    }
    out << e.key << " = " << e.get() << '\n';
  }
  return out.str();
}

}  // namespace vasclab::cli
